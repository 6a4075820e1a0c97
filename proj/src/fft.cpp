#include "chirpim/fft.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace chirpim {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// e^{-j pi k^2 / n} with the square reduced mod 2n so the angle stays small
// even for large k (k^2 would otherwise lose precision as a double).
cplx unit_chirp(std::size_t k, std::size_t n) {
    const std::uint64_t r = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(k) * k) % (2 * n));
    const double ang = -std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Fft: length must be positive");
    pow2_ = is_pow2(n);
    work_n_ = pow2_ ? n : next_pow2(2 * n - 1);

    bitrev_.resize(work_n_);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < work_n_) ++log2n;
    for (std::size_t i = 0; i < work_n_; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
        bitrev_[i] = r;
    }
    twiddle_.resize(work_n_ / 2);
    for (std::size_t i = 0; i < work_n_ / 2; ++i) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(work_n_);
        twiddle_[i] = {std::cos(ang), std::sin(ang)};
    }

    if (!pow2_) {
        bchirp_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) bchirp_[k] = unit_chirp(k, n_);
        // Padded kernel b[k] = conj(chirp[k]) for k in (-n, n), wrapped.
        std::vector<cplx> b(work_n_, cplx{0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) {
            b[k] = std::conj(bchirp_[k]);
            if (k != 0) b[work_n_ - k] = std::conj(bchirp_[k]);
        }
        radix2(b, false);
        bchirp_fft_ = std::move(b);
    }
}

void Fft::radix2(std::vector<cplx>& data, bool inv) const {
    const std::size_t n = data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = bitrev_[i];
        if (j > i) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t i = 0; i < half; ++i) {
                cplx w = twiddle_[i * stride];
                if (inv) w = std::conj(w);
                const cplx u = data[start + i];
                const cplx v = data[start + i + half] * w;
                data[start + i] = u + v;
                data[start + i + half] = u - v;
            }
        }
    }
}

void Fft::bluestein(std::vector<cplx>& data, bool inv) const {
    // Forward DFT of length n via chirp multiplication and circular
    // convolution at the padded power-of-two length. The inverse transform
    // conjugates in and out and divides by n.
    std::vector<cplx> a(work_n_, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx x = inv ? std::conj(data[k]) : data[k];
        a[k] = x * bchirp_[k];
    }
    radix2(a, false);
    for (std::size_t i = 0; i < work_n_; ++i) a[i] *= bchirp_fft_[i];
    radix2(a, true);
    const double scale = 1.0 / static_cast<double>(work_n_);
    for (std::size_t k = 0; k < n_; ++k) {
        cplx y = a[k] * scale * bchirp_[k];
        data[k] = inv ? std::conj(y) : y;
    }
}

void Fft::transform(std::vector<cplx>& data, bool inv) const {
    if (data.size() != n_)
        throw std::invalid_argument("Fft: data length does not match plan length");
    if (pow2_) {
        radix2(data, inv);
    } else {
        bluestein(data, inv);
    }
    if (inv) {
        const double s = 1.0 / static_cast<double>(n_);
        for (auto& v : data) v *= s;
    }
}

const Fft& Fft::plan(std::size_t n) {
    static std::mutex mtx;
    static std::unordered_map<std::size_t, std::unique_ptr<Fft>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(n)).first;
    return *it->second;
}

void fft_forward(std::vector<cplx>& data) { Fft::plan(data.size()).forward(data); }
void fft_inverse(std::vector<cplx>& data) { Fft::plan(data.size()).inverse(data); }

} // namespace chirpim
