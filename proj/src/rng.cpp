#include "chirpim/rng.hpp"

#include <cmath>
#include <numbers>

namespace chirpim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint32_t trial,
                     std::uint32_t purpose, std::uint32_t point) {
    key_ = {static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32)};
    // counter word 0 is the running block index within the stream
    counter_ = {0u, trial, purpose, point};
}

void RngStream::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    block_ = ctr;
    ++counter_[0];
    pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (pos_ >= 4) refill();
    return block_[static_cast<std::size_t>(pos_++)];
}

double RngStream::uniform() {
    const std::uint64_t a = next_u32();
    const std::uint64_t b = next_u32();
    const std::uint64_t v = ((a << 32) | b) >> 11;
    return static_cast<double>(v) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_gauss_) {
        has_cached_gauss_ = false;
        return cached_gauss_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    cached_gauss_ = r * std::sin(th);
    has_cached_gauss_ = true;
    return r * std::cos(th);
}

std::complex<double> RngStream::cgaussian(double variance) {
    const double s = std::sqrt(0.5 * variance);
    return {s * gaussian(), s * gaussian()};
}

} // namespace chirpim
