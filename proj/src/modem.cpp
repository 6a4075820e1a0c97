#include "chirpim/modem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirpim {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2_int(int v) { return v >= 1 && (v & (v - 1)) == 0; }

} // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ChirpSinusoidal: return "chirp-sinusoidal";
        case Scheme::ChirpLinear: return "chirp-linear";
        case Scheme::DftsOfdmIm: return "dfts-ofdm-im";
        case Scheme::OfdmIm: return "ofdm-im";
    }
    return "unknown";
}

double TxFrame::mean_body_power() const {
    double p = 0.0;
    for (const auto& x : body()) p += std::norm(x);
    return p / static_cast<double>(n);
}

Modem::Modem(Scheme scheme, int m, int n, int n_cp, double deviation, double ts_seconds,
             int h, int l)
    : scheme_(scheme), m_(m), n_(n), n_cp_(n_cp), h_(h), l_(l), ts_(ts_seconds) {
    if (m < 2) throw std::domain_error("Modem: need M >= 2");
    if (n < m) throw std::domain_error("Modem: need N >= M");
    if (n_cp < 0 || n_cp > n) throw std::domain_error("Modem: bad CP length");
    if (!is_pow2_int(h)) throw std::domain_error("Modem: H must be a power of two");
    if (l < 1 || l >= m) throw std::domain_error("Modem: need 1 <= l < M");

    const int l_up = m / 2;
    const int l_down = l_up - m + 1;
    if (scheme == Scheme::ChirpSinusoidal || scheme == Scheme::ChirpLinear) {
        const ChirpKind kind =
            scheme == Scheme::ChirpLinear ? ChirpKind::Linear : ChirpKind::Sinusoidal;
        fdss_ = make_fdss(ChirpSpec{kind, deviation, ts_seconds}, l_down, l_up);
    } else {
        // flat unit-power shaping; OFDM-IM ignores it on the tx path
        fdss_.l_down = l_down;
        fdss_.l_up = l_up;
        fdss_.coeffs.assign(static_cast<std::size_t>(m),
                            cplx{1.0 / std::sqrt(static_cast<double>(m)), 0.0});
    }
    fdss_power_ = fdss_.total_power();
    amplitude_ = static_cast<double>(n) / std::sqrt(l * fdss_power_);
    fft_m_ = &Fft::plan(static_cast<std::size_t>(m_));
    fft_n_ = &Fft::plan(static_cast<std::size_t>(n_));
}

std::vector<cplx> Modem::spread_and_shape(const ImFrame& frame) const {
    std::vector<cplx> dense(static_cast<std::size_t>(m_), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < frame.indices.size(); ++i)
        dense[static_cast<std::size_t>(frame.indices[i])] = frame.symbols[i];
    fft_m_->forward(dense);
    std::vector<cplx> shaped(static_cast<std::size_t>(m_));
    for (int k = fdss_.l_down; k <= fdss_.l_up; ++k) {
        const int q = ((k % m_) + m_) % m_;
        shaped[static_cast<std::size_t>(k - fdss_.l_down)] =
            fdss_.at_k(k) * dense[static_cast<std::size_t>(q)];
    }
    return shaped;
}

ComplexSequence Modem::shaped_sequence(const ImFrame& frame) const {
    frame.validate();
    if (frame.m != m_) throw std::domain_error("Modem: frame size mismatch");
    if (scheme_ == Scheme::OfdmIm) {
        ComplexSequence seq(static_cast<std::size_t>(m_), cplx{0.0, 0.0});
        for (std::size_t i = 0; i < frame.indices.size(); ++i)
            seq[static_cast<std::size_t>(frame.indices[i])] = frame.symbols[i];
        return seq;
    }
    return spread_and_shape(frame);
}

double Modem::reference_power(int l) const {
    if (l < 1) throw std::domain_error("Modem: reference_power needs l >= 1");
    if (scheme_ == Scheme::OfdmIm) return static_cast<double>(l);
    return l * fdss_power_;
}

TxFrame Modem::tx(const ImFrame& frame) const {
    frame.validate();
    if (frame.m != m_) throw std::domain_error("Modem: frame size mismatch");
    if (static_cast<int>(frame.indices.size()) != l_)
        throw std::domain_error("Modem: frame active count differs from configured l");

    std::vector<cplx> grid(static_cast<std::size_t>(n_), cplx{0.0, 0.0});
    if (scheme_ == Scheme::OfdmIm) {
        for (std::size_t i = 0; i < frame.indices.size(); ++i) {
            const int k = fdss_.l_down + frame.indices[i];
            grid[static_cast<std::size_t>(bin_of(k))] = frame.symbols[i];
        }
    } else {
        const auto shaped = spread_and_shape(frame);
        for (int k = fdss_.l_down; k <= fdss_.l_up; ++k)
            grid[static_cast<std::size_t>(bin_of(k))] =
                shaped[static_cast<std::size_t>(k - fdss_.l_down)];
    }
    fft_n_->inverse(grid);

    // The flat FDSS has unit power, so amplitude_ = N/sqrt(l) covers the
    // baselines too.
    const double amp = amplitude_;
    TxFrame out;
    out.n = n_;
    out.n_cp = n_cp_;
    out.samples.resize(static_cast<std::size_t>(n_ + n_cp_));
    for (int i = 0; i < n_; ++i)
        out.samples[static_cast<std::size_t>(n_cp_ + i)] = amp * grid[static_cast<std::size_t>(i)];
    for (int i = 0; i < n_cp_; ++i)
        out.samples[static_cast<std::size_t>(i)] =
            out.samples[static_cast<std::size_t>(n_ + i)];
    return out;
}

SoftSymbols Modem::rx(const TxFrame& received, std::span<const cplx> chan_freq,
                      double noise_var) const {
    if (noise_var < 0.0) throw std::domain_error("Modem: negative noise variance");
    if (received.n != n_ || static_cast<int>(chan_freq.size()) != n_)
        throw std::domain_error("Modem: rx dimension mismatch");

    std::vector<cplx> spectrum(received.body().begin(), received.body().end());
    fft_n_->forward(spectrum);

    // Per-bin MMSE on the combined response E_k = amp * G_k * H_k. With the
    // unnormalized N-point FFT the per-bin noise variance is N * noise_var
    // and the per-bin signal prior is E|D_k|^2 = l.
    const double noise_bin = static_cast<double>(n_) * noise_var;
    const double prior = static_cast<double>(l_);
    std::vector<cplx> despread(static_cast<std::size_t>(m_), cplx{0.0, 0.0});
    double weight_power = 0.0;
    for (int k = fdss_.l_down; k <= fdss_.l_up; ++k) {
        const cplx e = amplitude_ * fdss_.at_k(k) *
                       chan_freq[static_cast<std::size_t>(bin_of(k))];
        const double denom = std::norm(e) + noise_bin / prior;
        const cplx w = denom > 0.0 ? std::conj(e) / denom : cplx{0.0, 0.0};
        weight_power += std::norm(w);
        const int q = ((k % m_) + m_) % m_;
        despread[static_cast<std::size_t>(q)] =
            w * spectrum[static_cast<std::size_t>(bin_of(k))];
    }
    fft_m_->inverse(despread);

    SoftSymbols out;
    out.y = std::move(despread);
    out.noise_var_est = weight_power * noise_bin / (static_cast<double>(m_) * m_);
    return out;
}

std::vector<cplx> Modem::extract_bins(const TxFrame& received) const {
    if (received.n != n_) throw std::domain_error("Modem: rx dimension mismatch");
    std::vector<cplx> spectrum(received.body().begin(), received.body().end());
    fft_n_->forward(spectrum);
    std::vector<cplx> bins(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i)
        bins[static_cast<std::size_t>(i)] =
            spectrum[static_cast<std::size_t>(bin_of(fdss_.l_down + i))];
    return bins;
}

std::vector<cplx> Modem::channel_at_bins(std::span<const cplx> chan_freq) const {
    if (static_cast<int>(chan_freq.size()) != n_)
        throw std::domain_error("Modem: channel length mismatch");
    std::vector<cplx> bins(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i)
        bins[static_cast<std::size_t>(i)] =
            chan_freq[static_cast<std::size_t>(bin_of(fdss_.l_down + i))];
    return bins;
}

namespace {

ImFrame select_top(const std::vector<double>& score, const std::vector<int>& best_phase,
                   int m, int h, int l) {
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[static_cast<std::size_t>(a)] != score[static_cast<std::size_t>(b)])
            return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
        return a < b; // tie: smaller index wins
    });
    std::vector<int> chosen(order.begin(), order.begin() + l);
    std::sort(chosen.begin(), chosen.end());
    ImFrame out;
    out.m = m;
    out.indices = std::move(chosen);
    out.symbols.reserve(static_cast<std::size_t>(l));
    for (const int i : out.indices) {
        const double ang =
            2.0 * kPi * best_phase[static_cast<std::size_t>(i)] / static_cast<double>(h);
        out.symbols.push_back({std::cos(ang), std::sin(ang)});
    }
    return out;
}

} // namespace

ImFrame ml_detect(std::span<const cplx> y, int h, int l) {
    const int m = static_cast<int>(y.size());
    if (l < 1 || l >= m) throw std::domain_error("ml_detect: need 1 <= l < M");
    if (h < 1) throw std::domain_error("ml_detect: need H >= 1");
    std::vector<double> score(static_cast<std::size_t>(m));
    std::vector<int> best_phase(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        double best = -1e300;
        int arg = 0;
        for (int k = 0; k < h; ++k) {
            const double ang = -2.0 * kPi * k / static_cast<double>(h);
            const double t = (y[static_cast<std::size_t>(i)] *
                              cplx(std::cos(ang), std::sin(ang)))
                                 .real();
            if (t > best) { // strict: ties keep the smaller phase index
                best = t;
                arg = k;
            }
        }
        score[static_cast<std::size_t>(i)] = best;
        best_phase[static_cast<std::size_t>(i)] = arg;
    }
    return select_top(score, best_phase, m, h, l);
}

ImFrame ofdm_im_detect(std::span<const cplx> bins, std::span<const cplx> chan_bins,
                       double amp, int h, int l) {
    const int m = static_cast<int>(bins.size());
    if (chan_bins.size() != bins.size())
        throw std::domain_error("ofdm_im_detect: channel length mismatch");
    if (l < 1 || l >= m) throw std::domain_error("ofdm_im_detect: need 1 <= l < M");
    std::vector<double> score(static_cast<std::size_t>(m));
    std::vector<int> best_phase(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        const cplx c = amp * chan_bins[static_cast<std::size_t>(i)];
        const cplx yc = bins[static_cast<std::size_t>(i)] * std::conj(c);
        const double bias = std::norm(c);
        double best = -1e300;
        int arg = 0;
        for (int k = 0; k < h; ++k) {
            const double ang = -2.0 * kPi * k / static_cast<double>(h);
            const double t =
                2.0 * (yc * cplx(std::cos(ang), std::sin(ang))).real() - bias;
            if (t > best) {
                best = t;
                arg = k;
            }
        }
        score[static_cast<std::size_t>(i)] = best;
        best_phase[static_cast<std::size_t>(i)] = arg;
    }
    return select_top(score, best_phase, m, h, l);
}

} // namespace chirpim
