#include "chirpim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace chirpim {

void TdlProfile::validate() const {
    if (delays_s.empty() || delays_s.size() != powers_db.size())
        throw std::domain_error("TdlProfile: delay/power arrays must be equal and non-empty");
    double prev = -1.0;
    for (const double d : delays_s) {
        if (d < 0.0 || d < prev)
            throw std::domain_error("TdlProfile: delays must be non-negative and ascending");
        prev = d;
    }
}

std::vector<double> TdlProfile::normalized_linear_powers() const {
    validate();
    std::vector<double> p(powers_db.size());
    double total = 0.0;
    for (std::size_t i = 0; i < powers_db.size(); ++i) {
        p[i] = std::pow(10.0, powers_db[i] / 10.0);
        total += p[i];
    }
    for (auto& v : p) v /= total;
    return p;
}

double TdlProfile::rms_delay_spread() const {
    const auto p = normalized_linear_powers();
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mean += p[i] * delays_s[i];
        second += p[i] * delays_s[i] * delays_s[i];
    }
    return std::sqrt(second - mean * mean);
}

double TdlProfile::max_delay() const {
    validate();
    return delays_s.back();
}

TdlProfile TdlProfile::truncated(double max_delay_s) const {
    validate();
    TdlProfile out;
    out.name = name + "-truncated";
    for (std::size_t i = 0; i < delays_s.size(); ++i) {
        if (i > 0 && delays_s[i] > max_delay_s) break;
        out.delays_s.push_back(delays_s[i]);
        out.powers_db.push_back(powers_db[i]);
    }
    return out;
}

TdlProfile eva_profile() {
    return TdlProfile{
        "eva",
        {0e-9, 30e-9, 150e-9, 310e-9, 370e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9},
        {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9}};
}

ChannelRealization identity_channel(int n) {
    ChannelRealization out;
    out.fir = {cplx{1.0, 0.0}};
    out.freq_response.assign(static_cast<std::size_t>(n), cplx{1.0, 0.0});
    return out;
}

void awgn(std::span<cplx> samples, double noise_var, RngStream& rng) {
    if (noise_var < 0.0) throw std::domain_error("awgn: negative variance");
    if (noise_var == 0.0) return;
    for (auto& s : samples) s += rng.cgaussian(noise_var);
}

ChannelRealization draw_tdl(const TdlProfile& profile, double sample_rate, int n_fft,
                            RngStream& rng) {
    const auto powers = profile.normalized_linear_powers();
    int max_pos = 0;
    std::vector<int> pos(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        pos[i] = static_cast<int>(std::lround(profile.delays_s[i] * sample_rate));
        max_pos = std::max(max_pos, pos[i]);
    }
    ChannelRealization out;
    out.fir.assign(static_cast<std::size_t>(max_pos + 1), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < powers.size(); ++i)
        out.fir[static_cast<std::size_t>(pos[i])] += rng.cgaussian(powers[i]);
    out.freq_response.assign(static_cast<std::size_t>(n_fft), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < out.fir.size() && i < out.freq_response.size(); ++i)
        out.freq_response[i] = out.fir[i];
    fft_forward(out.freq_response);
    return out;
}

TxFrame apply_channel(const ChannelRealization& realization, const TxFrame& tx) {
    TxFrame out;
    out.n = tx.n;
    out.n_cp = tx.n_cp;
    out.samples.assign(tx.samples.size(), cplx{0.0, 0.0});
    const int len = static_cast<int>(tx.samples.size());
    const int taps = static_cast<int>(realization.fir.size());
    for (int tau = 0; tau < taps; ++tau) {
        const cplx g = realization.fir[static_cast<std::size_t>(tau)];
        if (g == cplx{0.0, 0.0}) continue;
        for (int t = tau; t < len; ++t)
            out.samples[static_cast<std::size_t>(t)] +=
                g * tx.samples[static_cast<std::size_t>(t - tau)];
    }
    return out;
}

double snr_to_noisevar(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

double ebn0_offset_db(int total_bits, int n_body) {
    if (total_bits < 1 || n_body < 1)
        throw std::domain_error("ebn0_offset_db: bad dimensions");
    return 10.0 * std::log10(static_cast<double>(n_body) / static_cast<double>(total_bits));
}

double noisevar_from_ebn0_db(double ebn0_db, int total_bits, int n_body) {
    return snr_to_noisevar(ebn0_db - ebn0_offset_db(total_bits, n_body));
}

} // namespace chirpim
