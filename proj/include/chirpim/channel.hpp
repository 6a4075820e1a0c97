#ifndef CHIRPIM_CHANNEL_HPP
#define CHIRPIM_CHANNEL_HPP

#include "chirpim/modem.hpp"
#include "chirpim/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace chirpim {

/// Tapped-delay-line power-delay profile.
struct TdlProfile {
    std::string name;
    std::vector<double> delays_s;  // non-negative, ascending
    std::vector<double> powers_db;

    void validate() const;
    /// Linear tap powers scaled to sum to one.
    std::vector<double> normalized_linear_powers() const;
    double rms_delay_spread() const; // seconds
    double max_delay() const;
    /// Profile with taps beyond `max_delay_s` dropped (at least the first
    /// tap is kept); powers renormalize on draw.
    TdlProfile truncated(double max_delay_s) const;
};

/// ITU Extended Vehicular A.
TdlProfile eva_profile();

/// One block-fading realization: sample-spaced FIR taps and the matching
/// N-point frequency response.
struct ChannelRealization {
    std::vector<cplx> fir;
    std::vector<cplx> freq_response;
};

/// Flat unit channel (AWGN-only operation).
ChannelRealization identity_channel(int n);

/// Adds circularly-symmetric complex Gaussian noise of total variance
/// `noise_var` per sample.
void awgn(std::span<cplx> samples, double noise_var, RngStream& rng);

/// Draws an i.i.d. Rayleigh realization of the profile: tap delays rounded
/// to the nearest sample at `sample_rate`, each tap complex Gaussian with
/// variance equal to its normalized power. E[sum |taps|^2] = 1.
ChannelRealization draw_tdl(const TdlProfile& profile, double sample_rate, int n_fft,
                            RngStream& rng);

/// Linear convolution of the frame with the FIR taps, truncated to the frame
/// length. With CP at least as long as the channel memory the body sees a
/// circular convolution, i.e. per-bin multiplication by freq_response.
TxFrame apply_channel(const ChannelRealization& realization, const TxFrame& tx);

/// Per-sample SNR (unit mean body power) to noise variance.
double snr_to_noisevar(double snr_db);

/// Eb/N0 = SNR * N_body / S. Eb counts body samples only (no CP energy).
double ebn0_offset_db(int total_bits, int n_body);
double noisevar_from_ebn0_db(double ebn0_db, int total_bits, int n_body);

} // namespace chirpim

#endif
