#ifndef CHIRPIM_SEQUENCES_HPP
#define CHIRPIM_SEQUENCES_HPP

#include "chirpim/chirp_spectrum.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace chirpim {

/// Finite complex sequence. Sequences produced from an FDSS window keep
/// their k = L_d..L_u coefficients re-indexed to 0..M-1; the aperiodic
/// autocorrelation and the unit-circle magnitude are shift-invariant, so
/// nothing is lost.
using ComplexSequence = std::vector<cplx>;

/// Aperiodic autocorrelation rho_a(lag) = sum_i a_{i+lag} a_i^*.
/// Conjugate-symmetric: rho(-lag) = rho(lag)^*. |lag| must be < length.
cplx apac(const ComplexSequence& a, int lag);

struct GcpVerdict {
    bool is_gcp = false;
    /// max over lag != 0 of |rho_a + rho_b|, normalized by rho_a(0)+rho_b(0)
    double max_residual = 0.0;
    /// rho_a(0) + rho_b(0): the instantaneous-peak-power bound of the pair
    double peak_bound = 0.0;
    /// un-normalized residual, for reporting alongside the normalized one
    double max_residual_raw = 0.0;
    /// relative ripple of |p_a|^2 + |p_b|^2 on the oversampled unit circle
    double freq_ripple = 0.0;
};

/// Golay-pair test: lag-domain residual plus the equivalent unit-circle
/// constancy check. `tol` applies to the normalized lag residual.
GcpVerdict is_gcp(const ComplexSequence& a, const ComplexSequence& b, double tol);

/// Complementary-sequence synthesis from a chirp FDSS: the pair
///   a_k = c_m G_k e^{-j 2 pi k s_m} + c_n G_k e^{-j 2 pi k s_n}
///   b_k = c_m G_k e^{-j 2 pi k s_m} - c_n G_k e^{-j 2 pi k s_n}
/// with shifts given as fractions of the symbol duration. c_m and c_n must
/// be unit modulus. Equal shifts are allowed (degenerate pair with b = 0).
std::pair<ComplexSequence, ComplexSequence> synth_cs_pair(const FdssSequence& fdss,
                                                          double shift_m, double shift_n,
                                                          cplx c_m, cplx c_n);

/// Samples of p_a(e^{j 2 pi t / Ts}) on an (oversampling * M)-point grid,
/// computed with a zero-padded inverse transform.
std::vector<cplx> oversampled_waveform(const ComplexSequence& a, int oversampling);

/// Peak-to-mean envelope power ratio in dB on the oversampled grid.
///
/// By default the mean is the sequence's own time-averaged power. When the
/// sequence is one frame of a larger scheme, pass `reference_power` (the
/// scheme's average signal power) so that frames with different mean powers
/// are measured against the common baseline.
double pmepr_db(const ComplexSequence& a, int oversampling,
                std::optional<double> reference_power = std::nullopt);

/// Number of distinct complementary sequences available from M chirp shifts
/// and H phases: C(M,2) * H^2.
std::uint64_t count_cs(int m, int h);

} // namespace chirpim

#endif
