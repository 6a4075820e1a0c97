#ifndef CHIRPIM_CHIRP_SPECTRUM_HPP
#define CHIRPIM_CHIRP_SPECTRUM_HPP

#include "chirpim/fft.hpp"

#include <functional>
#include <string>
#include <vector>

namespace chirpim {

enum class ChirpKind { Linear, Sinusoidal };

/// A band-limited unit-modulus chirp over one symbol.
///
/// `deviation` is the peak-to-peak frequency sweep D measured in cycles per
/// symbol: the instantaneous frequency stays within +-D/(2 Ts) Hz around the
/// carrier. The time-domain signal is e^{j phase(t)} and therefore always
/// unit modulus.
struct ChirpSpec {
    ChirpKind kind = ChirpKind::Sinusoidal;
    double deviation = 12.0;          // D, cycles per symbol
    double symbol_duration = 16.67e-6; // Ts, seconds

    /// Chirp phase at normalized time u = t/Ts (u is wrapped into [0,1), so
    /// circular shifts can be evaluated directly).
    ///   linear:     phase(u) = pi D (u^2 - u)   (sweep -D/2Ts .. +D/2Ts)
    ///   sinusoidal: phase(u) = (D/2) sin(2 pi u)
    double phase(double u) const;

    /// Instantaneous frequency at u, in cycles per symbol around the carrier.
    double instantaneous_frequency(double u) const;

    void validate() const;
};

/// Fourier coefficients G_k of a chirp, k = l_down .. l_up, used as the
/// frequency-domain spectral shaping sequence of the modem.
struct FdssSequence {
    int l_down = 0; // L_d < 0
    int l_up = 0;   // L_u > 0
    std::vector<cplx> coeffs; // coeffs[i] is G_{l_down + i}

    int size() const { return static_cast<int>(coeffs.size()); }
    cplx at_k(int k) const { return coeffs[static_cast<std::size_t>(k - l_down)]; }
    double total_power() const;
};

/// kth Fourier coefficient of the linear chirp (closed form via Fresnel
/// integrals). D in cycles per symbol.
cplx linear_chirp_coeff(int k, double deviation);

/// kth Fourier coefficient of the sinusoidal chirp: J_k(D/2), real-valued.
double sinusoidal_chirp_coeff(int k, double deviation);

/// Closed-form coefficient dispatching on the chirp kind.
cplx chirp_coeff(const ChirpSpec& spec, int k);

/// Oversampled-DFT approximation of the kth Fourier coefficient of
/// e^{j phase(u)}: (1/P) sum_p e^{j phase(p/P)} e^{-j 2 pi k p / P}.
///
/// `samples` is P. The caller must keep P well above the signal bandwidth
/// (P >= 16 D and P > 4|k| are enforced as a floor) or aliasing corrupts the
/// result.
cplx numeric_coeff(const std::function<double(double)>& phase, int k, int samples);

/// Builds the FDSS window [l_down, l_up] from the closed form for the chirp
/// kind. Emits a warning on stderr when the window is narrower than the
/// occupied bandwidth (the sequence is then visibly truncated).
FdssSequence make_fdss(const ChirpSpec& spec, int l_down, int l_up);

/// Occupied channel bandwidth of a coefficient sequence: the smallest count
/// of contiguous coefficients, grown from the spectral power centroid, that
/// captures at least `fraction` of the total power.
int ocb(const FdssSequence& fdss, double fraction);

/// OCB of a chirp measured on a wide evaluation grid (independent of any
/// FDSS truncation window).
int occupied_bandwidth(const ChirpSpec& spec, double fraction = 0.99);

/// CSV rows "k,re,im" for golden-file comparisons.
std::string fdss_csv(const FdssSequence& fdss);

} // namespace chirpim

#endif
