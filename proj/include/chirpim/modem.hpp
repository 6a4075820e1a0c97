#ifndef CHIRPIM_MODEM_HPP
#define CHIRPIM_MODEM_HPP

#include "chirpim/chirp_spectrum.hpp"
#include "chirpim/im_codec.hpp"
#include "chirpim/sequences.hpp"

#include <span>
#include <vector>

namespace chirpim {

enum class Scheme { ChirpSinusoidal, ChirpLinear, DftsOfdmIm, OfdmIm };

const char* scheme_name(Scheme s);

/// One transmitted symbol: cyclic prefix followed by the N body samples, at
/// sample rate N/Ts.
struct TxFrame {
    std::vector<cplx> samples; // n_cp + n entries
    int n = 0;
    int n_cp = 0;

    std::span<const cplx> body() const {
        return {samples.data() + n_cp, static_cast<std::size_t>(n)};
    }
    double mean_body_power() const;
};

/// Post-equalization, post-despreading symbol estimates.
struct SoftSymbols {
    std::vector<cplx> y; // length M
    double noise_var_est = 0.0;
};

/// DFT-s-OFDM transmitter/receiver chain with frequency-domain spectral
/// shaping, plus the plain OFDM-IM and unshaped DFT-s-OFDM-IM baselines.
///
/// The transmit scale is deterministic and chosen so the expected mean body
/// power is one for every scheme (it is exactly one for the baselines, whose
/// per-frame power does not depend on the data). The receiver knows this
/// scale, the FDSS and the channel, so with zero noise the MMSE equalizer
/// reduces to exact inversion.
class Modem {
  public:
    Modem(Scheme scheme, int m, int n, int n_cp, double deviation, double ts_seconds,
          int h, int l);

    Scheme scheme() const { return scheme_; }
    int m() const { return m_; }
    int n() const { return n_; }
    int n_cp() const { return n_cp_; }
    int h() const { return h_; }
    int l() const { return l_; }
    const FdssSequence& fdss() const { return fdss_; }

    /// N-grid FFT bin carrying FDSS index k (wrap mapping).
    int bin_of(int k) const { return ((k % n_) + n_) % n_; }

    /// Deterministic transmit amplitude applied before the inverse transform.
    double nominal_amplitude() const { return amplitude_; }

    TxFrame tx(const ImFrame& frame) const;

    /// Single-tap MMSE-FDE plus M-point de-spreading. `chan_freq` is the
    /// channel frequency response on the N-point grid (all ones for AWGN).
    SoftSymbols rx(const TxFrame& received, std::span<const cplx> chan_freq,
                   double noise_var) const;

    /// Post-FFT occupied bins in symbol order (OFDM-IM receive path; no
    /// equalization, the OFDM-IM detector folds the channel in).
    std::vector<cplx> extract_bins(const TxFrame& received) const;

    /// Channel response sampled at the occupied bins, in symbol order.
    std::vector<cplx> channel_at_bins(std::span<const cplx> chan_freq) const;

    /// Occupied-band sequence of a frame (the shaped coefficients for
    /// spread schemes, the sparse symbol vector itself for OFDM-IM); this is
    /// what PMEPR is measured on.
    ComplexSequence shaped_sequence(const ImFrame& frame) const;

    /// Average signal power of the scheme on the shaped-sequence scale; the
    /// PMEPR reference for `l` active positions.
    double reference_power(int l) const;

  private:
    std::vector<cplx> spread_and_shape(const ImFrame& frame) const;

    Scheme scheme_;
    int m_, n_, n_cp_, h_, l_;
    double ts_;
    FdssSequence fdss_;
    double fdss_power_ = 0.0; // sum |G_k|^2
    double amplitude_ = 0.0;
    const Fft* fft_m_ = nullptr; // cached shared plans
    const Fft* fft_n_ = nullptr;
};

/// Maximum-likelihood index/phase detector for equalized, de-spread symbols:
/// evaluates T(i,k) = Re{y_i e^{-j 2 pi k / H}}, keeps the best phase per
/// index and returns the l highest-scoring distinct indices. Ties break
/// toward the smaller index and the smaller phase index. For unimodular
/// alphabets this maximizes the joint metric exactly.
ImFrame ml_detect(std::span<const cplx> y, int h, int l);

/// ML detector for OFDM-IM on raw bins: T(i,k) = 2 Re{y_i (amp H_i)^*
/// e^{-j 2 pi k/H}} - |amp H_i|^2 with the same top-l selection.
ImFrame ofdm_im_detect(std::span<const cplx> bins, std::span<const cplx> chan_bins,
                       double amp, int h, int l);

} // namespace chirpim

#endif
