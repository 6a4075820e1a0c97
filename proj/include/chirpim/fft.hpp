#ifndef CHIRPIM_FFT_HPP
#define CHIRPIM_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace chirpim {

using cplx = std::complex<double>;

/// Discrete Fourier transform of arbitrary length.
///
/// Conventions used throughout the project:
///   forward:  X[q] = sum_n x[n] e^{-j 2 pi q n / N}      (unnormalized)
///   inverse:  x[n] = (1/N) sum_q X[q] e^{+j 2 pi q n / N}
///
/// Power-of-two lengths run an iterative radix-2 transform; any other length
/// falls back to Bluestein's chirp-z algorithm on top of a padded radix-2
/// transform. A plan precomputes all twiddle tables at construction and is
/// immutable afterwards, so one plan may be shared across threads.
class Fft {
  public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(std::vector<cplx>& data) const { transform(data, false); }
    void inverse(std::vector<cplx>& data) const { transform(data, true); }

    /// Shared plan cache keyed by transform length. Returned plans live for
    /// the duration of the program.
    static const Fft& plan(std::size_t n);

  private:
    void transform(std::vector<cplx>& data, bool inv) const;
    void radix2(std::vector<cplx>& data, bool inv) const;
    void bluestein(std::vector<cplx>& data, bool inv) const;

    std::size_t n_ = 0;
    bool pow2_ = false;

    // radix-2 tables for length n_ (or the Bluestein padding length)
    std::size_t work_n_ = 0;
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> twiddle_; // e^{-j 2 pi i / work_n_}, i < work_n_/2

    // Bluestein tables (empty when n_ is a power of two)
    std::vector<cplx> bchirp_;     // e^{-j pi k^2 / n}
    std::vector<cplx> bchirp_fft_; // forward FFT of the padded conjugate chirp
};

/// Convenience wrappers using the shared plan cache.
void fft_forward(std::vector<cplx>& data);
void fft_inverse(std::vector<cplx>& data);

} // namespace chirpim

#endif
