#ifndef CHIRPIM_RNG_HPP
#define CHIRPIM_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace chirpim {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is fully identified by (master_seed, trial, purpose, point):
/// the seed becomes the cipher key and the three stream ids are placed in
/// the counter block, so any trial of any experiment can be regenerated in
/// isolation. This is what makes Monte Carlo runs deterministic under any
/// degree of parallelism: workers never share a stream, they each rebuild
/// the stream for the trial they own.
class RngStream {
  public:
    // Purpose tags used by the simulation engine.
    static constexpr std::uint32_t kBits = 1;
    static constexpr std::uint32_t kChannel = 2;
    static constexpr std::uint32_t kNoise = 3;
    static constexpr std::uint32_t kShifts = 4;

    RngStream(std::uint64_t master_seed, std::uint32_t trial,
              std::uint32_t purpose, std::uint32_t point = 0);

    std::uint32_t next_u32();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal deviate (Box-Muller, second value cached).
    double gaussian();

    /// Circularly-symmetric complex Gaussian with total variance `variance`.
    std::complex<double> cgaussian(double variance);

  private:
    void refill();

    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4; // forces refill on first draw
    double cached_gauss_ = 0.0;
    bool has_cached_gauss_ = false;
};

} // namespace chirpim

#endif
