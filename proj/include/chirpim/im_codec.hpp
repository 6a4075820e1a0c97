#ifndef CHIRPIM_IM_CODEC_HPP
#define CHIRPIM_IM_CODEC_HPP

#include "chirpim/fft.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chirpim {

/// Exact integer type for combination ranks. C(384,11) exceeds 64 bits, so
/// rank arithmetic is carried in 128 bits throughout.
using uint128 = unsigned __int128;

/// Exact binomial coefficient C(n, k). Throws std::overflow_error if the
/// value would not fit in 128 bits.
uint128 binomial(int n, int k);

/// r-th l-element subset of {0..m-1} in combinadic (colexicographic) order,
/// returned ascending. 0 <= r < C(m, l).
std::vector<int> unrank_combination(uint128 r, int m, int l);

/// Inverse of unrank_combination: rank of a strictly increasing index tuple.
uint128 rank_combination(std::span<const int> indices, int m, int l);

/// Bit budget of one frame: which bits select PSK phases and which select
/// the index combination.
struct PayloadLayout {
    int m = 0;          // available positions
    int h = 0;          // PSK alphabet size, power of two
    int l = 0;          // active positions
    int psk_bits = 0;   // l * log2(h)
    int index_bits = 0; // floor(log2 C(m, l))
    int total_bits = 0; // psk_bits + index_bits

    static PayloadLayout make(int m, int h, int l);
};

/// Index-modulated symbol frame: l active positions out of m, each carrying
/// a unit-modulus PSK symbol from {e^{j 2 pi k / H}}.
struct ImFrame {
    int m = 0;
    std::vector<int> indices; // strictly increasing, in [0, m)
    std::vector<cplx> symbols;

    void validate() const;
};

/// Deterministic bits -> frame mapping. The first psk_bits map per-symbol
/// (log2 H bits each, natural binary, MSB first); the remaining index bits
/// read as an unsigned rank that is unranked into the index combination.
ImFrame im_encode(std::span<const std::uint8_t> bits, const PayloadLayout& layout);

/// Inverse of im_encode. A detected combination whose rank falls outside the
/// used codebook (rank >= 2^index_bits) is clamped to the last codeword
/// before bit extraction.
std::vector<std::uint8_t> im_decode(const ImFrame& frame, const PayloadLayout& layout);

/// rho = total_bits / m, in bit/s/Hz.
double spectral_efficiency(const PayloadLayout& layout);

struct TradeoffRow {
    int l = 0;
    int bits = 0;
    double rho = 0.0;
    double max_pmepr_db = 0.0; // 10 log10(l)
};

/// Spectral-efficiency / peak-power trade-off rows for l = l_min..l_max
/// (supported range 1..11).
std::vector<TradeoffRow> tradeoff_table(int m, int h, int l_min, int l_max);

} // namespace chirpim

#endif
