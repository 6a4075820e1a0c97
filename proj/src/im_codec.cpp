#include "chirpim/im_codec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirpim {

namespace {

bool is_pow2_int(int v) { return v >= 1 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

int bit_length(uint128 v) {
    int n = 0;
    while (v) {
        v >>= 1;
        ++n;
    }
    return n;
}

} // namespace

uint128 binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint128 c = 1;
    for (int i = 0; i < k; ++i) {
        const uint128 num = static_cast<uint128>(n - i);
        if (c > (~static_cast<uint128>(0)) / num)
            throw std::overflow_error("binomial: value exceeds 128 bits");
        c = c * num / static_cast<uint128>(i + 1);
    }
    return c;
}

std::vector<int> unrank_combination(uint128 r, int m, int l) {
    if (l < 1 || l > m) throw std::domain_error("unrank_combination: bad l");
    if (r >= binomial(m, l)) throw std::domain_error("unrank_combination: rank out of range");
    std::vector<int> out(static_cast<std::size_t>(l));
    for (int i = l; i >= 1; --i) {
        // largest c with C(c, i) <= r; scan upward with an incremental update
        int c = i - 1;
        uint128 bc = 0; // C(i-1, i) = 0
        uint128 next = 1; // C(i, i) = 1
        while (next <= r && c + 1 < m) {
            ++c;
            bc = next;
            next = next * static_cast<uint128>(c + 1) / static_cast<uint128>(c + 1 - i);
        }
        out[static_cast<std::size_t>(i - 1)] = c;
        r -= bc;
    }
    return out;
}

uint128 rank_combination(std::span<const int> indices, int m, int l) {
    if (static_cast<int>(indices.size()) != l)
        throw std::domain_error("rank_combination: wrong tuple size");
    uint128 r = 0;
    int prev = -1;
    for (int i = 0; i < l; ++i) {
        const int v = indices[static_cast<std::size_t>(i)];
        if (v <= prev || v < 0 || v >= m)
            throw std::domain_error("rank_combination: indices must be strictly increasing and in range");
        prev = v;
        r += binomial(v, i + 1);
    }
    return r;
}

PayloadLayout PayloadLayout::make(int m, int h, int l) {
    if (m < 2) throw std::domain_error("PayloadLayout: need m >= 2");
    if (l < 1 || l >= m) throw std::domain_error("PayloadLayout: need 1 <= l < m");
    if (!is_pow2_int(h)) throw std::domain_error("PayloadLayout: H must be a power of two");
    PayloadLayout out;
    out.m = m;
    out.h = h;
    out.l = l;
    out.psk_bits = l * log2_exact(h);
    out.index_bits = bit_length(binomial(m, l)) - 1;
    out.total_bits = out.psk_bits + out.index_bits;
    return out;
}

void ImFrame::validate() const {
    if (indices.size() != symbols.size())
        throw std::domain_error("ImFrame: index/symbol count mismatch");
    if (indices.empty()) throw std::domain_error("ImFrame: no active positions");
    int prev = -1;
    for (const int v : indices) {
        if (v <= prev || v < 0 || v >= m)
            throw std::domain_error("ImFrame: indices must be strictly increasing and in [0, m)");
        prev = v;
    }
    for (const auto& s : symbols)
        if (std::fabs(std::abs(s) - 1.0) > 1e-9)
            throw std::domain_error("ImFrame: symbols must be unit modulus");
}

ImFrame im_encode(std::span<const std::uint8_t> bits, const PayloadLayout& layout) {
    if (static_cast<int>(bits.size()) != layout.total_bits)
        throw std::domain_error("im_encode: bit count does not match layout");
    const int bits_per_sym = layout.l > 0 ? layout.psk_bits / layout.l : 0;
    ImFrame frame;
    frame.m = layout.m;
    frame.symbols.reserve(static_cast<std::size_t>(layout.l));
    for (int s = 0; s < layout.l; ++s) {
        int phase_idx = 0;
        for (int b = 0; b < bits_per_sym; ++b)
            phase_idx = (phase_idx << 1) | bits[static_cast<std::size_t>(s * bits_per_sym + b)];
        const double ang = 2.0 * std::numbers::pi * phase_idx / layout.h;
        frame.symbols.push_back({std::cos(ang), std::sin(ang)});
    }
    uint128 rank = 0;
    for (int b = 0; b < layout.index_bits; ++b)
        rank = (rank << 1) | bits[static_cast<std::size_t>(layout.psk_bits + b)];
    frame.indices = unrank_combination(rank, layout.m, layout.l);
    return frame;
}

std::vector<std::uint8_t> im_decode(const ImFrame& frame, const PayloadLayout& layout) {
    frame.validate();
    if (static_cast<int>(frame.indices.size()) != layout.l || frame.m != layout.m)
        throw std::domain_error("im_decode: frame does not match layout");
    const int bits_per_sym = layout.psk_bits / layout.l;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(layout.total_bits), 0);
    for (int s = 0; s < layout.l; ++s) {
        const double ang = std::arg(frame.symbols[static_cast<std::size_t>(s)]);
        int phase_idx = static_cast<int>(std::lround(ang * layout.h / (2.0 * std::numbers::pi)));
        phase_idx = ((phase_idx % layout.h) + layout.h) % layout.h;
        for (int b = 0; b < bits_per_sym; ++b)
            bits[static_cast<std::size_t>(s * bits_per_sym + b)] =
                static_cast<std::uint8_t>((phase_idx >> (bits_per_sym - 1 - b)) & 1);
    }
    uint128 rank = rank_combination(frame.indices, layout.m, layout.l);
    const uint128 limit = (static_cast<uint128>(1) << layout.index_bits) - 1;
    if (rank > limit) rank = limit; // out-of-codebook combination: clamp
    for (int b = 0; b < layout.index_bits; ++b)
        bits[static_cast<std::size_t>(layout.psk_bits + b)] =
            static_cast<std::uint8_t>((rank >> (layout.index_bits - 1 - b)) & 1);
    return bits;
}

double spectral_efficiency(const PayloadLayout& layout) {
    return static_cast<double>(layout.total_bits) / static_cast<double>(layout.m);
}

std::vector<TradeoffRow> tradeoff_table(int m, int h, int l_min, int l_max) {
    if (l_min < 1 || l_max > 11 || l_min > l_max)
        throw std::domain_error("tradeoff_table: l range must lie within 1..11");
    std::vector<TradeoffRow> rows;
    rows.reserve(static_cast<std::size_t>(l_max - l_min + 1));
    for (int l = l_min; l <= l_max; ++l) {
        const PayloadLayout layout = PayloadLayout::make(m, h, l);
        rows.push_back({l, layout.total_bits, spectral_efficiency(layout),
                        10.0 * std::log10(static_cast<double>(l))});
    }
    return rows;
}

} // namespace chirpim
