#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chirpim/im_codec.hpp"
#include "chirpim/rng.hpp"
#include "oracles.hpp"

#include <stdexcept>

using namespace chirpim;

namespace {

std::vector<std::uint8_t> bits_of(std::uint64_t value, int width) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
    return bits;
}

} // namespace

TEST_CASE("binomial values") {
    CHECK(static_cast<std::uint64_t>(binomial(8, 3)) == 56);
    CHECK(static_cast<std::uint64_t>(binomial(384, 2)) == 73536);
    CHECK(static_cast<std::uint64_t>(binomial(384, 4)) == 891881376);
    CHECK(static_cast<std::uint64_t>(binomial(5, 0)) == 1);
    CHECK(static_cast<std::uint64_t>(binomial(3, 5)) == 0);
    // C(384,11) needs more than 64 bits
    const uint128 big = binomial(384, 11);
    CHECK(static_cast<std::uint64_t>(big >> 64) > 0);
}

TEST_CASE("unrank smallest combinadics") {
    CHECK(unrank_combination(0, 16, 2) == std::vector<int>{0, 1});
    CHECK(unrank_combination(1, 16, 2) == std::vector<int>{0, 2});
    CHECK(unrank_combination(2, 16, 2) == std::vector<int>{1, 2});
}

TEST_CASE("rank of named tuples") {
    const int a[] = {0, 1};
    const int b[] = {1, 2};
    CHECK(static_cast<std::uint64_t>(rank_combination(a, 16, 2)) == 0);
    CHECK(static_cast<std::uint64_t>(rank_combination(b, 16, 2)) == 2);
}

TEST_CASE("round trip against the enumeration oracle") {
    const auto combos = oracles::all_combinations_colex(8, 3);
    REQUIRE(combos.size() == 56);
    for (std::size_t r = 0; r < combos.size(); ++r) {
        CHECK(unrank_combination(r, 8, 3) == combos[r]);
        CHECK(static_cast<std::uint64_t>(rank_combination(combos[r], 8, 3)) == r);
    }
}

TEST_CASE("unrank output is colex-monotone") {
    for (int m : {6, 10}) {
        for (int l : {2, 3, 4}) {
            const std::uint64_t count = static_cast<std::uint64_t>(binomial(m, l));
            auto prev = unrank_combination(0, m, l);
            for (std::uint64_t r = 1; r < count; ++r) {
                auto cur = unrank_combination(r, m, l);
                // colex comparison: compare reversed tuples
                CHECK(std::lexicographical_compare(prev.rbegin(), prev.rend(), cur.rbegin(),
                                                   cur.rend()));
                prev = std::move(cur);
            }
        }
    }
}

TEST_CASE("rank/unrank input validation") {
    CHECK_THROWS_AS(unrank_combination(binomial(8, 3), 8, 3), std::domain_error);
    const int dup[] = {2, 2};
    const int oob[] = {3, 9};
    CHECK_THROWS_AS(rank_combination(dup, 8, 2), std::domain_error);
    CHECK_THROWS_AS(rank_combination(oob, 8, 2), std::domain_error);
}

TEST_CASE("payload layouts of the reference operating points") {
    const auto l2 = PayloadLayout::make(384, 4, 2);
    CHECK(l2.index_bits == 16);
    CHECK(l2.psk_bits == 4);
    CHECK(l2.total_bits == 20);
    const auto l4 = PayloadLayout::make(384, 4, 4);
    CHECK(l4.index_bits == 29);
    CHECK(l4.psk_bits == 8);
    CHECK(l4.total_bits == 37);
    CHECK_THROWS_AS(PayloadLayout::make(384, 3, 2), std::domain_error);
    CHECK_THROWS_AS(PayloadLayout::make(384, 4, 0), std::domain_error);
}

TEST_CASE("floor decomposition of the payload size") {
    for (int m : {16, 64, 384}) {
        for (int h : {1, 2, 4, 8}) {
            for (int l : {1, 2, 3, 4}) {
                const auto layout = PayloadLayout::make(m, h, l);
                // floor(log2(C * H^l)) computed directly in 128-bit arithmetic
                uint128 v = binomial(m, l);
                for (int i = 0; i < l; ++i) v *= static_cast<uint128>(h);
                int bits = -1;
                while (v) {
                    v >>= 1;
                    ++bits;
                }
                CHECK(layout.total_bits == bits);
            }
        }
    }
}

TEST_CASE("all-zero payload maps to the first codeword") {
    const auto layout = PayloadLayout::make(384, 4, 2);
    const auto frame = im_encode(std::vector<std::uint8_t>(20, 0), layout);
    CHECK(frame.indices == std::vector<int>{0, 1});
    CHECK(std::abs(frame.symbols[0] - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(frame.symbols[1] - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("encode-decode round trip on random payloads") {
    for (int h : {2, 4}) {
        for (int l : {2, 3}) {
            const auto layout = PayloadLayout::make(32, h, l);
            RngStream rng(77, static_cast<std::uint32_t>(h * 10 + l), 1);
            for (int rep = 0; rep < 200; ++rep) {
                std::vector<std::uint8_t> bits(static_cast<std::size_t>(layout.total_bits));
                for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u32() & 1u);
                const auto frame = im_encode(bits, layout);
                CHECK(im_decode(frame, layout) == bits);
            }
        }
    }
}

TEST_CASE("out-of-codebook rank is clamped") {
    const auto layout = PayloadLayout::make(384, 4, 2);
    ImFrame frame;
    frame.m = 384;
    frame.indices = unrank_combination(binomial(384, 2) - 1, 384, 2); // rank 73535
    frame.symbols = {cplx{1.0, 0.0}, cplx{1.0, 0.0}};
    const auto bits = im_decode(frame, layout);
    // rank clamps to 2^16 - 1: all sixteen index bits read 1
    for (int b = layout.psk_bits; b < layout.total_bits; ++b)
        CHECK(bits[static_cast<std::size_t>(b)] == 1);
}

TEST_CASE("decode validates frame structure") {
    const auto layout = PayloadLayout::make(16, 4, 2);
    ImFrame bad;
    bad.m = 16;
    bad.indices = {3, 3};
    bad.symbols = {cplx{1.0, 0.0}, cplx{1.0, 0.0}};
    CHECK_THROWS_AS(im_decode(bad, layout), std::domain_error);
    ImFrame wrong_len;
    wrong_len.m = 16;
    wrong_len.indices = {1};
    wrong_len.symbols = {cplx{1.0, 0.0}};
    CHECK_THROWS_AS(im_decode(wrong_len, layout), std::domain_error);
    CHECK_THROWS_AS(im_encode(bits_of(0, 3), layout), std::domain_error);
}

TEST_CASE("spectral efficiency and trade-off rows") {
    const auto l1 = PayloadLayout::make(384, 4, 1);
    CHECK(l1.total_bits == 10);
    CHECK(spectral_efficiency(l1) == doctest::Approx(10.0 / 384.0));

    const auto rows = tradeoff_table(384, 4, 1, 11);
    REQUIRE(rows.size() == 11);
    CHECK(rows[1].l == 2);
    CHECK(rows[1].bits == 20);
    CHECK(rows[1].rho == doctest::Approx(20.0 / 384.0));
    CHECK(rows[1].max_pmepr_db == doctest::Approx(3.0103).epsilon(1e-3));
    CHECK(rows[3].bits == 37);
    CHECK(rows[3].max_pmepr_db == doctest::Approx(6.0206).epsilon(1e-3));
    CHECK_THROWS_AS(tradeoff_table(384, 4, 0, 5), std::domain_error);
    CHECK_THROWS_AS(tradeoff_table(384, 4, 1, 12), std::domain_error);
}
