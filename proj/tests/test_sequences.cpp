#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chirpim/rng.hpp"
#include "chirpim/sequences.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace chirpim;

namespace {

ComplexSequence random_seq(int n, std::uint32_t tag) {
    RngStream rng(0xabc, tag, 7);
    ComplexSequence v(static_cast<std::size_t>(n));
    for (auto& x : v) x = {rng.gaussian(), rng.gaussian()};
    return v;
}

cplx qpsk(int k) {
    const double ang = 2.0 * std::numbers::pi * k / 4.0;
    return {std::cos(ang), std::sin(ang)};
}

} // namespace

TEST_CASE("apac hand-computed values") {
    const ComplexSequence a{1.0, 1.0};
    CHECK(apac(a, 0).real() == doctest::Approx(2.0));
    CHECK(apac(a, 1).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(apac(a, 2), std::domain_error);
    CHECK_THROWS_AS(apac(a, -2), std::domain_error);
}

TEST_CASE("apac symmetry, scaling and peak-at-zero") {
    const auto a = random_seq(17, 1);
    for (int lag = 1; lag < 17; ++lag) {
        const cplx lo = apac(a, -lag);
        const cplx hi = apac(a, lag);
        CHECK(std::abs(lo - std::conj(hi)) < 1e-12);
        CHECK(std::abs(hi) <= apac(a, 0).real() + 1e-12);
    }
    const cplx alpha{0.7, -1.3};
    ComplexSequence scaled = a;
    for (auto& x : scaled) x *= alpha;
    for (int lag : {0, 3, 9})
        CHECK(std::abs(apac(scaled, lag) - std::norm(alpha) * apac(a, lag)) < 1e-10);
    CHECK(apac(a, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("canonical length-2 pair") {
    const GcpVerdict v = is_gcp({1.0, 1.0}, {1.0, -1.0}, 1e-12);
    CHECK(v.is_gcp);
    CHECK(v.max_residual == doctest::Approx(0.0));
    CHECK(v.peak_bound == doctest::Approx(4.0));
    CHECK(v.freq_ripple < 1e-12);
}

TEST_CASE("chirp pair of length 24 passes, the heavily truncated one fails") {
    const auto fdss12 = make_fdss({ChirpKind::Sinusoidal, 12.0, 16.67e-6}, -11, 12);
    const auto [a12, b12] = synth_cs_pair(fdss12, 0.0, 1.0 / 24.0, 1.0, 1.0);
    const GcpVerdict good = is_gcp(a12, b12, 1e-2);
    CHECK(good.is_gcp);
    CHECK(good.max_residual < 1e-2);

    const auto fdss24 = make_fdss({ChirpKind::Sinusoidal, 24.0, 16.67e-6}, -11, 12);
    const auto [a24, b24] = synth_cs_pair(fdss24, 0.0, 1.0 / 24.0, 1.0, 1.0);
    const GcpVerdict bad = is_gcp(a24, b24, 1e-2);
    CHECK_FALSE(bad.is_gcp);
    CHECK(bad.max_residual > 5e-2);
}

TEST_CASE("lag-domain and unit-circle tests agree") {
    // exact pairs: both accept
    const GcpVerdict exact = is_gcp({1.0, 1.0}, {1.0, -1.0}, 1e-10);
    CHECK(exact.is_gcp);
    CHECK(exact.freq_ripple < 1e-10);
    // random unimodular pairs: both reject
    RngStream rng(3, 3, 3);
    for (int rep = 0; rep < 16; ++rep) {
        ComplexSequence a, b;
        for (int i = 0; i < 12; ++i) {
            const double pa = 2.0 * std::numbers::pi * rng.uniform();
            const double pb = 2.0 * std::numbers::pi * rng.uniform();
            a.push_back({std::cos(pa), std::sin(pa)});
            b.push_back({std::cos(pb), std::sin(pb)});
        }
        const GcpVerdict v = is_gcp(a, b, 1e-3);
        if (!v.is_gcp) CHECK(v.freq_ripple > 1e-2);
    }
}

TEST_CASE("degenerate synthesis: equal shifts collapse to one chirp") {
    const auto fdss = make_fdss({ChirpKind::Sinusoidal, 12.0, 16.67e-6}, -11, 12);
    const auto [a, b] = synth_cs_pair(fdss, 0.25, 0.25, 1.0, 1.0);
    double bnorm = 0.0;
    for (const auto& x : b) bnorm += std::abs(x);
    CHECK(bnorm < 1e-12);
    for (int k = fdss.l_down; k <= fdss.l_up; ++k) {
        const double ang = -2.0 * std::numbers::pi * k * 0.25;
        const cplx expect = 2.0 * fdss.at_k(k) * cplx(std::cos(ang), std::sin(ang));
        CHECK(std::abs(a[static_cast<std::size_t>(k - fdss.l_down)] - expect) < 1e-12);
    }
    // |x|^2 + |y|^2 = 2(|c_m|^2 + |c_n|^2) up to truncation
    const auto wa = oversampled_waveform(a, 8);
    const auto wb = oversampled_waveform(b, 8);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const double p = std::norm(wa[i]) + std::norm(wb[i]);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    CHECK(hi == doctest::Approx(4.0).epsilon(0.05));
    CHECK(lo == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("linear-chirp pair: residual present but small") {
    const auto lin = make_fdss({ChirpKind::Linear, 300.0, 16.67e-6}, -191, 192);
    const auto [la, lb] = synth_cs_pair(lin, 0.0, 1.0 / 384.0, 1.0, 1.0);
    const GcpVerdict lv = is_gcp(la, lb, 1e-2);

    const auto sin_ = make_fdss({ChirpKind::Sinusoidal, 300.0, 16.67e-6}, -191, 192);
    const auto [sa, sb] = synth_cs_pair(sin_, 0.0, 1.0 / 384.0, 1.0, 1.0);
    const GcpVerdict sv = is_gcp(sa, sb, 1e-2);

    CHECK(lv.max_residual > sv.max_residual); // truncation distorts linear chirps more
    CHECK(lv.max_residual < 5e-2);
}

TEST_CASE("synthesis input validation") {
    FdssSequence empty;
    CHECK_THROWS_AS(synth_cs_pair(empty, 0.0, 0.5, 1.0, 1.0), std::domain_error);
    const auto fdss = make_fdss({ChirpKind::Sinusoidal, 12.0, 16.67e-6}, -11, 12);
    CHECK_THROWS_AS(synth_cs_pair(fdss, 0.0, 0.5, cplx{2.0, 0.0}, 1.0), std::domain_error);
}

TEST_CASE("pmepr of a single tone is 0 dB") {
    ComplexSequence a(16, cplx{0.0, 0.0});
    a[5] = cplx{0.0, 1.0};
    CHECK(pmepr_db(a, 8) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(pmepr_db(a, 2), std::invalid_argument);
    ComplexSequence zeros(8, cplx{0.0, 0.0});
    CHECK_THROWS_AS(pmepr_db(zeros, 8), std::domain_error);
}

TEST_CASE("complementary pairs respect the peak-power bound") {
    // window well beyond the band edge, so the pair is complete and the
    // complementary peak bound holds to rounding
    const auto fdss = make_fdss({ChirpKind::Sinusoidal, 12.0, 16.67e-6}, -23, 24);
    RngStream rng(11, 0, 5);
    for (int rep = 0; rep < 200; ++rep) {
        const double sm = rng.uniform();
        const double sn = rng.uniform();
        const cplx cm = qpsk(static_cast<int>(rng.next_u32() % 4));
        const cplx cn = qpsk(static_cast<int>(rng.next_u32() % 4));
        const auto [a, b] = synth_cs_pair(fdss, sm, sn, cm, cn);
        const double bound = (apac(a, 0) + apac(b, 0)).real();
        for (const auto* seq : {&a, &b}) {
            const auto wave = oversampled_waveform(*seq, 8);
            double peak = 0.0;
            for (const auto& x : wave) peak = std::max(peak, std::norm(x));
            CHECK(peak <= bound * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("l=2 sinusoidal frames stay under the complementary PMEPR ceiling") {
    const auto fdss = make_fdss({ChirpKind::Sinusoidal, 300.0, 16.67e-6}, -191, 192);
    const double ref = 2.0 * fdss.total_power();
    RngStream rng(21, 1, 6);
    for (int rep = 0; rep < 400; ++rep) {
        const int u = 1 + static_cast<int>(rng.next_u32() % 383);
        const int base = static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(384 - u));
        const auto [a, b] =
            synth_cs_pair(fdss, base / 384.0, (base + u) / 384.0,
                          qpsk(static_cast<int>(rng.next_u32() % 4)),
                          qpsk(static_cast<int>(rng.next_u32() % 4)));
        CHECK(pmepr_db(a, 8, ref) <= 3.02);
    }
}

TEST_CASE("count of available complementary sequences") {
    CHECK(count_cs(2, 1) == 1);
    CHECK(count_cs(24, 1) == 276);
    CHECK(count_cs(384, 4) == 1176576);
    CHECK_THROWS_AS(count_cs(1, 4), std::domain_error);
    CHECK_THROWS_AS(count_cs(8, 0), std::domain_error);
}

TEST_CASE("is_gcp validates lengths") {
    CHECK_THROWS_AS(is_gcp({1.0, 1.0}, {1.0}, 1e-2), std::domain_error);
}
