#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chirpim/fft.hpp"
#include "chirpim/rng.hpp"
#include "oracles.hpp"

#include <vector>

using namespace chirpim;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint32_t tag) {
    RngStream rng(0xfeedbeef, tag, 99);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    return v;
}

} // namespace

TEST_CASE("delta transforms to all ones") {
    for (std::size_t n : {8u, 24u, 384u}) {
        std::vector<cplx> v(n, cplx{0, 0});
        v[0] = 1.0;
        fft_forward(v);
        for (const auto& x : v) {
            CHECK(x.real() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(x.imag() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("matches naive DFT on mixed sizes") {
    for (std::size_t n : {12u, 24u, 37u, 64u, 100u, 384u}) {
        auto v = random_vector(n, static_cast<std::uint32_t>(n));
        auto ref = oracles::naive_dft(v);
        fft_forward(v);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(v[i] - ref[i]) < 1e-8 * static_cast<double>(n));
    }
}

TEST_CASE("forward-inverse round trip") {
    for (std::size_t n : {16u, 24u, 384u, 512u, 3072u}) {
        auto v = random_vector(n, static_cast<std::uint32_t>(n) + 1000);
        auto orig = v;
        fft_forward(v);
        fft_inverse(v);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(v[i] - orig[i]) < 1e-11);
    }
}

TEST_CASE("Parseval holds") {
    const std::size_t n = 384;
    auto v = random_vector(n, 7);
    double time_power = 0.0;
    for (const auto& x : v) time_power += std::norm(x);
    fft_forward(v);
    double freq_power = 0.0;
    for (const auto& x : v) freq_power += std::norm(x);
    CHECK(freq_power / static_cast<double>(n) ==
          doctest::Approx(time_power).epsilon(1e-10));
}

TEST_CASE("plan length mismatch rejected") {
    Fft plan(16);
    std::vector<cplx> v(8);
    CHECK_THROWS_AS(plan.forward(v), std::invalid_argument);
    CHECK_THROWS_AS(Fft(0), std::invalid_argument);
}
