#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chirpim/channel.hpp"
#include "chirpim/fft.hpp"
#include "chirpim/rng.hpp"

#include <cmath>
#include <stdexcept>

using namespace chirpim;

TEST_CASE("awgn: zero variance is the identity") {
    RngStream rng(1, 0, RngStream::kNoise);
    std::vector<cplx> v(64, cplx{0.5, -0.25});
    auto w = v;
    awgn(std::span<cplx>(w), 0.0, rng);
    CHECK(w == v);
    CHECK_THROWS_AS(awgn(std::span<cplx>(w), -0.1, rng), std::domain_error);
}

TEST_CASE("awgn: empirical variance and circular symmetry") {
    RngStream rng(2, 0, RngStream::kNoise);
    const int n = 1000000;
    std::vector<cplx> v(n, cplx{0.0, 0.0});
    const double target = 0.8;
    awgn(std::span<cplx>(v), target, rng);
    double vr = 0.0, vi = 0.0;
    for (const auto& x : v) {
        vr += x.real() * x.real();
        vi += x.imag() * x.imag();
    }
    CHECK((vr + vi) / n == doctest::Approx(target).epsilon(0.01));
    CHECK(vr / n == doctest::Approx(target / 2).epsilon(0.01));
    CHECK(vi / n == doctest::Approx(target / 2).epsilon(0.01));
}

TEST_CASE("EVA profile constants") {
    const TdlProfile eva = eva_profile();
    CHECK(eva.delays_s.size() == 9);
    CHECK(eva.max_delay() == doctest::Approx(2.51e-6));
    CHECK(eva.rms_delay_spread() * 1e9 == doctest::Approx(356.6).epsilon(0.005));
    const auto p = eva.normalized_linear_powers();
    double total = 0.0;
    for (const double x : p) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("EVA taps land on at least seven distinct samples at 30.72 MHz") {
    RngStream rng(3, 0, RngStream::kChannel);
    const auto r = draw_tdl(eva_profile(), 30.72e6, 512, rng);
    int nonzero = 0;
    for (const auto& t : r.fir)
        if (t != cplx{0.0, 0.0}) ++nonzero;
    CHECK(nonzero >= 7);
}

TEST_CASE("tap energy is normalized in expectation") {
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        RngStream rng(42, static_cast<std::uint32_t>(i), RngStream::kChannel);
        const auto r = draw_tdl(eva_profile(), 30.72e6, 64, rng);
        for (const auto& t : r.fir) acc += std::norm(t);
    }
    CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("a single-tap profile is frequency flat") {
    TdlProfile flat{"flat", {0.0}, {0.0}};
    RngStream rng(4, 0, RngStream::kChannel);
    const auto r = draw_tdl(flat, 30.72e6, 128, rng);
    const double mag = std::abs(r.freq_response[0]);
    for (const auto& h : r.freq_response) CHECK(std::abs(h) == doctest::Approx(mag).epsilon(1e-12));
}

TEST_CASE("profile truncation keeps leading taps") {
    const auto t = eva_profile().truncated(1.0e-6);
    CHECK(t.delays_s.size() == 6); // taps at 0..710 ns survive
    CHECK(t.max_delay() == doctest::Approx(710e-9));
    const auto p = t.normalized_linear_powers();
    double total = 0.0;
    for (const double x : p) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_channel: identity and pure delay") {
    TxFrame tx;
    tx.n = 32;
    tx.n_cp = 8;
    tx.samples.resize(40);
    RngStream rng(5, 0, 12);
    for (int i = 0; i < 32; ++i)
        tx.samples[static_cast<std::size_t>(8 + i)] = rng.cgaussian(1.0);
    for (int i = 0; i < 8; ++i)
        tx.samples[static_cast<std::size_t>(i)] = tx.samples[static_cast<std::size_t>(32 + i)];

    ChannelRealization ident = identity_channel(32);
    const auto same = apply_channel(ident, tx);
    for (std::size_t i = 0; i < tx.samples.size(); ++i)
        CHECK(std::abs(same.samples[i] - tx.samples[i]) < 1e-14);

    ChannelRealization delay;
    delay.fir = {cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    delay.freq_response.assign(32, cplx{0.0, 0.0});
    const auto shifted = apply_channel(delay, tx);
    const auto body_in = tx.body();
    const auto body_out = shifted.body();
    // CP >= delay: the body is circularly rotated by three samples
    for (int t = 0; t < 32; ++t)
        CHECK(std::abs(body_out[static_cast<std::size_t>(t)] -
                       body_in[static_cast<std::size_t>((t - 3 + 32) % 32)]) < 1e-14);
}

TEST_CASE("CP absorbs the channel: post-FFT model is per-bin multiplication") {
    TxFrame tx;
    tx.n = 64;
    tx.n_cp = 16;
    tx.samples.resize(80);
    RngStream rng(6, 0, 12);
    for (int i = 0; i < 64; ++i)
        tx.samples[static_cast<std::size_t>(16 + i)] = rng.cgaussian(1.0);
    for (int i = 0; i < 16; ++i)
        tx.samples[static_cast<std::size_t>(i)] = tx.samples[static_cast<std::size_t>(64 + i)];

    ChannelRealization chan;
    chan.fir.resize(9);
    for (auto& t : chan.fir) t = rng.cgaussian(1.0 / 9.0);
    chan.freq_response.assign(64, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < chan.fir.size(); ++i) chan.freq_response[i] = chan.fir[i];
    fft_forward(chan.freq_response);

    const auto rxf = apply_channel(chan, tx);
    std::vector<cplx> in_spec(tx.body().begin(), tx.body().end());
    std::vector<cplx> out_spec(rxf.body().begin(), rxf.body().end());
    fft_forward(in_spec);
    fft_forward(out_spec);
    for (int k = 0; k < 64; ++k)
        CHECK(std::abs(out_spec[static_cast<std::size_t>(k)] -
                       chan.freq_response[static_cast<std::size_t>(k)] *
                           in_spec[static_cast<std::size_t>(k)]) < 1e-9);
}

TEST_CASE("noiseless fading loopback detects exactly") {
    const int m = 48, n = 64, n_cp = 16;
    const Modem modem(Scheme::ChirpSinusoidal, m, n, n_cp, 24.0, 16.67e-6, 4, 2);
    ImFrame frame;
    frame.m = m;
    frame.indices = {9, 33};
    frame.symbols = {cplx{0.0, 1.0}, cplx{-1.0, 0.0}};
    for (int rep = 0; rep < 20; ++rep) {
        RngStream rng(100, static_cast<std::uint32_t>(rep), RngStream::kChannel);
        const auto chan = draw_tdl(eva_profile(), n / 16.67e-6, n, rng);
        auto tx = modem.tx(frame);
        tx = apply_channel(chan, tx);
        const auto soft = modem.rx(tx, chan.freq_response, 0.0);
        const auto det = ml_detect(soft.y, 4, 2);
        CHECK(det.indices == frame.indices);
        CHECK(std::abs(det.symbols[0] - frame.symbols[0]) < 1e-9);
        CHECK(std::abs(det.symbols[1] - frame.symbols[1]) < 1e-9);
    }
}

TEST_CASE("a unit single-tap channel is byte-identical to the AWGN path") {
    const int m = 48, n = 64, n_cp = 16;
    const Modem modem(Scheme::ChirpLinear, m, n, n_cp, 24.0, 16.67e-6, 4, 2);
    ImFrame frame;
    frame.m = m;
    frame.indices = {4, 21};
    frame.symbols = {cplx{1.0, 0.0}, cplx{0.0, -1.0}};
    const auto tx = modem.tx(frame);

    const ChannelRealization unit = identity_channel(n);
    auto faded = apply_channel(unit, tx);
    auto plain = tx;
    RngStream noise_a(12, 5, RngStream::kNoise);
    RngStream noise_b(12, 5, RngStream::kNoise);
    awgn(std::span<cplx>(faded.samples), 0.5, noise_a);
    awgn(std::span<cplx>(plain.samples), 0.5, noise_b);

    const auto soft_faded = modem.rx(faded, unit.freq_response, 0.5);
    const std::vector<cplx> ones(static_cast<std::size_t>(n), cplx{1.0, 0.0});
    const auto soft_plain = modem.rx(plain, ones, 0.5);
    for (int i = 0; i < m; ++i)
        CHECK(soft_faded.y[static_cast<std::size_t>(i)] ==
              soft_plain.y[static_cast<std::size_t>(i)]);
    const auto da = ml_detect(soft_faded.y, 4, 2);
    const auto db = ml_detect(soft_plain.y, 4, 2);
    CHECK(da.indices == db.indices);
}

TEST_CASE("SNR and Eb/N0 bookkeeping") {
    CHECK(snr_to_noisevar(0.0) == doctest::Approx(1.0));
    CHECK(snr_to_noisevar(10.0) == doctest::Approx(0.1));
    // layout (384,4,2) with N=512: offset 10 log10(512/20)
    CHECK(ebn0_offset_db(20, 512) == doctest::Approx(14.0824).epsilon(1e-4));
    // doubling the payload halves Eb at fixed SNR
    CHECK(ebn0_offset_db(40, 512) == doctest::Approx(14.0824 - 3.0103).epsilon(1e-4));
    CHECK(noisevar_from_ebn0_db(14.0824, 20, 512) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(ebn0_offset_db(0, 512), std::domain_error);
}
