#include "chirpim/sequences.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chirpim {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

cplx apac(const ComplexSequence& a, int lag) {
    const int m = static_cast<int>(a.size());
    if (m == 0) throw std::domain_error("apac: empty sequence");
    if (std::abs(lag) >= m) throw std::domain_error("apac: |lag| must be below the length");
    if (lag < 0) return std::conj(apac(a, -lag));
    cplx acc{0.0, 0.0};
    for (int i = 0; i + lag < m; ++i)
        acc += a[static_cast<std::size_t>(i + lag)] * std::conj(a[static_cast<std::size_t>(i)]);
    return acc;
}

GcpVerdict is_gcp(const ComplexSequence& a, const ComplexSequence& b, double tol) {
    if (a.size() != b.size()) throw std::domain_error("is_gcp: length mismatch");
    if (a.empty()) throw std::domain_error("is_gcp: empty sequences");
    const int m = static_cast<int>(a.size());

    GcpVerdict v;
    v.peak_bound = (apac(a, 0) + apac(b, 0)).real();
    for (int lag = 1; lag < m; ++lag) {
        const double r = std::abs(apac(a, lag) + apac(b, lag));
        v.max_residual_raw = std::max(v.max_residual_raw, r);
    }
    v.max_residual = v.peak_bound > 0.0 ? v.max_residual_raw / v.peak_bound : 0.0;
    v.is_gcp = v.max_residual <= tol;

    // frequency-domain equivalent: |p_a|^2 + |p_b|^2 constant on the circle
    const auto wa = oversampled_waveform(a, 8);
    const auto wb = oversampled_waveform(b, 8);
    double lo = 0.0, hi = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const double p = std::norm(wa[i]) + std::norm(wb[i]);
        if (i == 0) {
            lo = hi = p;
        } else {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        mean += p;
    }
    mean /= static_cast<double>(wa.size());
    v.freq_ripple = mean > 0.0 ? (hi - lo) / mean : 0.0;
    return v;
}

std::pair<ComplexSequence, ComplexSequence> synth_cs_pair(const FdssSequence& fdss,
                                                          double shift_m, double shift_n,
                                                          cplx c_m, cplx c_n) {
    if (fdss.coeffs.empty()) throw std::domain_error("synth_cs_pair: empty FDSS");
    if (std::fabs(std::abs(c_m) - 1.0) > 1e-9 || std::fabs(std::abs(c_n) - 1.0) > 1e-9)
        throw std::domain_error("synth_cs_pair: coefficients must be unit modulus");
    ComplexSequence a, b;
    a.reserve(fdss.coeffs.size());
    b.reserve(fdss.coeffs.size());
    for (int k = fdss.l_down; k <= fdss.l_up; ++k) {
        const cplx g = fdss.at_k(k);
        const double am = -2.0 * kPi * k * shift_m;
        const double an = -2.0 * kPi * k * shift_n;
        const cplx tm = c_m * g * cplx(std::cos(am), std::sin(am));
        const cplx tn = c_n * g * cplx(std::cos(an), std::sin(an));
        a.push_back(tm + tn);
        b.push_back(tm - tn);
    }
    return {std::move(a), std::move(b)};
}

std::vector<cplx> oversampled_waveform(const ComplexSequence& a, int oversampling) {
    if (a.empty()) throw std::domain_error("oversampled_waveform: empty sequence");
    if (oversampling < 1) throw std::invalid_argument("oversampled_waveform: bad factor");
    const std::size_t p = a.size() * static_cast<std::size_t>(oversampling);
    std::vector<cplx> grid(p, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) grid[i] = a[i];
    fft_inverse(grid);
    // inverse transform divides by P; undo it so grid[t] = p_a(e^{j2pi t/P})
    for (auto& x : grid) x *= static_cast<double>(p);
    return grid;
}

double pmepr_db(const ComplexSequence& a, int oversampling,
                std::optional<double> reference_power) {
    if (oversampling < 4) throw std::invalid_argument("pmepr_db: oversampling must be >= 4");
    double total = 0.0;
    for (const auto& x : a) total += std::norm(x);
    if (total <= 0.0) throw std::domain_error("pmepr_db: all-zero sequence");
    const auto wave = oversampled_waveform(a, oversampling);
    double peak = 0.0;
    for (const auto& x : wave) peak = std::max(peak, std::norm(x));
    const double mean = reference_power.value_or(total);
    if (mean <= 0.0) throw std::domain_error("pmepr_db: non-positive reference power");
    return 10.0 * std::log10(peak / mean);
}

std::uint64_t count_cs(int m, int h) {
    if (m < 2) throw std::domain_error("count_cs: need at least two shifts");
    if (h < 1) throw std::domain_error("count_cs: need at least one phase");
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m - 1) / 2;
    return pairs * static_cast<std::uint64_t>(h) * static_cast<std::uint64_t>(h);
}

} // namespace chirpim
