#include "chirpim/chirp_spectrum.hpp"

#include "chirpim/special_functions.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace chirpim {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_unit(double u) {
    const double w = u - std::floor(u);
    return w >= 1.0 ? 0.0 : w;
}

} // namespace

void ChirpSpec::validate() const {
    if (!(deviation > 0.0)) throw std::domain_error("ChirpSpec: deviation must be positive");
    if (!(symbol_duration > 0.0))
        throw std::domain_error("ChirpSpec: symbol duration must be positive");
}

double ChirpSpec::phase(double u) const {
    const double w = wrap_unit(u);
    if (kind == ChirpKind::Linear) return kPi * deviation * (w * w - w);
    return 0.5 * deviation * std::sin(2.0 * kPi * w);
}

double ChirpSpec::instantaneous_frequency(double u) const {
    const double w = wrap_unit(u);
    if (kind == ChirpKind::Linear) return 0.5 * deviation * (2.0 * w - 1.0);
    return 0.5 * deviation * std::cos(2.0 * kPi * w);
}

double FdssSequence::total_power() const {
    double p = 0.0;
    for (const auto& c : coeffs) p += std::norm(c);
    return p;
}

cplx linear_chirp_coeff(int k, double deviation) {
    if (!(deviation > 0.0))
        throw std::domain_error("linear_chirp_coeff: deviation must be positive");
    const double d = deviation;
    // Stationary-phase evaluation of the defining integral. The Fresnel
    // arguments are written with D in cycles per symbol; in the radian
    // convention they read (D_rad/2 +- 2 pi k)/sqrt(pi D_rad).
    const double scale = std::sqrt(2.0 / d);
    const double alpha = (0.5 * d + k) * scale;
    const double beta = (0.5 * d - k) * scale;
    const double mag = 1.0 / std::sqrt(2.0 * d);
    // full phase of the completed square, including the k-independent D term
    const double phase = -(kPi * d / 4.0 + kPi * k + kPi * k * static_cast<double>(k) / d);
    const cplx gamma = mag * cplx(std::cos(phase), std::sin(phase));
    const double creal = fresnel_c(alpha) + fresnel_c(beta);
    const double cimag = fresnel_s(alpha) + fresnel_s(beta);
    return gamma * cplx(creal, cimag);
}

double sinusoidal_chirp_coeff(int k, double deviation) {
    if (!(deviation > 0.0))
        throw std::domain_error("sinusoidal_chirp_coeff: deviation must be positive");
    return bessel_j(k, 0.5 * deviation);
}

cplx chirp_coeff(const ChirpSpec& spec, int k) {
    spec.validate();
    if (spec.kind == ChirpKind::Linear) return linear_chirp_coeff(k, spec.deviation);
    return {sinusoidal_chirp_coeff(k, spec.deviation), 0.0};
}

cplx numeric_coeff(const std::function<double(double)>& phase, int k, int samples) {
    if (samples < 64 || samples <= 4 * std::abs(k))
        throw std::invalid_argument(
            "numeric_coeff: too few samples for the requested coefficient");
    cplx acc{0.0, 0.0};
    const double p = static_cast<double>(samples);
    for (int i = 0; i < samples; ++i) {
        const double u = i / p;
        const double ang = phase(u) - 2.0 * kPi * k * u;
        acc += cplx(std::cos(ang), std::sin(ang));
    }
    return acc / p;
}

FdssSequence make_fdss(const ChirpSpec& spec, int l_down, int l_up) {
    spec.validate();
    if (!(l_down < 0 && 0 < l_up))
        throw std::invalid_argument("make_fdss: window must satisfy L_d < 0 < L_u");
    FdssSequence out;
    out.l_down = l_down;
    out.l_up = l_up;
    out.coeffs.reserve(static_cast<std::size_t>(l_up - l_down + 1));
    for (int k = l_down; k <= l_up; ++k) out.coeffs.push_back(chirp_coeff(spec, k));
    const int m = out.size();
    const int m_ocb = occupied_bandwidth(spec, 0.99);
    if (m < m_ocb) {
        std::cerr << "warning: FDSS window M=" << m << " is narrower than the occupied bandwidth M_ocb=" << m_ocb
                  << " (D=" << spec.deviation << "); the sequence is truncated\n";
    }
    return out;
}

int ocb(const FdssSequence& fdss, double fraction) {
    if (fdss.coeffs.empty()) throw std::domain_error("ocb: empty sequence");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::domain_error("ocb: fraction must lie in (0,1)");
    const int n = fdss.size();
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0, weighted = 0.0;
    for (int i = 0; i < n; ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(fdss.coeffs[static_cast<std::size_t>(i)]);
        total += p[static_cast<std::size_t>(i)];
        weighted += i * p[static_cast<std::size_t>(i)];
    }
    if (total <= 0.0) throw std::domain_error("ocb: sequence has no power");
    int lo = static_cast<int>(std::lround(weighted / total));
    lo = std::max(0, std::min(n - 1, lo));
    int hi = lo;
    double captured = p[static_cast<std::size_t>(lo)];
    while (captured < fraction * total && (lo > 0 || hi < n - 1)) {
        const double left = lo > 0 ? p[static_cast<std::size_t>(lo - 1)] : -1.0;
        const double right = hi < n - 1 ? p[static_cast<std::size_t>(hi + 1)] : -1.0;
        if (right >= left) {
            captured += p[static_cast<std::size_t>(++hi)];
        } else {
            captured += p[static_cast<std::size_t>(--lo)];
        }
    }
    return hi - lo + 1;
}

int occupied_bandwidth(const ChirpSpec& spec, double fraction) {
    spec.validate();
    // evaluation grid well beyond the nominal band edge D/2
    const int half = std::max(64, static_cast<int>(std::ceil(0.5 * spec.deviation)) + 64);
    FdssSequence wide;
    wide.l_down = -half;
    wide.l_up = half;
    wide.coeffs.reserve(static_cast<std::size_t>(2 * half + 1));
    for (int k = -half; k <= half; ++k) wide.coeffs.push_back(chirp_coeff(spec, k));
    return ocb(wide, fraction);
}

std::string fdss_csv(const FdssSequence& fdss) {
    std::ostringstream os;
    os.precision(17);
    os << "k,re,im\n";
    for (int k = fdss.l_down; k <= fdss.l_up; ++k) {
        const cplx c = fdss.at_k(k);
        os << k << ',' << c.real() << ',' << c.imag() << '\n';
    }
    return os.str();
}

} // namespace chirpim
