#ifndef CHIRPIM_SPECIAL_FUNCTIONS_HPP
#define CHIRPIM_SPECIAL_FUNCTIONS_HPP

namespace chirpim {

/// Fresnel integrals C(x) = int_0^x cos(pi u^2 / 2) du and
/// S(x) = int_0^x sin(pi u^2 / 2) du. Both are odd in x.
///
/// Absolute error below 1e-10 for |x| <= 100 (Maclaurin series for small
/// arguments, panelled Gauss-Legendre quadrature mid-range, auxiliary-function
/// asymptotics beyond). Throws std::domain_error on non-finite input.
double fresnel_c(double x);
double fresnel_s(double x);

/// Bessel function of the first kind J_k(x) for integer order k (negative
/// allowed, J_{-k} = (-1)^k J_k) and x >= 0.
///
/// Absolute error below 1e-10 (ascending series for x <= 12, Miller's
/// normalized backward recurrence above). Throws std::domain_error on
/// non-finite or negative x.
double bessel_j(int order, double x);

} // namespace chirpim

#endif
