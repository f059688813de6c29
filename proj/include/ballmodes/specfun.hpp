#pragma once

#include <complex>
#include <functional>

namespace ballmodes::specfun {

/// Highest supported spherical harmonic / Bessel degree.
inline constexpr int kMaxDegree = 64;

/// Spherical Bessel function of the first kind j_n(z) for z > 0, n <= kMaxDegree.
/// Upward recurrence above the turning point, Miller's downward recurrence below it.
double psi(int n, double z);

/// d/dz j_n(z) for z > 0.
double psi_prime(int n, double z);

/// j_n and its derivative in one pass over the recurrence.
void psi_and_prime(int n, double z, double* value, double* derivative);

/// Radial profile of the tangential part of a curl eigenfield,
///   phi_n(lambda, r) = integral_0^r exp(i lambda (r - t)) j_n(lambda t) / t dt,
/// evaluated by composite 16-point Gauss panels with dyadic refinement towards
/// t = 0, refined until successive levels agree to 1e-12. Requires n >= 1,
/// lambda != 0, r >= 0; lambda may be negative.
std::complex<double> phi(int n, double lambda, double r);

/// Closed form of the same profile, obtained from the Riccati-Bessel equation:
///   phi_n(x) = (j_n(x) + x j_n'(x) + i x j_n(x)) / (n (n+1)),  x = lambda r.
/// Agrees with phi() to quadrature accuracy; used on the hot path.
std::complex<double> phi_closed(int n, double lambda, double r);

/// Real orthonormal spherical harmonic Y_n^k(theta, phi), |k| <= n:
/// k = 0 gives the zonal harmonic, k > 0 the cos(k phi) harmonics,
/// k < 0 the sin(|k| phi) harmonics. No Condon-Shortley phase.
double ylm(int n, int k, double theta, double phi);

/// Tangential derivative operator H applied to Y_n^k, returned as the complex
/// combination (1/sin(theta)) dY/dphi + i dY/dtheta. Closed-form recurrences
/// for the associated Legendre derivative and quotient keep both components
/// finite at the poles; no numerical differentiation is involved.
std::complex<double> h_op_ylm(int n, int k, double theta, double phi);

/// Surface operator K w = (1/sin(theta)) (d/dtheta (sin(theta) w) + i dw/dphi)
/// applied to a user-supplied smooth function by central differences.
/// Requires theta bounded away from the poles; `step` is the nominal
/// differencing step (shrunk automatically near the poles).
std::complex<double> k_op(const std::function<std::complex<double>(double, double)>& w,
                          double theta, double phi, double step = 1e-5);

/// Fully normalized associated Legendre function Pbar_n^m(cos theta) without
/// the Condon-Shortley phase; the spherical harmonics above are built from it.
double legendre_norm(int n, int m, double theta);

}  // namespace ballmodes::specfun
