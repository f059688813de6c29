#pragma once

#include <complex>

namespace ballmodes::specfun::detail {

/// j_n(x)/x and j_n'(x) for signed x, safe through x = 0 (ascending series
/// below |x| = 1e-3, recurrence engine above). Both pick up the same parity
/// factor (-1)^{n+1} for negative arguments.
void psi_ratio_and_prime(int n, double x, double& psi_over_x, double& prime);

/// phi_n(x)/x for signed x via the closed form, safe through x = 0.
std::complex<double> phi_over_x(int n, double x);

}  // namespace ballmodes::specfun::detail
