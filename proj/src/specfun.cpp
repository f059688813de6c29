#include "ballmodes/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballmodes/geometry.hpp"
#include "gauss.hpp"
#include "radial_detail.hpp"

namespace ballmodes::specfun {

namespace {

void check_degree(int n, int lo) {
    if (n < lo || n > kMaxDegree)
        throw std::invalid_argument("bessel degree out of range: n=" + std::to_string(n));
}

void check_argument(double z) {
    if (!std::isfinite(z) || z <= 0.0)
        throw std::invalid_argument("bessel argument must be finite and positive");
}

/// Fill out[0..n] with j_0(z)..j_n(z), z > 0.
/// Above the turning point (z >= n) the three-term recurrence is run upward
/// from the closed forms for j_0, j_1. Below it the recurrence is unstable
/// upward, so Miller's algorithm recurs downward from a surrogate start well
/// above n and normalizes against j_0 (or j_1 when j_0 sits near a zero).
void psi_all(int n, double z, double* out) {
    const double sz = std::sin(z), cz = std::cos(z);
    const double j0 = sz / z;
    if (n == 0) {
        out[0] = j0;
        return;
    }
    const double j1 = sz / (z * z) - cz / z;
    if (z >= n) {
        out[0] = j0;
        out[1] = j1;
        for (int k = 1; k < n; ++k)
            out[k + 1] = (2.0 * k + 1.0) / z * out[k] - out[k - 1];
        return;
    }

    const int start = n + 20 + static_cast<int>(std::ceil(std::sqrt(40.0 * (n + 1))));
    double above = 0.0;      // surrogate j_{k+1}
    double current = 1e-30;  // surrogate j_k
    for (int k = start; k > 0; --k) {
        const double below = (2.0 * k + 1.0) / z * current - above;
        above = current;
        current = below;
        if (k - 1 <= n) out[k - 1] = current;
        if (std::abs(current) > 1e250) {
            above *= 1e-250;
            current *= 1e-250;
            // Entries out[k-1..n] are the ones already written.
            for (int i = std::max(k - 1, 0); i <= n; ++i) out[i] *= 1e-250;
        }
    }
    // Normalize against whichever closed form is better conditioned (j_0 sits
    // near a zero whenever z is close to a multiple of pi).
    const bool prefer0 = std::abs(j0) >= std::abs(j1);
    double scale;
    if (prefer0 && out[0] != 0.0)
        scale = j0 / out[0];
    else if (out[1] != 0.0)
        scale = j1 / out[1];
    else
        scale = j0 / out[0];
    for (int k = 0; k <= n; ++k) out[k] *= scale;
}

double double_factorial_odd(int n) {  // (2n+1)!!
    double v = 1.0;
    for (int i = 3; i <= 2 * n + 1; i += 2) v *= i;
    return v;
}

/// Ascending series for j_n(x)/x and j_n'(x) at |x| << 1 (four terms, good to
/// full precision below |x| ~ 1e-2). Handles signed x.
void psi_series(int n, double x, double& psi_over_x, double& prime) {
    const double x2 = x * x;
    if (n == 0) {
        // j_0(x)/x diverges at 0; degree-0 callers only use the derivative
        // there (the tangential part of a degree-0 field vanishes identically).
        psi_over_x = (x == 0.0) ? std::numeric_limits<double>::infinity()
                                : 1.0 / x - x / 6.0 + x * x2 / 120.0 - x2 * x2 * x / 5040.0;
        prime = -x / 3.0 * (1.0 - 0.1 * x2 + x2 * x2 / 280.0);  // j_0' = -j_1
        return;
    }
    const double dfac = double_factorial_odd(n);
    const double y = -0.5 * x2;
    double ck = 1.0, s_val = 1.0, s_der = static_cast<double>(n);
    for (int k = 1; k <= 4; ++k) {
        ck *= y / (k * (2.0 * n + 2.0 * k + 1.0));
        s_val += ck;
        s_der += (n + 2.0 * k) * ck;
    }
    const double lead = std::pow(std::abs(x), n - 1);  // pow(0, 0) == 1
    double pox = lead * s_val / dfac;  // j_n(|x|)/|x|
    double der = lead * s_der / dfac;  // j_n'(|x|)
    if (x < 0.0 && n % 2 == 0) {
        pox = -pox;
        der = -der;
    }
    psi_over_x = pox;
    prime = der;
}

struct Gauss16 {
    std::vector<double> nodes, weights;
    Gauss16() { ballmodes::detail::gauss_legendre_impl(16, nodes, weights); }
};

const Gauss16& gauss16() {
    static const Gauss16 g;
    return g;
}

}  // namespace

double psi(int n, double z) {
    check_degree(n, 0);
    check_argument(z);
    std::array<double, kMaxDegree + 1> buf;
    psi_all(n, z, buf.data());
    return buf[n];
}

double psi_prime(int n, double z) {
    check_degree(n, 0);
    check_argument(z);
    if (n == 0) {
        std::array<double, 2> buf;
        psi_all(1, z, buf.data());
        return -buf[1];
    }
    std::array<double, kMaxDegree + 1> buf;
    psi_all(n, z, buf.data());
    return buf[n - 1] - (n + 1.0) / z * buf[n];
}

void psi_and_prime(int n, double z, double* value, double* derivative) {
    check_degree(n, 0);
    check_argument(z);
    if (n == 0) {
        std::array<double, 2> buf;
        psi_all(1, z, buf.data());
        *value = std::sin(z) / z;
        *derivative = -buf[1];
        return;
    }
    std::array<double, kMaxDegree + 1> buf;
    psi_all(n, z, buf.data());
    *value = buf[n];
    *derivative = buf[n - 1] - (n + 1.0) / z * buf[n];
}

std::complex<double> phi(int n, double lambda, double r) {
    check_degree(n, 1);
    if (!std::isfinite(lambda) || lambda == 0.0)
        throw std::invalid_argument("phi: lambda must be finite and nonzero");
    if (!std::isfinite(r) || r < 0.0)
        throw std::invalid_argument("phi: r must be finite and nonnegative");
    if (r == 0.0) return {0.0, 0.0};

    const double mu = std::abs(lambda);
    const auto& g = gauss16();

    // I = integral_0^r exp(-i mu t) j_n(mu t)/t dt over dyadic shells
    // [r 2^{-j-1}, r 2^{-j}]; each shell is split so no subpanel spans more
    // than ~2 radians of phase. Refinement towards 0 stops once a shell's
    // contribution falls below the 1e-12 agreement threshold.
    std::complex<double> acc{0.0, 0.0};
    double hi = r;
    for (int level = 0; level < 1080; ++level) {
        const double lo = 0.5 * hi;
        const double len = hi - lo;
        int panels = static_cast<int>(std::ceil(mu * len / 2.0));
        if (panels < 1) panels = 1;
        if (panels > 65536) panels = 65536;
        std::complex<double> shell{0.0, 0.0};
        for (int p = 0; p < panels; ++p) {
            const double a = lo + len * p / panels;
            const double b = lo + len * (p + 1) / panels;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int q = 0; q < 16; ++q) {
                const double t = mid + half * g.nodes[q];
                shell += (half * g.weights[q]) * std::polar(1.0, -mu * t) * psi(n, mu * t) / t;
            }
        }
        acc += shell;
        hi = lo;
        if (level >= 2 && std::abs(shell) < 2.5e-13) break;
    }
    std::complex<double> result = std::polar(1.0, mu * r) * acc;
    if (lambda < 0.0) {
        result = std::conj(result);
        if (n % 2 == 1) result = -result;
    }
    return result;
}

std::complex<double> phi_closed(int n, double lambda, double r) {
    check_degree(n, 1);
    if (!std::isfinite(lambda) || lambda == 0.0)
        throw std::invalid_argument("phi_closed: lambda must be finite and nonzero");
    if (!std::isfinite(r) || r < 0.0)
        throw std::invalid_argument("phi_closed: r must be finite and nonnegative");
    const double x = lambda * r;
    return x * detail::phi_over_x(n, x);
}

namespace {

void check_angles(double theta) {
    if (!std::isfinite(theta) || theta < -1e-12 || theta > kPi + 1e-12)
        throw std::invalid_argument("theta must lie in [0, pi]");
}

/// Pbar_n^m(cos theta) from the stable normalized recurrences; m > n gives 0.
double legendre_norm_ct(int n, int m, double ct, double st) {
    if (m > n) return 0.0;
    double pmm = 1.0 / std::sqrt(4.0 * kPi);
    for (int i = 1; i <= m; ++i) pmm *= st * std::sqrt((2.0 * i + 1.0) / (2.0 * i));
    if (n == m) return pmm;
    double prev = pmm;
    double curr = std::sqrt(2.0 * m + 3.0) * ct * pmm;
    for (int l = m + 2; l <= n; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        const double next = a * (ct * curr - b * prev);
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace

double legendre_norm(int n, int m, double theta) {
    check_degree(n, 0);
    if (m < 0 || m > n) throw std::invalid_argument("legendre_norm: need 0 <= m <= n");
    check_angles(theta);
    const double ct = std::cos(theta);
    const double st = std::max(0.0, std::sin(theta));
    return legendre_norm_ct(n, m, ct, st);
}

double ylm(int n, int k, double theta, double phi_angle) {
    check_degree(n, 0);
    if (std::abs(k) > n) throw std::invalid_argument("ylm: need |k| <= n");
    check_angles(theta);
    if (!std::isfinite(phi_angle)) throw std::invalid_argument("ylm: phi must be finite");
    const int m = std::abs(k);
    const double ct = std::cos(theta);
    const double st = std::max(0.0, std::sin(theta));
    const double p = legendre_norm_ct(n, m, ct, st);
    if (k == 0) return p;
    const double sq2 = std::sqrt(2.0);
    return (k > 0) ? sq2 * p * std::cos(m * phi_angle) : sq2 * p * std::sin(m * phi_angle);
}

std::complex<double> h_op_ylm(int n, int k, double theta, double phi_angle) {
    check_degree(n, 0);
    if (std::abs(k) > n) throw std::invalid_argument("h_op_ylm: need |k| <= n");
    check_angles(theta);
    if (!std::isfinite(phi_angle)) throw std::invalid_argument("h_op_ylm: phi must be finite");
    const int m = std::abs(k);
    const double ct = std::cos(theta);
    const double st = std::max(0.0, std::sin(theta));

    // dPbar_n^m/dtheta by the normalized ladder identity.
    double dP;
    if (m == 0)
        dP = (n == 0) ? 0.0 : -std::sqrt(n * (n + 1.0)) * legendre_norm_ct(n, 1, ct, st);
    else
        dP = 0.5 * (std::sqrt((n + m) * (n - m + 1.0)) * legendre_norm_ct(n, m - 1, ct, st) -
                    std::sqrt((n - m) * (n + m + 1.0)) * legendre_norm_ct(n, m + 1, ct, st));

    // Pbar_n^m / sin(theta) by the degree-lowering identity (pole-safe).
    double quot = 0.0;
    if (m >= 1) {
        const double f = std::sqrt((2.0 * n + 1.0) / (2.0 * n - 1.0)) / (2.0 * m);
        quot = f * (std::sqrt((n - m) * (n - m - 1.0)) * legendre_norm_ct(n - 1, m + 1, ct, st) +
                    std::sqrt((n + m) * (n + m - 1.0)) * legendre_norm_ct(n - 1, m - 1, ct, st));
    }

    const double sq2 = std::sqrt(2.0);
    double d_theta, d_phi_over_sin;
    if (k == 0) {
        d_theta = dP;
        d_phi_over_sin = 0.0;
    } else if (k > 0) {
        d_theta = sq2 * dP * std::cos(m * phi_angle);
        d_phi_over_sin = -m * sq2 * quot * std::sin(m * phi_angle);
    } else {
        d_theta = sq2 * dP * std::sin(m * phi_angle);
        d_phi_over_sin = m * sq2 * quot * std::cos(m * phi_angle);
    }
    return {d_phi_over_sin, d_theta};
}

std::complex<double> k_op(const std::function<std::complex<double>(double, double)>& w,
                          double theta, double phi_angle, double step) {
    if (!std::isfinite(theta) || !std::isfinite(phi_angle))
        throw std::invalid_argument("k_op: angles must be finite");
    if (!(step > 0.0)) throw std::invalid_argument("k_op: step must be positive");
    const double margin = std::min(theta, kPi - theta);
    double h = step;
    if (margin < 2.0 * h) h = 0.25 * margin;
    if (!(h > 1e-9)) throw std::domain_error("k_op: theta too close to a pole");
    const double st = std::sin(theta);
    const auto g = [&](double t) { return std::sin(t) * w(t, phi_angle); };
    const std::complex<double> d_theta = (g(theta + h) - g(theta - h)) / (2.0 * h);
    const std::complex<double> d_phi = (w(theta, phi_angle + h) - w(theta, phi_angle - h)) / (2.0 * h);
    return (d_theta + std::complex<double>(0.0, 1.0) * d_phi) / st;
}

namespace detail {

void psi_ratio_and_prime(int n, double x, double& psi_over_x, double& prime) {
    const double ax = std::abs(x);
    if (ax < 1e-3) {
        psi_series(n, x, psi_over_x, prime);
        return;
    }
    double ps, pp;
    psi_and_prime(n, ax, &ps, &pp);
    // j_n(x)/x and j_n'(x) share the parity factor (-1)^{n+1}.
    const double sign = (x < 0.0 && n % 2 == 0) ? -1.0 : 1.0;
    psi_over_x = sign * ps / ax;
    prime = sign * pp;
}

std::complex<double> phi_over_x(int n, double x) {
    double pox, der;
    psi_ratio_and_prime(n, x, pox, der);
    // phi_n(x)/x = (j_n(x)/x + j_n'(x) + i j_n(x)) / (n (n+1)).
    return std::complex<double>(pox + der, x * pox) / (n * (n + 1.0));
}

}  // namespace detail

}  // namespace ballmodes::specfun
