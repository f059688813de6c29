#include "ballmodes/modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ballmodes/roots.hpp"
#include "ballmodes/specfun.hpp"
#include "gauss.hpp"
#include "radial_detail.hpp"

namespace ballmodes::modes {

namespace {

void check_radius(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("radius must be positive and finite");
}

void check_point(const SphericalPoint& p, double radius) {
    if (!std::isfinite(p.r) || !std::isfinite(p.theta) || !std::isfinite(p.phi))
        throw std::invalid_argument("evaluation point must be finite");
    if (p.r < 0.0 || p.r > radius * (1.0 + 1e-12))
        throw std::domain_error("evaluation point lies outside the ball");
    if (p.theta < -1e-12 || p.theta > kPi + 1e-12)
        throw std::domain_error("theta must lie in [0, pi]");
}

int family_rank(Family f) {
    switch (f) {
        case Family::CurlPlus: return 0;
        case Family::CurlMinus: return 1;
        case Family::GradDiv: return 2;
    }
    return 3;
}

/// Ordering used by enumerate: |eigenvalue| first, then (n, m, k, family).
bool mode_less(const Mode& a, const Mode& b) {
    const double ea = std::abs(a.eigenvalue), eb = std::abs(b.eigenvalue);
    if (ea != eb) return ea < eb;
    return std::make_tuple(a.index.n, a.index.m, a.index.k, family_rank(a.index.family)) <
           std::make_tuple(b.index.n, b.index.m, b.index.k, family_rank(b.index.family));
}

/// Memoized radial normalization integrals, keyed by family class (curl vs
/// graddiv), degree, radial index and radius. The azimuthal index never
/// enters: the angular factors integrate to 1 and n(n+1) by orthonormality.
double norm_constant_impl(bool curl, int n, int m, double radius) {
    static std::map<std::tuple<int, int, int, double>, double> cache;
    static std::mutex mutex;
    const auto key = std::make_tuple(curl ? 0 : 1, n, m, radius);
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double root = curl ? roots::rho(n, m) : roots::alpha(n, m);
    const double scale = root / radius;  // lambda for curl, nu for graddiv
    const int n_nodes = 64 + 4 * static_cast<int>(std::ceil(root));
    std::vector<double> nodes, weights;
    ballmodes::detail::gauss_legendre_impl(n_nodes, nodes, weights);

    double integral = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const double r = 0.5 * radius * (nodes[i] + 1.0);
        const double w = 0.5 * radius * weights[i];
        const double x = scale * r;
        if (curl) {
            // |q|^2 collapses to int_0^R [ j_n^2 + n(n+1) |phi_n|^2 ] dr.
            const double ps = specfun::psi(n, x);
            const std::complex<double> ph = x * specfun::detail::phi_over_x(n, x);
            integral += w * (ps * ps + n * (n + 1.0) * std::norm(ph));
        } else {
            // int_0^R [ nu^2 j_n'(nu r)^2 r^2 + n(n+1) j_n(nu r)^2 ] dr.
            double ps, pp;
            if (x == 0.0) {
                ps = (n == 0) ? 1.0 : 0.0;
                pp = (n == 1) ? 1.0 / 3.0 : 0.0;
            } else {
                specfun::psi_and_prime(n, x, &ps, &pp);
            }
            integral += w * (scale * scale * pp * pp * r * r + n * (n + 1.0) * ps * ps);
        }
    }
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw std::runtime_error("normalization quadrature failed for n=" + std::to_string(n) +
                                 " m=" + std::to_string(m));
    const double c = 1.0 / std::sqrt(integral);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, c);
    return c;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::CurlPlus: return "curl+";
        case Family::CurlMinus: return "curl-";
        case Family::GradDiv: return "graddiv";
    }
    throw std::invalid_argument("unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "curl+") return Family::CurlPlus;
    if (name == "curl-") return Family::CurlMinus;
    if (name == "graddiv") return Family::GradDiv;
    throw std::invalid_argument("unknown family name: " + name);
}

bool is_valid(const ModeIndex& idx) {
    if (idx.n < 0 || idx.n > roots::kMaxDegree) return false;
    if (idx.m < 1 || idx.m > roots::kMaxIndex) return false;
    if (std::abs(idx.k) > idx.n) return false;
    if (idx.family != Family::GradDiv && idx.n < 1) return false;
    return true;
}

void require_valid(const ModeIndex& idx) {
    if (!is_valid(idx))
        throw std::invalid_argument("invalid mode index: family=" + family_name(idx.family) +
                                    " n=" + std::to_string(idx.n) + " m=" + std::to_string(idx.m) +
                                    " k=" + std::to_string(idx.k));
}

Mode make_mode(const ModeIndex& idx, double radius) {
    require_valid(idx);
    check_radius(radius);
    Mode mode;
    mode.index = idx;
    mode.radius = radius;
    mode.eigenvalue = eigenvalue_of(idx, radius);
    mode.normalization = normalization_constant(idx, radius);
    return mode;
}

double eigenvalue_of(const ModeIndex& idx, double radius) {
    require_valid(idx);
    check_radius(radius);
    switch (idx.family) {
        case Family::CurlPlus: return roots::rho(idx.n, idx.m) / radius;
        case Family::CurlMinus: return -roots::rho(idx.n, idx.m) / radius;
        case Family::GradDiv: {
            const double nu = roots::alpha(idx.n, idx.m) / radius;
            return -nu * nu;
        }
    }
    throw std::invalid_argument("unknown family");
}

double normalization_constant(const ModeIndex& idx, double radius) {
    require_valid(idx);
    check_radius(radius);
    return norm_constant_impl(idx.family != Family::GradDiv, idx.n, idx.m, radius);
}

VectorValue eval_curl_mode(const Mode& mode, const SphericalPoint& p) {
    if (mode.index.family == Family::GradDiv)
        throw std::invalid_argument("eval_curl_mode: mode is not a curl mode");
    require_valid(mode.index);
    check_point(p, mode.radius);
    const int n = mode.index.n, k = mode.index.k;
    const double lambda = mode.eigenvalue;
    const double x = lambda * p.r;

    double psi_over_x, psi_der;
    specfun::detail::psi_ratio_and_prime(n, x, psi_over_x, psi_der);
    const std::complex<double> phi_over_x = specfun::detail::phi_over_x(n, x);

    const double y = specfun::ylm(n, k, p.theta, p.phi);
    const std::complex<double> hy = specfun::h_op_ylm(n, k, p.theta, p.phi);

    // u_r = c j_n(lambda r)/r Y; (u_phi + i u_theta) = c phi_n(lambda r)/r HY.
    const double c = mode.normalization * lambda;
    const std::complex<double> w = c * phi_over_x * hy;
    return {c * psi_over_x * y, w.imag(), w.real()};
}

VectorValue eval_graddiv_mode(const Mode& mode, const SphericalPoint& p) {
    if (mode.index.family != Family::GradDiv)
        throw std::invalid_argument("eval_graddiv_mode: mode is not a graddiv mode");
    require_valid(mode.index);
    check_point(p, mode.radius);
    const int n = mode.index.n, k = mode.index.k;
    const double nu = std::sqrt(-mode.eigenvalue);
    const double x = nu * p.r;

    double psi_over_x, psi_der;
    specfun::detail::psi_ratio_and_prime(n, x, psi_over_x, psi_der);
    const double y = specfun::ylm(n, k, p.theta, p.phi);

    // v = grad(c j_n(nu r) Y): radial part c nu j_n', tangential c j_n/r HY.
    const double c = mode.normalization * nu;
    VectorValue out{c * psi_der * y, 0.0, 0.0};
    if (n > 0) {
        const std::complex<double> hy = specfun::h_op_ylm(n, k, p.theta, p.phi);
        const std::complex<double> w = c * psi_over_x * hy;
        out.u_theta = w.imag();
        out.u_phi = w.real();
    }
    return out;
}

VectorValue eval_mode(const Mode& mode, const SphericalPoint& p) {
    return mode.index.family == Family::GradDiv ? eval_graddiv_mode(mode, p)
                                                : eval_curl_mode(mode, p);
}

FieldEvaluator make_evaluator(const Mode& mode) {
    return [mode](const SphericalPoint& p) { return eval_mode(mode, p); };
}

std::vector<Mode> enumerate_up_to(const std::vector<Family>& families, double cutoff,
                                  double radius) {
    check_radius(radius);
    if (!std::isfinite(cutoff)) throw std::invalid_argument("enumerate: cutoff must be finite");
    std::vector<Family> fams = families;
    std::sort(fams.begin(), fams.end(),
              [](Family a, Family b) { return family_rank(a) < family_rank(b); });
    fams.erase(std::unique(fams.begin(), fams.end()), fams.end());

    std::vector<Mode> out;
    auto push_shell = [&](Family f, int n, int m, double eig) {
        for (int k = -n; k <= n; ++k) {
            Mode mode;
            mode.index = {f, n, m, k};
            mode.radius = radius;
            mode.eigenvalue = eig;
            mode.normalization = normalization_constant(mode.index, radius);
            out.push_back(mode);
        }
    };

    for (Family f : fams) {
        if (f == Family::GradDiv) {
            // alpha_{n,1} is increasing only from n = 1 on (alpha_{0,1} sits
            // higher), so always inspect n = 0 and n = 1 before cutting off.
            for (int n = 0;; ++n) {
                if (n > roots::kMaxDegree)
                    throw std::out_of_range("enumerate: cutoff exceeds the tabulated degrees");
                const double first = roots::alpha(n, 1) / radius;
                if (n >= 2 && first * first > cutoff) break;
                for (int m = 1; m <= roots::kMaxIndex; ++m) {
                    const double nu = roots::alpha(n, m) / radius;
                    const double mag = nu * nu;
                    if (mag > cutoff) break;
                    if (m == roots::kMaxIndex)
                        throw std::out_of_range("enumerate: cutoff exceeds the tabulated spectrum");
                    push_shell(f, n, m, -mag);
                }
            }
        } else {
            for (int n = 1;; ++n) {
                if (n > roots::kMaxDegree)
                    throw std::out_of_range("enumerate: cutoff exceeds the tabulated degrees");
                if (roots::rho(n, 1) / radius > cutoff) break;
                for (int m = 1; m <= roots::kMaxIndex; ++m) {
                    const double lam = roots::rho(n, m) / radius;
                    if (lam > cutoff) break;
                    if (m == roots::kMaxIndex)
                        throw std::out_of_range("enumerate: cutoff exceeds the tabulated spectrum");
                    push_shell(f, n, m, f == Family::CurlPlus ? lam : -lam);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), mode_less);
    return out;
}

std::vector<Mode> enumerate_first(const std::vector<Family>& families, int count, double radius) {
    check_radius(radius);
    if (count < 0) throw std::invalid_argument("enumerate: count must be nonnegative");
    if (count == 0 || families.empty()) return {};

    double cutoff = 0.0;
    for (Family f : families) {
        const double low = (f == Family::GradDiv)
                               ? std::pow(roots::alpha(1, 1) / radius, 2)
                               : roots::rho(1, 1) / radius;
        cutoff = (cutoff == 0.0) ? low : std::min(cutoff, low);
    }
    cutoff *= 2.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<Mode> modes = enumerate_up_to(families, cutoff, radius);
        if (static_cast<int>(modes.size()) >= count) {
            modes.resize(count);
            return modes;
        }
        cutoff *= 2.0;
    }
    throw std::out_of_range("enumerate: requested more modes than the tabulated spectrum holds");
}

VectorValue synthesize(const SpectralField& field, const SphericalPoint& p) {
    VectorValue acc;
    for (const auto& [idx, c] : field.coefficients) {
        const Mode mode = make_mode(idx, field.radius);
        acc = acc + c * eval_mode(mode, p);
    }
    return acc;
}

FieldEvaluator make_evaluator(const SpectralField& field) {
    auto modes = std::make_shared<std::vector<std::pair<double, Mode>>>();
    modes->reserve(field.coefficients.size());
    for (const auto& [idx, c] : field.coefficients)
        modes->emplace_back(c, make_mode(idx, field.radius));
    return [modes](const SphericalPoint& p) {
        VectorValue acc;
        for (const auto& [c, mode] : *modes) acc = acc + c * eval_mode(mode, p);
        return acc;
    };
}

}  // namespace ballmodes::modes
