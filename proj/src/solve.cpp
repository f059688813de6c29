#include "ballmodes/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "ballmodes/fd.hpp"
#include "ballmodes/rng.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/spectral.hpp"

namespace ballmodes::solve {

namespace {

using modes::Family;
using modes::ModeIndex;
using modes::SpectralField;

double coefficient_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const auto& [idx, c] : f.coefficients) acc += c * c;
    return std::sqrt(acc);
}

/// All (n, m) with rho_{n,m}/R inside [target - eps, target + eps].
std::vector<std::pair<int, int>> curl_shells_near(double target, double radius, double eps) {
    std::vector<std::pair<int, int>> hits;
    if (target + eps < roots::rho(1, 1) / radius) return hits;
    for (int n = 1; n <= roots::kMaxDegree; ++n) {
        if (roots::rho(n, 1) / radius > target + eps) break;
        for (int m = 1; m <= roots::kMaxIndex; ++m) {
            const double v = roots::rho(n, m) / radius;
            if (v > target + eps) break;
            if (std::abs(v - target) <= eps) hits.emplace_back(n, m);
            if (m == roots::kMaxIndex)
                throw std::out_of_range("resolvent: lambda beyond the tabulated spectrum");
        }
    }
    return hits;
}

/// All (n, m) with (alpha_{n,m}/R)^2 inside [target - eps, target + eps].
std::vector<std::pair<int, int>> graddiv_shells_near(double target, double radius, double eps) {
    std::vector<std::pair<int, int>> hits;
    if (target + eps <= 0.0) return hits;
    for (int n = 0; n <= roots::kMaxDegree; ++n) {
        const double first = std::pow(roots::alpha(n, 1) / radius, 2);
        if (n >= 2 && first > target + eps) break;
        for (int m = 1; m <= roots::kMaxIndex; ++m) {
            const double nu = roots::alpha(n, m) / radius;
            const double v = nu * nu;
            if (v > target + eps) break;
            if (std::abs(v - target) <= eps) hits.emplace_back(n, m);
            if (m == roots::kMaxIndex)
                throw std::out_of_range("resolvent: lambda beyond the tabulated spectrum");
        }
    }
    return hits;
}

/// Diagonal resolvent (Op + lambda I)^{-1} with Fredholm handling. `op`
/// selects which eigenbasis the input must live on and which spectrum is
/// scanned for collisions.
SolveReport resolvent_diagonal(const SpectralField& f, double lambda, double eps,
                               spectral::Operator op) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("resolvent: lambda must be finite");
    if (!(eps >= 0.0)) throw std::invalid_argument("resolvent: eps_spec must be nonnegative");
    for (const auto& [idx, c] : f.coefficients) {
        if (!spectral::family_matches(idx.family, op))
            throw std::invalid_argument("resolvent: field holds a " +
                                        modes::family_name(idx.family) + " mode outside the " +
                                        spectral::operator_name(op) + " eigenbasis");
    }

    SolveReport report;
    report.solution.radius = f.radius;

    // Kernel of (Op + lambda I): operator eigenvalues e with |e + lambda| <= eps.
    if (op == spectral::Operator::Curl) {
        // e = -rho/R needs rho/R near +lambda; e = +rho/R needs rho/R near -lambda.
        for (const auto& [n, m] : curl_shells_near(lambda, f.radius, eps))
            for (int k = -n; k <= n; ++k)
                report.kernel_basis.push_back({Family::CurlMinus, n, m, k});
        for (const auto& [n, m] : curl_shells_near(-lambda, f.radius, eps))
            for (int k = -n; k <= n; ++k)
                report.kernel_basis.push_back({Family::CurlPlus, n, m, k});
    } else {
        // e = -nu^2 needs nu^2 near +lambda.
        for (const auto& [n, m] : graddiv_shells_near(lambda, f.radius, eps))
            for (int k = -n; k <= n; ++k)
                report.kernel_basis.push_back({Family::GradDiv, n, m, k});
    }
    std::sort(report.kernel_basis.begin(), report.kernel_basis.end());
    report.resonant = !report.kernel_basis.empty();
    if (report.resonant) {
        // Report the nearest point of the resolvent's singular set.
        double best = std::numeric_limits<double>::infinity();
        for (const auto& idx : report.kernel_basis) {
            const double point = -modes::eigenvalue_of(idx, f.radius);
            if (std::abs(point - lambda) < std::abs(best - lambda)) best = point;
        }
        report.resonant_eigenvalue = best;
    }

    const double solvability_tol = eps * (1.0 + coefficient_norm(f));
    double residual_sq = 0.0;
    for (const auto& [idx, c] : f.coefficients) {
        const double e = modes::eigenvalue_of(idx, f.radius);
        const double divisor = e + lambda;
        if (std::abs(divisor) <= eps) {
            // Resonant direction: solvable only if the data has no component
            // here; the minimal-norm solution leaves the direction empty.
            if (std::abs(c) <= solvability_tol) {
                residual_sq += c * c;
            } else {
                report.violated_conditions.push_back(idx);
            }
        } else {
            const double u = c / divisor;
            report.solution.coefficients[idx] = u;
            const double r = divisor * u - c;
            residual_sq += r * r;
        }
    }
    report.solvable = report.violated_conditions.empty();
    if (!report.solvable) {
        report.solution.coefficients.clear();
        report.residual_norm = std::numeric_limits<double>::quiet_NaN();
    } else {
        report.residual_norm = std::sqrt(residual_sq);
    }
    return report;
}

/// Split a mixed field into its curl-supported and graddiv-supported parts.
void split(const SpectralField& f, SpectralField& curl_part, SpectralField& graddiv_part) {
    curl_part.radius = f.radius;
    graddiv_part.radius = f.radius;
    for (const auto& [idx, c] : f.coefficients) {
        if (idx.family == Family::GradDiv)
            graddiv_part.coefficients[idx] = c;
        else
            curl_part.coefficients[idx] = c;
    }
}

/// Merge a scaled identity solve (coefficients c / lambda) into a report.
void merge_scaled_part(SolveReport& report, const SpectralField& part, double lambda) {
    if (!report.solvable) return;
    double residual_sq = report.residual_norm * report.residual_norm;
    for (const auto& [idx, c] : part.coefficients) {
        const double u = c / lambda;
        report.solution.coefficients[idx] = u;
        const double r = lambda * u - c;
        residual_sq += r * r;
    }
    report.residual_norm = std::sqrt(residual_sq);
}

void merge_reports(SolveReport& into, SolveReport&& other) {
    into.resonant = into.resonant || other.resonant;
    if (!into.resonant_eigenvalue && other.resonant_eigenvalue)
        into.resonant_eigenvalue = other.resonant_eigenvalue;
    into.violated_conditions.insert(into.violated_conditions.end(),
                                    other.violated_conditions.begin(),
                                    other.violated_conditions.end());
    into.kernel_basis.insert(into.kernel_basis.end(), other.kernel_basis.begin(),
                             other.kernel_basis.end());
    std::sort(into.violated_conditions.begin(), into.violated_conditions.end());
    std::sort(into.kernel_basis.begin(), into.kernel_basis.end());
    const bool solvable = into.solvable && other.solvable;
    if (solvable) {
        double residual_sq = into.residual_norm * into.residual_norm +
                             other.residual_norm * other.residual_norm;
        for (const auto& [idx, c] : other.solution.coefficients)
            into.solution.coefficients[idx] = c;
        into.residual_norm = std::sqrt(residual_sq);
    } else {
        into.solution.coefficients.clear();
        into.residual_norm = std::numeric_limits<double>::quiet_NaN();
    }
    into.solvable = solvable;
}

double resolve_eps(std::optional<double> eps_spec, double lambda) {
    return eps_spec ? *eps_spec : default_eps_spec(lambda);
}

}  // namespace

double default_eps_spec(double lambda) { return 1e-9 * std::abs(lambda) + 1e-12; }

SolveReport resolvent_curl(const SpectralField& f, double lambda, std::optional<double> eps_spec) {
    return resolvent_diagonal(f, lambda, resolve_eps(eps_spec, lambda), spectral::Operator::Curl);
}

SolveReport resolvent_graddiv(const SpectralField& f, double lambda,
                              std::optional<double> eps_spec) {
    return resolvent_diagonal(f, lambda, resolve_eps(eps_spec, lambda),
                              spectral::Operator::GradDiv);
}

SolveReport solve_problem1(const SpectralField& f, double lambda,
                           std::optional<double> eps_spec) {
    if (lambda == 0.0)
        throw std::invalid_argument("problem 1 needs lambda != 0 (the potential part scales by 1/lambda)");
    SpectralField curl_part, graddiv_part;
    split(f, curl_part, graddiv_part);
    SolveReport report = resolvent_curl(curl_part, lambda, eps_spec);
    merge_scaled_part(report, graddiv_part, lambda);
    return report;
}

SolveReport solve_problem2(const SpectralField& f, double lambda,
                           std::optional<double> eps_spec) {
    if (lambda == 0.0)
        throw std::invalid_argument("problem 2 needs lambda != 0 (the solenoidal part scales by 1/lambda)");
    SpectralField curl_part, graddiv_part;
    split(f, curl_part, graddiv_part);
    SolveReport report = resolvent_graddiv(graddiv_part, lambda, eps_spec);
    merge_scaled_part(report, curl_part, lambda);
    return report;
}

SolveReport solve_problem3(const SpectralField& f, double lambda,
                           std::optional<double> eps_spec) {
    SpectralField curl_part, graddiv_part;
    split(f, curl_part, graddiv_part);
    SolveReport report = resolvent_curl(curl_part, lambda, eps_spec);
    merge_reports(report, resolvent_graddiv(graddiv_part, lambda, eps_spec));
    return report;
}

std::pair<double, double> residual_check(const SpectralField& u, const SpectralField& f,
                                         double lambda, int problem, int samples, unsigned seed) {
    if (problem < 1 || problem > 3) throw std::invalid_argument("residual_check: problem is 1..3");
    if (std::abs(u.radius - f.radius) > 1e-12 * f.radius)
        throw std::invalid_argument("residual_check: radius mismatch");

    // Coefficient-space residual of the diagonal system.
    auto factor = [&](const ModeIndex& idx) {
        const bool graddiv = idx.family == Family::GradDiv;
        const double e = modes::eigenvalue_of(idx, f.radius);
        switch (problem) {
            case 1: return graddiv ? lambda : e + lambda;
            case 2: return graddiv ? e + lambda : lambda;
            default: return e + lambda;
        }
    };
    std::map<ModeIndex, double> residuals;
    for (const auto& [idx, c] : u.coefficients) residuals[idx] += factor(idx) * c;
    for (const auto& [idx, c] : f.coefficients) residuals[idx] -= c;
    double res_sq = 0.0;
    for (const auto& [idx, r] : residuals) res_sq += r * r;
    const double f_norm = coefficient_norm(f);
    const double coef_residual = std::sqrt(res_sq) / std::max(f_norm, 1e-300);

    // Finite-difference check of the differential equation at random points.
    const CartesianField uc = make_cartesian_field(modes::make_evaluator(u));
    const CartesianField fc = make_cartesian_field(modes::make_evaluator(f));
    Rng rng(seed);
    const double h = 3e-3 * f.radius;
    double num_sq = 0.0, den_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const SphericalPoint sp{rng.uniform(0.15, 0.85) * f.radius,
                                rng.uniform(0.3, kPi - 0.3), rng.uniform(0.0, 2.0 * kPi)};
        const Vec3 x = to_cartesian(sp);
        Vec3 lhs = lambda * uc(x);
        if (problem == 1 || problem == 3) lhs = lhs + fd::curl(uc, x, h);
        if (problem == 2 || problem == 3) lhs = lhs + fd::grad_div(uc, x, h);
        const Vec3 rhs = fc(x);
        const Vec3 diff = lhs - rhs;
        num_sq += dot(diff, diff);
        den_sq += dot(rhs, rhs);
    }
    const double fd_residual = std::sqrt(num_sq) / std::max(std::sqrt(den_sq), 1e-300);
    return {coef_residual, fd_residual};
}

namespace {

nlohmann::json index_json(const ModeIndex& idx) {
    return {{"family", modes::family_name(idx.family)},
            {"n", idx.n},
            {"m", idx.m},
            {"k", idx.k}};
}

}  // namespace

nlohmann::json to_json(const SolveReport& report) {
    nlohmann::json j;
    j["solvable"] = report.solvable;
    j["resonant"] = report.resonant;
    if (report.resonant_eigenvalue)
        j["resonant_eigenvalue"] = *report.resonant_eigenvalue;
    else
        j["resonant_eigenvalue"] = nullptr;
    j["violated_conditions"] = nlohmann::json::array();
    for (const auto& idx : report.violated_conditions) j["violated_conditions"].push_back(index_json(idx));
    j["kernel_basis"] = nlohmann::json::array();
    for (const auto& idx : report.kernel_basis) j["kernel_basis"].push_back(index_json(idx));
    if (std::isnan(report.residual_norm))
        j["residual_norm"] = nullptr;
    else
        j["residual_norm"] = report.residual_norm;
    j["solution"] = spectral::to_json(report.solution);
    return j;
}

}  // namespace ballmodes::solve
