#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ballmodes/modes.hpp"

namespace ballmodes::solve {

/// Outcome of a resolvent application or boundary-value solve.
/// Invariants: solvable == violated_conditions.empty();
/// resonant == !kernel_basis.empty(); when not solvable the solution field is
/// empty; when resonant and solvable the returned solution is the minimal-norm
/// one (zero component along the kernel).
struct SolveReport {
    bool solvable = true;
    bool resonant = false;
    std::optional<double> resonant_eigenvalue;  // spectrum point that was hit
    std::vector<modes::ModeIndex> violated_conditions;
    std::vector<modes::ModeIndex> kernel_basis;
    double residual_norm = 0.0;  // l2 coefficient residual of the returned solution
    modes::SpectralField solution;
};

/// Default spectral-collision tolerance.
double default_eps_spec(double lambda);

/// Apply (S + lambda I)^{-1} to a curl-supported field: coefficients divide by
/// (eigenvalue_j + lambda). If lambda collides with a point of the spectrum of
/// -S (within eps_spec), the hit eigenspace is reported as kernel_basis and
/// the Fredholm conditions (f, q) = 0 are checked on it.
SolveReport resolvent_curl(const modes::SpectralField& f, double lambda,
                           std::optional<double> eps_spec = std::nullopt);

/// Apply (N + lambda I)^{-1} to a graddiv-supported field, N = grad div with
/// eigenvalues -nu_j^2. Resonance happens at lambda = nu_j^2.
SolveReport resolvent_graddiv(const modes::SpectralField& f, double lambda,
                              std::optional<double> eps_spec = std::nullopt);

/// rot u + lambda u = f with u_r = 0 on the boundary. The graddiv part scales
/// by 1/lambda, the curl part goes through (S + lambda I)^{-1}. lambda != 0.
SolveReport solve_problem1(const modes::SpectralField& f, double lambda,
                           std::optional<double> eps_spec = std::nullopt);

/// grad div w + lambda w = f with div w = 0 on the boundary. The curl part
/// scales by 1/lambda, the graddiv part goes through (N + lambda I)^{-1}.
/// lambda != 0.
SolveReport solve_problem2(const modes::SpectralField& f, double lambda,
                           std::optional<double> eps_spec = std::nullopt);

/// grad div u + rot u + lambda u = f with both boundary conditions; both parts
/// go through their resolvents. lambda = 0 is allowed (zero is in neither
/// spectrum).
SolveReport solve_problem3(const modes::SpectralField& f, double lambda,
                           std::optional<double> eps_spec = std::nullopt);

/// Residual diagnostics for a reported solution: first the coefficient-space
/// relative residual of the diagonal system, then a finite-difference check of
/// the differential equation at `samples` random interior points (relative to
/// the rhs magnitude). problem is 1, 2 or 3.
std::pair<double, double> residual_check(const modes::SpectralField& u,
                                         const modes::SpectralField& f,
                                         double lambda, int problem,
                                         int samples = 20, unsigned seed = 1234);

nlohmann::json to_json(const SolveReport& report);

}  // namespace ballmodes::solve
