#include "ballmodes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ballmodes/fd.hpp"
#include "ballmodes/fieldio.hpp"
#include "ballmodes/geometry.hpp"
#include "ballmodes/modes.hpp"
#include "ballmodes/quad.hpp"
#include "ballmodes/rng.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/solve.hpp"
#include "ballmodes/specfun.hpp"
#include "ballmodes/spectral.hpp"

namespace ballmodes::verify {

namespace {

void add(SuiteResult& r, std::string name, double value, double limit) {
    const bool ok = std::isfinite(value) && value <= limit;
    r.checks.push_back({std::move(name), ok, value, limit});
}

// Boolean checks report 0 (ok) or 1 (failed) against a 0.5 limit.
void add_flag(SuiteResult& r, std::string name, bool ok) {
    r.checks.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.5});
}

SuiteResult suite_specfun(const Options& opt) {
    SuiteResult r;
    r.suite = "specfun";
    Rng rng(opt.seed);

    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(1, 40);
        const double z = rng.uniform(0.5, 60.0);
        const double lo = specfun::psi(n - 1, z);
        const double mid = specfun::psi(n, z);
        const double hi = specfun::psi(n + 1, z);
        const double scale = std::max({std::abs(lo), std::abs(mid), std::abs(hi), 1e-250});
        worst = std::max(worst, std::abs(lo + hi - (2.0 * n + 1.0) / z * mid) / scale);
    }
    add(r, "radial profile three-term recurrence", worst, 1e-10);

    worst = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const double lambda = 0.7 + 0.41 * n;
        const double rr = 0.8 * opt.radius;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> plus = specfun::phi_closed(n, lambda, rr);
        const std::complex<double> minus = specfun::phi_closed(n, -lambda, rr);
        worst = std::max(worst, std::abs(minus - sign * std::conj(plus)) /
                                    std::max(std::abs(plus), 1e-250));
    }
    add(r, "tangential profile parity under sign change", worst, 1e-14);

    worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 8);
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double lambda = sign * rng.uniform(0.5, 25.0);
        const double rr = rng.uniform(0.05, 1.0) * opt.radius;
        const std::complex<double> a = specfun::phi(n, lambda, rr);
        const std::complex<double> b = specfun::phi_closed(n, lambda, rr);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-30));
    }
    add(r, "tangential profile quadrature vs closed form", worst, 1e-9);

    worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const double theta = rng.uniform(0.1, kPi - 0.1);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        double sum = 0.0;
        for (int k = -n; k <= n; ++k) {
            const double y = specfun::ylm(n, k, theta, phi);
            sum += y * y;
        }
        const double expect = (2.0 * n + 1.0) / (4.0 * kPi);
        worst = std::max(worst, std::abs(sum - expect) / expect);
    }
    add(r, "spherical harmonic addition theorem", worst, 1e-12);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_roots(const Options&) {
    SuiteResult r;
    r.suite = "roots";

    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
        for (int m = 1; m <= 4; ++m)
            worst = std::max(worst, std::abs(specfun::psi(n, roots::rho(n, m))));
    add(r, "interior eigenvalue zero residual", worst, 1e-9);

    worst = 0.0;
    for (int n = 0; n <= 8; ++n)
        for (int m = 1; m <= 4; ++m)
            worst = std::max(worst, std::abs(specfun::psi_prime(n, roots::alpha(n, m))));
    add(r, "derivative zero residual", worst, 1e-9);

    worst = 0.0;
    for (int m = 1; m <= 8; ++m) worst = std::max(worst, std::abs(roots::rho(0, m) - m * kPi));
    add(r, "degree-zero zeros at multiples of pi", worst, 1e-11);

    double min_gap = 1e300;
    for (int n = 0; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            min_gap = std::min(min_gap, roots::rho(n, m + 1) - roots::rho(n, m));
            min_gap = std::min(min_gap, roots::rho(n + 1, m) - roots::rho(n, m));
            if (n >= 1) min_gap = std::min(min_gap, roots::rho(n, m) - roots::alpha(n, m));
        }
    add_flag(r, "zero tables strictly interlace", min_gap > 0.0);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_modes(const Options& opt) {
    SuiteResult r;
    r.suite = "modes";
    const double R = opt.radius;
    const auto basis = modes::enumerate_first(
        {modes::Family::CurlPlus, modes::Family::CurlMinus, modes::Family::GradDiv},
        opt.n_modes, R);
    Rng rng(opt.seed);
    const double h = 2e-3 * R;

    double worst_eig = 0.0, worst_complement = 0.0;
    for (const auto& mode : basis) {
        const CartesianField u = make_cartesian_field(modes::make_evaluator(mode));
        std::vector<Vec3> pts;
        double scale = 0.0;
        for (int s = 0; s < 5; ++s) {
            const SphericalPoint p{rng.uniform(0.25, 0.7) * R, rng.uniform(0.6, kPi - 0.6),
                                   rng.uniform(0.0, 2.0 * kPi)};
            pts.push_back(to_cartesian(p));
            scale = std::max(scale, norm(u(pts.back())));
        }
        scale = std::max(scale, 1e-3);
        const double e = mode.eigenvalue;
        const double mag = std::max(1.0, std::abs(e));
        for (const Vec3& x : pts) {
            const Vec3 value = u(x);
            if (mode.index.family == modes::Family::GradDiv) {
                worst_eig = std::max(
                    worst_eig, norm(fd::grad_div(u, x, h) - e * value) / (scale * mag));
                worst_complement =
                    std::max(worst_complement, norm(fd::curl(u, x, h)) / (scale * mag));
            } else {
                worst_eig =
                    std::max(worst_eig, norm(fd::curl(u, x, h) - e * value) / (scale * mag));
                worst_complement = std::max(
                    worst_complement, std::abs(fd::divergence(u, x, h)) / (scale * mag));
            }
        }
    }
    add(r, "eigen-equation residual (finite differences)", worst_eig, 1e-5);
    add(r, "complementary part vanishes (div / curl)", worst_complement, 1e-5);

    int max_n = 1, max_m = 1;
    for (const auto& mode : basis) {
        max_n = std::max(max_n, mode.index.n);
        max_m = std::max(max_m, mode.index.m);
    }
    int n_r = 0, n_theta = 0, n_phi = 0;
    quad::default_orders(max_n, max_m, n_r, n_theta, n_phi);
    const auto q = quad::build_ball_quadrature(n_r, n_theta, n_phi, R);
    double worst_norm = 0.0;
    for (std::size_t j = 0; j < basis.size(); j += std::max<std::size_t>(basis.size() / 3, 1)) {
        const auto f = modes::make_evaluator(basis[j]);
        worst_norm = std::max(worst_norm, std::abs(quad::inner_product(f, f, q) - 1.0));
    }
    add(r, "unit norm", worst_norm, 1e-8);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_orthonormality(const Options& opt) {
    SuiteResult r;
    r.suite = "orthonormality";
    const auto basis = modes::enumerate_first(
        {modes::Family::CurlPlus, modes::Family::CurlMinus, modes::Family::GradDiv},
        opt.n_modes, opt.radius);
    int max_n = 1, max_m = 1;
    for (const auto& mode : basis) {
        max_n = std::max(max_n, mode.index.n);
        max_m = std::max(max_m, mode.index.m);
    }
    int n_r = 0, n_theta = 0, n_phi = 0;
    quad::default_orders(max_n, max_m, n_r, n_theta, n_phi);
    const auto q = quad::build_ball_quadrature(n_r, n_theta, n_phi, opt.radius);
    const auto gram = quad::gram_matrix(basis, q);

    double worst_diag = 0.0, worst_off = 0.0;
    for (std::size_t i = 0; i < gram.size(); ++i)
        for (std::size_t j = 0; j < gram.size(); ++j) {
            if (i == j)
                worst_diag = std::max(worst_diag, std::abs(gram[i][j] - 1.0));
            else
                worst_off = std::max(worst_off, std::abs(gram[i][j]));
        }
    add(r, "Gram diagonal", worst_diag, 1e-8);
    add(r, "Gram off-diagonal", worst_off, 1e-8);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_quad(const Options& opt) {
    SuiteResult r;
    r.suite = "quad";
    const double R = opt.radius;
    const auto q = quad::build_ball_quadrature(24, 24, 48, R);

    const double volume = 4.0 * kPi * R * R * R / 3.0;
    add(r, "total weight equals ball volume", std::abs(q.total_weight() - volume) / volume,
        1e-13);

    // Integral of x^2 over the ball is 4 pi R^5 / 15.
    double acc = 0.0;
    for (std::size_t i = 0; i < q.r_nodes.size(); ++i)
        for (std::size_t j = 0; j < q.theta_nodes.size(); ++j) {
            const double st = std::sin(q.theta_nodes[j]);
            double phi_acc = 0.0;
            for (const double phi : q.phi_nodes) {
                const double x = q.r_nodes[i] * st * std::cos(phi);
                phi_acc += x * x;
            }
            acc += q.r_weights[i] * q.theta_weights[j] * q.phi_weight * phi_acc;
        }
    const double expect = 4.0 * kPi * std::pow(R, 5) / 15.0;
    add(r, "polynomial moment x^2", std::abs(acc - expect) / expect, 1e-13);

    const auto sq = quad::build_sphere_quadrature(24, 48);
    double worst = 0.0;
    const std::vector<std::pair<int, int>> set = {{0, 0}, {1, 1}, {2, -1}, {3, 2}, {4, 0}};
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a; b < set.size(); ++b) {
            double ip = 0.0;
            for (std::size_t j = 0; j < sq.theta_nodes.size(); ++j)
                for (const double phi : sq.phi_nodes)
                    ip += sq.theta_weights[j] * sq.phi_weight *
                          specfun::ylm(set[a].first, set[a].second, sq.theta_nodes[j], phi) *
                          specfun::ylm(set[b].first, set[b].second, sq.theta_nodes[j], phi);
            worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
        }
    add(r, "spherical harmonics orthonormal on the sphere", worst, 1e-12);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_spectral(const Options& opt) {
    SuiteResult r;
    r.suite = "spectral";
    const double R = opt.radius;
    Rng rng(opt.seed);

    const auto curls = modes::enumerate_first(
        {modes::Family::CurlPlus, modes::Family::CurlMinus}, 10, R);
    modes::SpectralField u;
    u.radius = R;
    for (const auto& mode : curls) u.coefficients[mode.index] = rng.uniform(-1.0, 1.0);

    const auto back =
        spectral::apply_power(spectral::apply_power(u, spectral::Operator::Curl, 3),
                              spectral::Operator::Curl, -3);
    double worst = 0.0;
    for (const auto& [idx, c] : u.coefficients)
        worst = std::max(worst, std::abs(back.coefficients.at(idx) - c));
    add(r, "operator power round trip", worst, 1e-13);

    double manual = 0.0;
    for (const auto& [idx, c] : u.coefficients) {
        const double mag = std::abs(modes::eigenvalue_of(idx, R));
        manual += c * c * mag * mag * mag * mag;
    }
    manual = std::sqrt(manual);
    const double reported = spectral::scale_norm(u, {spectral::Operator::Curl, 2});
    add(r, "scale norm matches direct sum", std::abs(reported - manual) / manual, 1e-13);

    const auto gds = modes::enumerate_first({modes::Family::GradDiv}, 8, R);
    modes::SpectralField w;
    w.radius = R;
    for (const auto& mode : gds) w.coefficients[mode.index] = rng.uniform(-1.0, 1.0);
    const auto rhs = spectral::apply_power(w, spectral::Operator::GradDiv, 2);
    const auto sol = spectral::solve_poly(rhs, spectral::Operator::GradDiv, 1);
    worst = 0.0;
    for (const auto& [idx, c] : w.coefficients)
        worst = std::max(worst, std::abs(sol.coefficients.at(idx) - c));
    add(r, "polyharmonic solve round trip", worst, 1e-13);

    modes::SpectralField mixed;
    mixed.radius = R;
    for (const auto& [idx, c] : u.coefficients) mixed.coefficients[idx] = c;
    for (const auto& [idx, c] : w.coefficients) mixed.coefficients[idx] = c;
    const auto report = spectral::class_report(mixed, {1, 2});
    const double a_norm = spectral::scale_norm(mixed, {spectral::Operator::GradDiv, 2});
    const double w_norm = spectral::scale_norm(mixed, {spectral::Operator::Curl, 2});
    const double drift = std::max(std::abs(report.graddiv_norm - a_norm),
                                  std::abs(report.curl_norm - w_norm));
    add(r, "class report consistent with scale norms", drift, 1e-13);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_solve(const Options& opt) {
    SuiteResult r;
    r.suite = "solve";
    const double R = opt.radius;

    const auto curls = modes::enumerate_first(
        {modes::Family::CurlPlus, modes::Family::CurlMinus}, 8, R);
    modes::SpectralField f;
    f.radius = R;
    f.coefficients[curls[0].index] = 1.0;
    const double lam = 1.0;
    const auto rep = solve::resolvent_curl(f, lam);
    const double expect = 1.0 / (curls[0].eigenvalue + lam);
    add(r, "resolvent acts diagonally",
        std::abs(rep.solution.coefficients.at(curls[0].index) - expect), 1e-15);

    const auto minus_it =
        std::find_if(curls.begin(), curls.end(), [](const modes::Mode& mode) {
            return mode.index.family == modes::Family::CurlMinus;
        });
    bool dichotomy_ok = false, minimal_ok = false;
    if (minus_it != curls.end()) {
        const double resonance = -minus_it->eigenvalue;  // positive
        modes::SpectralField g;
        g.radius = R;
        g.coefficients[minus_it->index] = 0.7;
        const auto hit = solve::resolvent_curl(g, resonance);
        const std::size_t dim = 2 * static_cast<std::size_t>(minus_it->index.n) + 1;
        dichotomy_ok = !hit.solvable && !hit.violated_conditions.empty() &&
                       hit.kernel_basis.size() == dim && hit.solution.coefficients.empty();

        modes::SpectralField g2;
        g2.radius = R;
        const auto other_it =
            std::find_if(curls.begin(), curls.end(), [&](const modes::Mode& mode) {
                return mode.index.n != minus_it->index.n || mode.index.m != minus_it->index.m;
            });
        g2.coefficients[other_it->index] = 0.5;
        const auto ok_rep = solve::resolvent_curl(g2, resonance);
        minimal_ok = ok_rep.solvable && ok_rep.resonant &&
                     ok_rep.solution.coefficients.count(minus_it->index) == 0 &&
                     std::abs(ok_rep.solution.coefficients.at(other_it->index) -
                              0.5 / (other_it->eigenvalue + resonance)) < 1e-14;
    }
    add_flag(r, "Fredholm alternative dichotomy", dichotomy_ok);
    add_flag(r, "minimal-norm solution at resonance", minimal_ok);

    const auto gds = modes::enumerate_first({modes::Family::GradDiv}, 4, R);
    modes::SpectralField mixed;
    mixed.radius = R;
    Rng rng(opt.seed);
    for (std::size_t j = 0; j < 4 && j < curls.size(); ++j)
        mixed.coefficients[curls[j].index] = rng.uniform(-1.0, 1.0);
    for (const auto& mode : gds) mixed.coefficients[mode.index] = rng.uniform(-1.0, 1.0);

    const auto p1 = solve::solve_problem1(mixed, 0.7);
    const auto [coef1, fd1] = solve::residual_check(p1.solution, mixed, 0.7, 1, 12, opt.seed);
    add(r, "first problem coefficient residual", coef1, 1e-12);
    add(r, "first problem finite-difference residual", fd1, 1e-3);

    const auto p3 = solve::solve_problem3(mixed, 0.0);
    const auto [coef3, fd3] = solve::residual_check(p3.solution, mixed, 0.0, 3, 12, opt.seed);
    add(r, "third problem coefficient residual", coef3, 1e-12);
    add(r, "third problem finite-difference residual", fd3, 1e-3);

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

SuiteResult suite_fieldio(const Options& opt) {
    SuiteResult r;
    r.suite = "fieldio";
    const double R = opt.radius;
    const auto field =
        modes::make_evaluator(modes::make_mode({modes::Family::CurlPlus, 1, 1, 0}, R));
    const auto grid = fieldio::sample(field, opt.n_r, opt.n_theta, opt.n_phi, R);
    const auto interp = fieldio::make_interpolator(grid);

    double worst = 0.0;
    for (int i = 1; i + 1 < grid.n_r; i += 5)
        for (int j = 1; j + 1 < grid.n_theta; j += 5)
            for (int l = 0; l < grid.n_phi; l += 7) {
                const SphericalPoint p{grid.r_at(i), grid.theta_at(j), grid.phi_at(l)};
                const VectorValue diff = interp(p) - grid.at(i, j, l);
                worst = std::max(worst, norm(diff));
            }
    add(r, "interpolation reproduces grid nodes", worst, 1e-12);

    Rng rng(opt.seed);
    worst = 0.0;
    for (int s = 0; s < 40; ++s) {
        const SphericalPoint p{rng.uniform(0.2, 0.9) * R, rng.uniform(0.4, kPi - 0.4),
                               rng.uniform(0.0, 2.0 * kPi)};
        worst = std::max(worst, norm(interp(p) - field(p)));
    }
    add(r, "interpolation error between nodes", worst, 2e-2);

    {
        std::stringstream s;
        fieldio::write_grid_csv(grid, s);
        const auto back = fieldio::read_grid_csv(s);
        bool ok = back.n_r == grid.n_r && back.n_theta == grid.n_theta &&
                  back.n_phi == grid.n_phi && back.radius == grid.radius;
        for (std::size_t j = 0; ok && j < grid.samples.size(); ++j)
            ok = back.samples[j].u_r == grid.samples[j].u_r &&
                 back.samples[j].u_theta == grid.samples[j].u_theta &&
                 back.samples[j].u_phi == grid.samples[j].u_phi;
        add_flag(r, "CSV grid round trip is bitwise", ok);
    }
    {
        std::stringstream s;
        fieldio::write_grid_vtk(grid, s);
        const auto back = fieldio::read_grid_vtk(s);
        bool ok = back.n_r == grid.n_r && back.n_theta == grid.n_theta &&
                  back.n_phi == grid.n_phi && back.radius == grid.radius;
        for (std::size_t j = 0; ok && j < grid.samples.size(); ++j)
            ok = back.samples[j].u_r == grid.samples[j].u_r &&
                 back.samples[j].u_theta == grid.samples[j].u_theta &&
                 back.samples[j].u_phi == grid.samples[j].u_phi;
        add_flag(r, "VTK grid round trip is bitwise", ok);
    }

    {
        const CartesianField up = [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; };
        const auto line =
            fieldio::trace_streamline(up, {0.3 * R, 0.0, -0.5 * R}, R, R / 100.0, 10000);
        bool ok = line.termination == fieldio::Termination::Boundary && line.points.size() > 2;
        for (std::size_t j = 0; ok && j + 1 < line.points.size(); ++j)
            ok = line.points[j + 1].z > line.points[j].z &&
                 norm(line.points[j + 1]) <= R * (1.0 + 1e-12);
        add_flag(r, "streamline leaves through the boundary", ok);
    }
    {
        const CartesianField still = [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
        const auto line = fieldio::trace_streamline(still, {0.1 * R, 0.0, 0.0}, R, R / 100.0, 10);
        add_flag(r, "streamline stagnates in a zero field",
                 line.termination == fieldio::Termination::Stagnation &&
                     line.points.size() == 1);
    }
    {
        const CartesianField swirl = [](const Vec3& x) { return Vec3{-x.y, x.x, 0.0}; };
        const auto line =
            fieldio::trace_streamline(swirl, {0.5 * R, 0.0, 0.0}, R, R / 200.0, 50);
        add_flag(r, "streamline stops at the step budget",
                 line.termination == fieldio::Termination::MaxSteps &&
                     line.points.size() == 51);
    }

    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"specfun", "roots", "modes", "orthonormality", "quad", "spectral", "solve",
            "fieldio"};
}

SuiteResult run_suite(const std::string& name, const Options& opt) {
    if (name == "specfun") return suite_specfun(opt);
    if (name == "roots") return suite_roots(opt);
    if (name == "modes") return suite_modes(opt);
    if (name == "orthonormality") return suite_orthonormality(opt);
    if (name == "quad") return suite_quad(opt);
    if (name == "spectral") return suite_spectral(opt);
    if (name == "solve") return suite_solve(opt);
    if (name == "fieldio") return suite_fieldio(opt);
    if (name == "all") {
        SuiteResult all;
        all.suite = "all";
        all.passed = true;
        for (const auto& sub : suite_names()) {
            SuiteResult part = run_suite(sub, opt);
            all.passed = all.passed && part.passed;
            for (auto& check : part.checks) {
                check.name = part.suite + "/" + check.name;
                all.checks.push_back(std::move(check));
            }
        }
        return all;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

nlohmann::json to_json(const SuiteResult& result) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : result.checks)
        checks.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"limit", c.limit}});
    return {{"suite", result.suite}, {"passed", result.passed}, {"checks", checks}};
}

}  // namespace ballmodes::verify
