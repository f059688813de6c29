// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 I/O error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ballmodes/fieldio.hpp"
#include "ballmodes/geometry.hpp"
#include "ballmodes/modes.hpp"
#include "ballmodes/quad.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/solve.hpp"
#include "ballmodes/spectral.hpp"
#include "ballmodes/verify.hpp"

using namespace ballmodes;
using nlohmann::json;

namespace {

struct IoError {
    std::string message;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError{"cannot open " + path};
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError{path + ": " + e.what()};
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError{"cannot open " + path + " for writing"};
    out << j.dump(2) << '\n';
    if (!out) throw IoError{"short write to " + path};
}

std::string resolve_out(const std::string& user_path, const std::string& fallback_name) {
    if (!user_path.empty()) return user_path;
    const char* dir = std::getenv("BALLMODES_OUT_DIR");
    return (dir && *dir ? std::string(dir) : std::string(".")) + "/" + fallback_name;
}

/// Mode strings are "n,m,k,family" with family one of +, -, g.
modes::ModeIndex parse_mode_string(const std::string& text) {
    std::istringstream in(text);
    int n = 0, m = 0, k = 0;
    char c1 = 0, c2 = 0, c3 = 0, fam = 0;
    if (!(in >> n >> c1 >> m >> c2 >> k >> c3 >> fam) || c1 != ',' || c2 != ',' || c3 != ',' ||
        !(in >> std::ws).eof())
        throw std::invalid_argument("mode must be \"n,m,k,{+|-|g}\", got \"" + text + "\"");
    modes::Family family;
    switch (fam) {
        case '+': family = modes::Family::CurlPlus; break;
        case '-': family = modes::Family::CurlMinus; break;
        case 'g': family = modes::Family::GradDiv; break;
        default:
            throw std::invalid_argument("mode family must be +, - or g, got '" +
                                        std::string(1, fam) + "'");
    }
    return {family, n, m, k};
}

void parse_dims(const std::string& text, int& a, int& b, int& c) {
    char x1 = 0, x2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> x1 >> b >> x2 >> c) || x1 != 'x' || x2 != 'x' || !(in >> std::ws).eof())
        throw std::invalid_argument("dimensions must be \"NrxNtxNp\", got \"" + text + "\"");
}

Vec3 parse_vec3(const std::string& text) {
    std::istringstream in(text);
    Vec3 v;
    char c1 = 0, c2 = 0;
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',' ||
        !(in >> std::ws).eof())
        throw std::invalid_argument("point must be \"x,y,z\", got \"" + text + "\"");
    return v;
}

void save_grid_checked(const fieldio::GridField& grid, const std::string& path,
                       const std::string& format) {
    try {
        fieldio::save_grid(grid, path, format);
    } catch (const std::runtime_error& e) {
        throw IoError{e.what()};
    }
}

fieldio::GridField load_grid_checked(const std::string& path) {
    try {
        return fieldio::load_grid(path);
    } catch (const std::runtime_error& e) {
        throw IoError{e.what()};
    }
}

modes::SpectralField load_field_checked(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return spectral::field_from_json(j);
    } catch (const std::exception& e) {
        throw IoError{path + ": " + e.what()};
    }
}

const std::vector<modes::Family> kAllFamilies = {
    modes::Family::CurlPlus, modes::Family::CurlMinus, modes::Family::GradDiv};

// Shared between eval and streamlines: the field is either a single mode or a
// coefficient file; --radius applies to modes and must agree with a file.
struct FieldArgs {
    std::string mode_string;
    std::string field_path;
    double radius = 1.0;
    bool radius_set = false;

    void add_to(CLI::App* cmd) {
        auto* mode = cmd->add_option("--mode", mode_string, "single mode \"n,m,k,{+|-|g}\"");
        auto* field =
            cmd->add_option("--field", field_path, "spectral coefficient file (JSON)");
        mode->excludes(field);
        cmd->add_option("--radius", radius, "ball radius")
            ->check(CLI::PositiveNumber)
            ->each([this](const std::string&) { radius_set = true; });
    }

    std::pair<FieldEvaluator, double> make() const {
        if (!mode_string.empty()) {
            const auto mode = modes::make_mode(parse_mode_string(mode_string), radius);
            return {modes::make_evaluator(mode), radius};
        }
        if (field_path.empty())
            throw std::invalid_argument("one of --mode or --field is required");
        auto field = load_field_checked(field_path);
        if (radius_set && std::abs(field.radius - radius) > 1e-12 * field.radius)
            throw std::invalid_argument("--radius disagrees with the coefficient file");
        const double r = field.radius;
        return {modes::make_evaluator(std::move(field)), r};
    }
};

int cmd_roots(const std::string& kind_name, int n_max, int m_max, double radius,
              const std::string& json_path) {
    const roots::Kind kind =
        kind_name == "psi" ? roots::Kind::PsiZero : roots::Kind::PsiPrimeZero;
    if (n_max < 0 || n_max > roots::kMaxDegree || m_max < 1 || m_max > roots::kMaxIndex)
        throw std::invalid_argument("root ranges: 0 <= n <= 64, 1 <= m <= 256");
    const auto table = roots::tabulate(kind, 0, n_max, m_max);
    std::printf("# %s zeros, n <= %d, m <= %d\n", kind_name.c_str(), n_max, m_max);
    for (const auto& entry : table.entries)
        std::printf("%3d %3d %.15g\n", entry.n, entry.m, entry.z);
    if (!json_path.empty()) write_json_file(json_path, roots::to_json(table, radius));
    return 0;
}

int cmd_eval(const FieldArgs& args, const std::string& grid_spec, const std::string& format,
             const std::string& out) {
    int n_r = 0, n_theta = 0, n_phi = 0;
    parse_dims(grid_spec, n_r, n_theta, n_phi);
    auto [f, radius] = args.make();
    const auto grid = fieldio::sample(f, n_r, n_theta, n_phi, radius);
    const std::string path = resolve_out(out, "eval_grid." + format);
    save_grid_checked(grid, path, format);
    std::printf("wrote %s: %dx%dx%d samples, radius %.17g\n", path.c_str(), n_r, n_theta,
                n_phi, radius);
    return 0;
}

int cmd_project(const std::string& in_path, int n_modes, double lambda_max,
                const std::string& quad_spec, const std::string& out) {
    if ((n_modes > 0) == (lambda_max > 0.0))
        throw std::invalid_argument("exactly one of --n-modes or --lambda-max is required");
    const auto grid = load_grid_checked(in_path);
    const double radius = grid.radius;
    const auto basis = n_modes > 0
                           ? modes::enumerate_first(kAllFamilies, n_modes, radius)
                           : modes::enumerate_up_to(kAllFamilies, lambda_max, radius);
    int n_r = 0, n_theta = 0, n_phi = 0;
    if (!quad_spec.empty()) {
        parse_dims(quad_spec, n_r, n_theta, n_phi);
    } else {
        int max_n = 0, max_m = 1;
        for (const auto& mode : basis) {
            max_n = std::max(max_n, mode.index.n);
            max_m = std::max(max_m, mode.index.m);
        }
        quad::default_orders(max_n, max_m, n_r, n_theta, n_phi);
    }
    const auto q = quad::build_ball_quadrature(n_r, n_theta, n_phi, radius);
    const auto field = quad::project(fieldio::make_interpolator(grid), basis, q);
    double norm_sq = 0.0;
    for (const auto& [idx, c] : field.coefficients) norm_sq += c * c;
    const std::string path = resolve_out(out, "projection.json");
    write_json_file(path, spectral::to_json(field));
    std::printf("projected onto %zu modes with %dx%dx%d quadrature; coefficient norm %.6g; "
                "wrote %s\n",
                basis.size(), n_r, n_theta, n_phi, std::sqrt(norm_sq), path.c_str());
    return 0;
}

int cmd_solve(int problem, double lambda, const std::string& rhs_path,
              std::optional<double> eps_spec, const std::string& out) {
    const auto f = load_field_checked(rhs_path);
    solve::SolveReport report;
    switch (problem) {
        case 1: report = solve::solve_problem1(f, lambda, eps_spec); break;
        case 2: report = solve::solve_problem2(f, lambda, eps_spec); break;
        case 3: report = solve::solve_problem3(f, lambda, eps_spec); break;
        default: throw std::invalid_argument("--problem must be 1, 2 or 3");
    }
    const std::string path = resolve_out(out, "solve_report.json");
    write_json_file(path, solve::to_json(report));
    if (report.solvable)
        std::printf("solvable: %zu solution modes, coefficient residual %.3g; wrote %s\n",
                    report.solution.coefficients.size(), report.residual_norm, path.c_str());
    else
        std::printf("not solvable: %zu orthogonality conditions violated; wrote %s\n",
                    report.violated_conditions.size(), path.c_str());
    return 0;
}

int cmd_verify(const std::string& suite, const verify::Options& options) {
    const auto result = verify::run_suite(suite, options);
    std::cout << verify::to_json(result).dump(2) << '\n';
    return result.passed ? 0 : 1;
}

int cmd_streamlines(const FieldArgs& args, const std::string& seed_spec, double step,
                    int max_steps, const std::string& format, const std::string& out) {
    auto [f, radius] = args.make();
    const Vec3 seed = parse_vec3(seed_spec);
    const double h = step > 0.0 ? step : 1e-3 * radius;
    const auto line =
        fieldio::trace_streamline(make_cartesian_field(std::move(f)), seed, radius, h, max_steps);
    const std::string path = resolve_out(out, "streamline." + format);
    try {
        fieldio::save_streamline(line, path, format);
    } catch (const std::runtime_error& e) {
        throw IoError{e.what()};
    }
    const Vec3& last = line.points.back();
    std::printf("traced %zu points, termination %s, final point %.6g,%.6g,%.6g; wrote %s\n",
                line.points.size(), fieldio::termination_name(line.termination).c_str(), last.x,
                last.y, last.z, path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for curl and grad-div eigenfields on a ball"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML-style key=value file");

    auto* roots_cmd = app.add_subcommand("roots", "tabulate spectrum zeros");
    std::string kind = "psi";
    int n_max = 8, m_max = 4;
    double roots_radius = 1.0;
    std::string roots_json;
    roots_cmd->add_option("kind", kind, "psi or psi-prime")
        ->check(CLI::IsMember({"psi", "psi-prime"}));
    roots_cmd->add_option("n_max", n_max, "largest degree");
    roots_cmd->add_option("m_max", m_max, "largest zero index");
    roots_cmd->add_option("--radius", roots_radius, "ball radius for the JSON eigenvalues")
        ->check(CLI::PositiveNumber);
    roots_cmd->add_option("--json", roots_json, "also write the table as JSON");

    auto* eval_cmd = app.add_subcommand("eval", "sample a field on a spherical grid");
    FieldArgs eval_args;
    eval_args.add_to(eval_cmd);
    std::string eval_grid = "32x32x64", eval_format = "csv", eval_out;
    eval_cmd->add_option("--grid", eval_grid, "grid dimensions NrxNtxNp");
    eval_cmd->add_option("--format", eval_format, "csv or vtk")
        ->check(CLI::IsMember({"csv", "vtk"}));
    eval_cmd->add_option("--out", eval_out, "output path");

    auto* project_cmd = app.add_subcommand("project", "project a sampled grid onto the bases");
    std::string project_in, project_quad, project_out;
    int project_n_modes = 0;
    double project_lambda_max = 0.0;
    project_cmd->add_option("--in", project_in, "grid file (csv or vtk)")->required();
    project_cmd->add_option("--n-modes", project_n_modes, "basis size by count");
    project_cmd->add_option("--lambda-max", project_lambda_max,
                            "basis cutoff by |eigenvalue| of the curl problem");
    project_cmd->add_option("--quad", project_quad, "quadrature orders NrxNtxNp");
    project_cmd->add_option("--out", project_out, "output coefficient file");

    auto* solve_cmd = app.add_subcommand("solve", "solve a boundary-value problem");
    int solve_problem = 1;
    double solve_lambda = 0.0;
    std::string solve_rhs, solve_out;
    std::optional<double> solve_eps;
    solve_cmd->add_option("--problem", solve_problem, "1, 2 or 3")->required();
    solve_cmd->add_option("--lambda", solve_lambda, "spectral parameter")->required();
    solve_cmd->add_option("--rhs", solve_rhs, "right-hand side coefficient file")->required();
    solve_cmd->add_option("--eps-spec", solve_eps, "resonance detection width");
    solve_cmd->add_option("--out", solve_out, "output report path");

    auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
    std::string verify_suite = "all";
    verify::Options verify_options;
    std::string verify_quad;
    {
        auto names = verify::suite_names();
        names.push_back("all");
        verify_cmd->add_option("--suite", verify_suite, "suite name or all")
            ->check(CLI::IsMember(names));
    }
    verify_cmd->add_option("--n-modes", verify_options.n_modes, "basis size for field checks")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_options.seed, "seed for randomized checks");
    verify_cmd->add_option("--radius", verify_options.radius, "ball radius")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--quad", verify_quad, "quadrature orders NrxNtxNp");

    auto* stream_cmd = app.add_subcommand("streamlines", "trace a streamline of a field");
    FieldArgs stream_args;
    stream_args.add_to(stream_cmd);
    std::string stream_seed = "0,0,-0.5", stream_format = "csv", stream_out;
    double stream_step = 0.0;
    int stream_max_steps = 100000;
    stream_cmd->add_option("--seed", stream_seed, "seed point x,y,z");
    stream_cmd->add_option("--step", stream_step, "integration step (default 1e-3 * radius)");
    stream_cmd->add_option("--max-steps", stream_max_steps, "step budget")
        ->check(CLI::PositiveNumber);
    stream_cmd->add_option("--format", stream_format, "csv or vtk")
        ->check(CLI::IsMember({"csv", "vtk"}));
    stream_cmd->add_option("--out", stream_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (roots_cmd->parsed())
            return cmd_roots(kind, n_max, m_max, roots_radius, roots_json);
        if (eval_cmd->parsed()) return cmd_eval(eval_args, eval_grid, eval_format, eval_out);
        if (project_cmd->parsed())
            return cmd_project(project_in, project_n_modes, project_lambda_max, project_quad,
                               project_out);
        if (solve_cmd->parsed())
            return cmd_solve(solve_problem, solve_lambda, solve_rhs, solve_eps, solve_out);
        if (verify_cmd->parsed()) {
            if (!verify_quad.empty())
                parse_dims(verify_quad, verify_options.n_r, verify_options.n_theta,
                           verify_options.n_phi);
            return cmd_verify(verify_suite, verify_options);
        }
        if (stream_cmd->parsed())
            return cmd_streamlines(stream_args, stream_seed, stream_step, stream_max_steps,
                                   stream_format, stream_out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.message << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
