#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ballmodes/fieldio.hpp"
#include "ballmodes/geometry.hpp"
#include "ballmodes/modes.hpp"
#include "ballmodes/rng.hpp"

using namespace ballmodes;
using fieldio::GridField;
using fieldio::Streamline;
using fieldio::Termination;

namespace {

FieldEvaluator smooth_field() {
    return [](const SphericalPoint& p) -> VectorValue {
        return {std::sin(2.0 * p.r) * std::cos(p.theta),
                p.r * p.r * std::sin(p.theta) * std::cos(p.phi),
                std::cos(p.r) * std::sin(p.phi)};
    };
}

bool grids_bitwise_equal(const GridField& a, const GridField& b) {
    if (a.radius != b.radius || a.n_r != b.n_r || a.n_theta != b.n_theta ||
        a.n_phi != b.n_phi || a.samples.size() != b.samples.size())
        return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i].u_r != b.samples[i].u_r ||
            a.samples[i].u_theta != b.samples[i].u_theta ||
            a.samples[i].u_phi != b.samples[i].u_phi)
            return false;
    return true;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("grid coordinates hit the rim and the poles exactly") {
    GridField g;
    g.radius = 0.73;
    g.n_r = 17;
    g.n_theta = 9;
    g.n_phi = 12;
    CHECK(g.r_at(g.n_r - 1) == 0.73);
    CHECK(g.theta_at(0) == 0.0);
    CHECK(g.theta_at(g.n_theta - 1) == kPi);
    CHECK(g.phi_at(0) == 0.0);
    CHECK(g.phi_at(g.n_phi - 1) < 2.0 * kPi);
}

TEST_CASE("sampling lays the field out in r-theta-phi order") {
    const auto f = smooth_field();
    const auto grid = fieldio::sample(f, 6, 7, 8, 1.2);
    CHECK(grid.samples.size() == 6u * 7u * 8u);
    for (int i = 0; i < 6; i += 2)
        for (int j = 0; j < 7; j += 3)
            for (int l = 0; l < 8; l += 3) {
                const VectorValue want = f({grid.r_at(i), grid.theta_at(j), grid.phi_at(l)});
                const VectorValue got = grid.at(i, j, l);
                CHECK(got.u_r == want.u_r);
                CHECK(got.u_theta == want.u_theta);
                CHECK(got.u_phi == want.u_phi);
            }
}

TEST_CASE("interpolation reproduces grid nodes") {
    const auto grid = fieldio::sample(smooth_field(), 24, 24, 48, 1.0);
    const auto interp = fieldio::make_interpolator(grid);
    double worst = 0.0;
    for (int i = 0; i < grid.n_r; i += 3)
        for (int j = 0; j < grid.n_theta; j += 3)
            for (int l = 0; l < grid.n_phi; l += 5) {
                const SphericalPoint p{grid.r_at(i), grid.theta_at(j), grid.phi_at(l)};
                worst = std::max(worst, norm(interp(p) - grid.at(i, j, l)));
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("interpolation converges between nodes") {
    const auto f = smooth_field();
    const auto interp = fieldio::make_interpolator(fieldio::sample(f, 48, 48, 96, 1.0));
    Rng rng(97);
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const SphericalPoint p{rng.uniform(0.2, 0.98), rng.uniform(0.3, kPi - 0.3),
                               rng.uniform(0.0, 2.0 * kPi)};
        worst = std::max(worst, norm(interp(p) - f(p)));
    }
    CHECK(worst < 5e-4);
}

TEST_CASE("interpolation wraps around the phi seam") {
    const auto interp = fieldio::make_interpolator(fieldio::sample(smooth_field(), 16, 16, 32, 1.0));
    const SphericalPoint just_below{0.5, 1.0, 2.0 * kPi - 1e-9};
    const SphericalPoint just_above{0.5, 1.0, 1e-9};
    CHECK(norm(interp(just_below) - interp(just_above)) < 1e-7);
    // A full period maps to the same stencil up to rounding of the argument.
    const SphericalPoint base{0.5, 1.0, 0.4};
    const SphericalPoint shifted{0.5, 1.0, 0.4 + 2.0 * kPi};
    CHECK(norm(interp(base) - interp(shifted)) < 1e-12);
}

TEST_CASE("csv grid round trip is bitwise") {
    const auto field =
        modes::make_evaluator(modes::make_mode({modes::Family::CurlMinus, 2, 1, 1}, 0.73));
    const auto grid = fieldio::sample(field, 9, 8, 10, 0.73);
    std::stringstream s;
    fieldio::write_grid_csv(grid, s);
    std::string first_line;
    {
        std::istringstream probe(s.str());
        std::getline(probe, first_line);
    }
    CHECK(first_line == "r,theta,phi,u_r,u_theta,u_phi");
    const auto back = fieldio::read_grid_csv(s);
    CHECK(grids_bitwise_equal(grid, back));
}

TEST_CASE("vtk grid round trip is bitwise") {
    const auto grid = fieldio::sample(smooth_field(), 7, 6, 9, 1.37);
    std::stringstream s;
    fieldio::write_grid_vtk(grid, s);
    const std::string text = s.str();
    CHECK(text.rfind("# vtk DataFile", 0) == 0);
    CHECK(text.find("DATASET STRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("DIMENSIONS 9 6 7") != std::string::npos);
    std::stringstream in(text);
    const auto back = fieldio::read_grid_vtk(in);
    CHECK(grids_bitwise_equal(grid, back));
}

TEST_CASE("streamline in a radial outflow leaves through the boundary") {
    const CartesianField outflow = [](const Vec3& x) { return x; };
    const auto line = fieldio::trace_streamline(outflow, {0.1, 0.0, 0.05}, 1.0, 0.01, 100000);
    CHECK(line.termination == Termination::Boundary);
    CHECK(line.points.size() > 10);
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        CHECK(norm(line.points[i]) > norm(line.points[i - 1]));
        CHECK(norm(line.points[i]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("streamline stagnates where the field vanishes") {
    const CartesianField outflow = [](const Vec3& x) { return x; };
    const auto line = fieldio::trace_streamline(outflow, {0.0, 0.0, 0.0}, 1.0, 0.01, 100);
    CHECK(line.termination == Termination::Stagnation);
    CHECK(line.points.size() == 1);
}

TEST_CASE("rk4 keeps circular orbits circular") {
    const CartesianField swirl = [](const Vec3& x) { return Vec3{-x.y, x.x, 0.0}; };
    const auto line = fieldio::trace_streamline(swirl, {0.5, 0.0, 0.0}, 1.0, 0.01, 1000);
    CHECK(line.termination == Termination::MaxSteps);
    REQUIRE(line.points.size() == 1001);
    for (const auto& p : line.points) CHECK(std::abs(norm(p) - 0.5) < 1e-9);
}

TEST_CASE("streamline csv and vtk round trips are bitwise") {
    const CartesianField swirl = [](const Vec3& x) { return Vec3{-x.y, x.x, 0.1}; };
    const auto line = fieldio::trace_streamline(swirl, {0.4, 0.0, -0.3}, 1.0, 0.02, 500);

    std::stringstream csv;
    fieldio::write_streamline_csv(line, csv);
    const auto from_csv = fieldio::read_streamline_csv(csv);
    CHECK(from_csv.termination == line.termination);
    CHECK(from_csv.step == line.step);
    CHECK(from_csv.seed.x == line.seed.x);
    REQUIRE(from_csv.points.size() == line.points.size());
    for (std::size_t i = 0; i < line.points.size(); ++i) {
        CHECK(from_csv.points[i].x == line.points[i].x);
        CHECK(from_csv.points[i].y == line.points[i].y);
        CHECK(from_csv.points[i].z == line.points[i].z);
    }

    std::stringstream vtk;
    fieldio::write_streamline_vtk(line, vtk);
    const auto from_vtk = fieldio::read_streamline_vtk(vtk);
    CHECK(from_vtk.termination == line.termination);
    REQUIRE(from_vtk.points.size() == line.points.size());
    for (std::size_t i = 0; i < line.points.size(); ++i)
        CHECK(from_vtk.points[i].x == line.points[i].x);
}

TEST_CASE("file save and load sniff the format") {
    const auto grid = fieldio::sample(smooth_field(), 5, 5, 6, 0.9);
    const std::string csv_path = temp_path("fieldio_roundtrip.csv");
    const std::string vtk_path = temp_path("fieldio_roundtrip.vtk");
    fieldio::save_grid(grid, csv_path, "csv");
    fieldio::save_grid(grid, vtk_path, "vtk");
    CHECK(grids_bitwise_equal(grid, fieldio::load_grid(csv_path)));
    CHECK(grids_bitwise_equal(grid, fieldio::load_grid(vtk_path)));
    std::remove(csv_path.c_str());
    std::remove(vtk_path.c_str());

    CHECK_THROWS_AS((void)fieldio::load_grid(temp_path("missing_grid_file.csv")),
                    std::runtime_error);
    CHECK_THROWS_AS(fieldio::save_grid(grid, csv_path, "xml"), std::invalid_argument);
}

TEST_CASE("termination names round trip") {
    for (const auto t :
         {Termination::Boundary, Termination::MaxSteps, Termination::Stagnation})
        CHECK(fieldio::termination_from_name(fieldio::termination_name(t)) == t);
    CHECK_THROWS_AS((void)fieldio::termination_from_name("wandering"), std::invalid_argument);
}

TEST_CASE("fieldio validation") {
    CHECK_THROWS_AS((void)fieldio::sample(smooth_field(), 1, 8, 8, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fieldio::sample(smooth_field(), 8, 8, 8, -1.0),
                    std::invalid_argument);

    const auto interp = fieldio::make_interpolator(fieldio::sample(smooth_field(), 8, 8, 8, 1.0));
    CHECK_THROWS_AS((void)interp({1.5, 1.0, 0.0}), std::domain_error);

    const CartesianField still = [](const Vec3&) { return Vec3{}; };
    CHECK_THROWS_AS((void)fieldio::trace_streamline(still, {2.0, 0.0, 0.0}, 1.0, 0.01, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fieldio::trace_streamline(still, {0.0, 0.0, 0.0}, 1.0, -0.01, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fieldio::trace_streamline(still, {0.0, 0.0, 0.0}, 1.0, 0.01, 0),
                    std::invalid_argument);

    std::stringstream bad("not,a,grid\n1,2,3\n");
    CHECK_THROWS_AS((void)fieldio::read_grid_csv(bad), std::runtime_error);
}
