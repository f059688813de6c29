#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ballmodes/fieldio.hpp"
#include "ballmodes/geometry.hpp"
#include "ballmodes/modes.hpp"
#include "ballmodes/quad.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/solve.hpp"
#include "ballmodes/specfun.hpp"
#include "ballmodes/spectral.hpp"

namespace py = pybind11;
using namespace ballmodes;

namespace {

py::tuple value_tuple(const VectorValue& v) { return py::make_tuple(v.u_r, v.u_theta, v.u_phi); }

std::string index_repr(const modes::ModeIndex& idx) {
    return "ModeIndex(" + modes::family_name(idx.family) + ", n=" + std::to_string(idx.n) +
           ", m=" + std::to_string(idx.m) + ", k=" + std::to_string(idx.k) + ")";
}

}  // namespace

PYBIND11_MODULE(_ballmodes, m) {
    m.doc() = "spectral toolkit for curl and grad-div eigenfields on a ball";

    // Special functions and spectra.
    m.def("psi", &specfun::psi, py::arg("n"), py::arg("z"),
          "spherical Bessel function j_n(z), z > 0");
    m.def("psi_prime", &specfun::psi_prime, py::arg("n"), py::arg("z"));
    m.def("phi", &specfun::phi, py::arg("n"), py::arg("lam"), py::arg("r"),
          "tangential radial profile of a curl eigenfield");
    m.def("ylm", &specfun::ylm, py::arg("n"), py::arg("k"), py::arg("theta"), py::arg("phi"),
          "real orthonormal spherical harmonic");
    m.def("h_op_ylm", &specfun::h_op_ylm, py::arg("n"), py::arg("k"), py::arg("theta"),
          py::arg("phi"));
    m.def("rho", &roots::rho, py::arg("n"), py::arg("m"), "m-th positive zero of j_n");
    m.def("alpha", &roots::alpha, py::arg("n"), py::arg("m"), "m-th positive zero of j_n'");

    py::enum_<modes::Family>(m, "Family")
        .value("CURL_PLUS", modes::Family::CurlPlus)
        .value("CURL_MINUS", modes::Family::CurlMinus)
        .value("GRAD_DIV", modes::Family::GradDiv);

    py::class_<modes::ModeIndex>(m, "ModeIndex")
        .def(py::init([](modes::Family family, int n, int mm, int k) {
                 return modes::ModeIndex{family, n, mm, k};
             }),
             py::arg("family"), py::arg("n"), py::arg("m"), py::arg("k"))
        .def_readwrite("family", &modes::ModeIndex::family)
        .def_readwrite("n", &modes::ModeIndex::n)
        .def_readwrite("m", &modes::ModeIndex::m)
        .def_readwrite("k", &modes::ModeIndex::k)
        .def("__repr__", &index_repr)
        .def("__eq__",
             [](const modes::ModeIndex& a, const modes::ModeIndex& b) { return a == b; })
        .def("__hash__", [](const modes::ModeIndex& idx) {
            return py::hash(py::make_tuple(static_cast<int>(idx.family), idx.n, idx.m, idx.k));
        });

    py::class_<modes::Mode>(m, "Mode")
        .def_readonly("index", &modes::Mode::index)
        .def_readonly("eigenvalue", &modes::Mode::eigenvalue)
        .def_readonly("normalization", &modes::Mode::normalization)
        .def_readonly("radius", &modes::Mode::radius);

    m.def("make_mode", &modes::make_mode, py::arg("index"), py::arg("radius"));
    m.def("eigenvalue_of", &modes::eigenvalue_of, py::arg("index"), py::arg("radius"));
    m.def("eval_mode",
          [](const modes::Mode& mode, double r, double theta, double phi) {
              return value_tuple(modes::eval_mode(mode, {r, theta, phi}));
          },
          py::arg("mode"), py::arg("r"), py::arg("theta"), py::arg("phi"),
          "spherical-frame components (u_r, u_theta, u_phi)");
    m.def("enumerate_first", &modes::enumerate_first, py::arg("families"), py::arg("count"),
          py::arg("radius"));
    m.def("enumerate_up_to", &modes::enumerate_up_to, py::arg("families"), py::arg("cutoff"),
          py::arg("radius"));

    py::class_<modes::SpectralField>(m, "SpectralField")
        .def(py::init([](double radius) {
                 modes::SpectralField f;
                 f.radius = radius;
                 return f;
             }),
             py::arg("radius") = 1.0)
        .def_readwrite("radius", &modes::SpectralField::radius)
        .def("set",
             [](modes::SpectralField& f, const modes::ModeIndex& idx, double c) {
                 modes::require_valid(idx);
                 f.coefficients[idx] = c;
             })
        .def("get",
             [](const modes::SpectralField& f, const modes::ModeIndex& idx) {
                 const auto it = f.coefficients.find(idx);
                 return it == f.coefficients.end() ? 0.0 : it->second;
             })
        .def("items",
             [](const modes::SpectralField& f) {
                 std::vector<std::pair<modes::ModeIndex, double>> out(f.coefficients.begin(),
                                                                      f.coefficients.end());
                 return out;
             })
        .def("__len__",
             [](const modes::SpectralField& f) { return f.coefficients.size(); });

    m.def("synthesize",
          [](const modes::SpectralField& f, double r, double theta, double phi) {
              return value_tuple(modes::synthesize(f, {r, theta, phi}));
          },
          py::arg("field"), py::arg("r"), py::arg("theta"), py::arg("phi"));
    m.def("field_to_json",
          [](const modes::SpectralField& f) { return spectral::to_json(f).dump(); });
    m.def("field_from_json", [](const std::string& text) {
        return spectral::field_from_json(nlohmann::json::parse(text));
    });

    py::enum_<spectral::Operator>(m, "Operator")
        .value("CURL", spectral::Operator::Curl)
        .value("GRAD_DIV", spectral::Operator::GradDiv);

    m.def("apply_power", &spectral::apply_power, py::arg("field"), py::arg("op"), py::arg("p"));
    m.def("scale_norm",
          [](const modes::SpectralField& f, spectral::Operator op, int order) {
              return spectral::scale_norm(f, {op, order});
          },
          py::arg("field"), py::arg("op"), py::arg("order"));
    m.def("solve_poly", &spectral::solve_poly, py::arg("rhs"), py::arg("op"), py::arg("order"));

    py::class_<spectral::ClassReport>(m, "ClassReport")
        .def_readonly("graddiv_norm", &spectral::ClassReport::graddiv_norm)
        .def_readonly("curl_norm", &spectral::ClassReport::curl_norm)
        .def_readonly("graddiv_tail_ratio", &spectral::ClassReport::graddiv_tail_ratio)
        .def_readonly("curl_tail_ratio", &spectral::ClassReport::curl_tail_ratio)
        .def_readonly("graddiv_mode_count", &spectral::ClassReport::graddiv_mode_count)
        .def_readonly("curl_mode_count", &spectral::ClassReport::curl_mode_count);
    m.def("class_report",
          [](const modes::SpectralField& f, int k, int mm) {
              return spectral::class_report(f, {k, mm});
          },
          py::arg("field"), py::arg("k"), py::arg("m"));

    py::class_<solve::SolveReport>(m, "SolveReport")
        .def_readonly("solvable", &solve::SolveReport::solvable)
        .def_readonly("resonant", &solve::SolveReport::resonant)
        .def_readonly("resonant_eigenvalue", &solve::SolveReport::resonant_eigenvalue)
        .def_readonly("violated_conditions", &solve::SolveReport::violated_conditions)
        .def_readonly("kernel_basis", &solve::SolveReport::kernel_basis)
        .def_readonly("residual_norm", &solve::SolveReport::residual_norm)
        .def_readonly("solution", &solve::SolveReport::solution);

    m.def("default_eps_spec", &solve::default_eps_spec, py::arg("lam"));
    m.def("resolvent_curl", &solve::resolvent_curl, py::arg("f"), py::arg("lam"),
          py::arg("eps_spec") = std::nullopt);
    m.def("resolvent_graddiv", &solve::resolvent_graddiv, py::arg("f"), py::arg("lam"),
          py::arg("eps_spec") = std::nullopt);
    m.def("solve_problem1", &solve::solve_problem1, py::arg("f"), py::arg("lam"),
          py::arg("eps_spec") = std::nullopt);
    m.def("solve_problem2", &solve::solve_problem2, py::arg("f"), py::arg("lam"),
          py::arg("eps_spec") = std::nullopt);
    m.def("solve_problem3", &solve::solve_problem3, py::arg("f"), py::arg("lam"),
          py::arg("eps_spec") = std::nullopt);
    m.def("residual_check", &solve::residual_check, py::arg("u"), py::arg("f"), py::arg("lam"),
          py::arg("problem"), py::arg("samples") = 20, py::arg("seed") = 1234,
          "returns (coefficient residual, finite-difference residual), both relative");

    py::class_<fieldio::Streamline>(m, "Streamline")
        .def_property_readonly("seed",
                               [](const fieldio::Streamline& s) {
                                   return py::make_tuple(s.seed.x, s.seed.y, s.seed.z);
                               })
        .def_readonly("step", &fieldio::Streamline::step)
        .def_property_readonly("termination",
                               [](const fieldio::Streamline& s) {
                                   return fieldio::termination_name(s.termination);
                               })
        .def_property_readonly("points", [](const fieldio::Streamline& s) {
            std::vector<std::tuple<double, double, double>> out;
            out.reserve(s.points.size());
            for (const auto& p : s.points) out.emplace_back(p.x, p.y, p.z);
            return out;
        });

    m.def("trace_streamline",
          [](const modes::SpectralField& field, std::tuple<double, double, double> seed,
             double step, int max_steps) {
              const Vec3 start{std::get<0>(seed), std::get<1>(seed), std::get<2>(seed)};
              return fieldio::trace_streamline(
                  make_cartesian_field(modes::make_evaluator(field)), start, field.radius,
                  step, max_steps);
          },
          py::arg("field"), py::arg("seed"), py::arg("step"), py::arg("max_steps") = 100000);
}
