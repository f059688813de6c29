#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "ballmodes/modes.hpp"
#include "ballmodes/rng.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/spectral.hpp"

using namespace ballmodes;
using modes::Family;
using modes::ModeIndex;
using modes::SpectralField;
using spectral::Operator;

namespace {

SpectralField random_field(const std::vector<Family>& families, int count, double radius,
                           unsigned seed) {
    SpectralField field;
    field.radius = radius;
    Rng rng(seed);
    for (const auto& mode : modes::enumerate_first(families, count, radius))
        field.coefficients[mode.index] = rng.uniform(-2.0, 2.0);
    return field;
}

}  // namespace

TEST_CASE("operator powers act diagonally with signed eigenvalues") {
    const double R = 1.0;
    SpectralField f;
    f.radius = R;
    f.coefficients[{Family::CurlPlus, 1, 1, 0}] = 2.0;
    f.coefficients[{Family::CurlMinus, 1, 1, 0}] = 3.0;

    const auto cubed = spectral::apply_power(f, Operator::Curl, 3);
    const double lam = roots::rho(1, 1) / R;
    CHECK(cubed.coefficients.at({Family::CurlPlus, 1, 1, 0}) ==
          doctest::Approx(2.0 * lam * lam * lam).epsilon(1e-14));
    CHECK(cubed.coefficients.at({Family::CurlMinus, 1, 1, 0}) ==
          doctest::Approx(-3.0 * lam * lam * lam).epsilon(1e-14));

    SpectralField g;
    g.radius = R;
    g.coefficients[{Family::GradDiv, 2, 1, 0}] = 1.5;
    const double nu = roots::alpha(2, 1) / R;
    const auto once = spectral::apply_power(g, Operator::GradDiv, 1);
    CHECK(once.coefficients.at({Family::GradDiv, 2, 1, 0}) ==
          doctest::Approx(-1.5 * nu * nu).epsilon(1e-14));
    const auto inv = spectral::apply_power(g, Operator::GradDiv, -2);
    CHECK(inv.coefficients.at({Family::GradDiv, 2, 1, 0}) ==
          doctest::Approx(1.5 / (nu * nu * nu * nu)).epsilon(1e-14));
}

TEST_CASE("powers and inverse powers round trip") {
    const auto u = random_field({Family::CurlPlus, Family::CurlMinus}, 12, 0.9, 41);
    for (const int p : {1, 2, 5}) {
        const auto back = spectral::apply_power(
            spectral::apply_power(u, Operator::Curl, p), Operator::Curl, -p);
        for (const auto& [idx, c] : u.coefficients)
            CHECK(back.coefficients.at(idx) == doctest::Approx(c).epsilon(1e-14));
    }
    const auto w = random_field({Family::GradDiv}, 8, 0.9, 43);
    const auto back = spectral::apply_power(
        spectral::apply_power(w, Operator::GradDiv, -3), Operator::GradDiv, 3);
    for (const auto& [idx, c] : w.coefficients)
        CHECK(back.coefficients.at(idx) == doctest::Approx(c).epsilon(1e-14));
}

TEST_CASE("scale norm equals the l2 norm after applying the power") {
    const double R = 1.0;
    const auto u = random_field({Family::CurlPlus, Family::CurlMinus}, 14, R, 47);
    for (const int m : {1, 2, -1}) {
        const auto powered = spectral::apply_power(u, Operator::Curl, m);
        double l2 = 0.0;
        for (const auto& [idx, c] : powered.coefficients) l2 += c * c;
        l2 = std::sqrt(l2);
        const double normed = spectral::scale_norm(u, {Operator::Curl, m});
        CHECK(normed == doctest::Approx(l2).epsilon(1e-13));
    }
    // Order zero is the plain l2 norm.
    double plain = 0.0;
    for (const auto& [idx, c] : u.coefficients) plain += c * c;
    CHECK(spectral::scale_norm(u, {Operator::Curl, 0}) ==
          doctest::Approx(std::sqrt(plain)).epsilon(1e-14));
}

TEST_CASE("graddiv scale norm uses nu^{4k} weights and ignores curl modes") {
    const double R = 1.0;
    SpectralField f;
    f.radius = R;
    f.coefficients[{Family::GradDiv, 1, 1, 0}] = 2.0;
    f.coefficients[{Family::CurlPlus, 1, 1, 0}] = 100.0;  // must not contribute
    const double nu = roots::alpha(1, 1) / R;
    const double want = 2.0 * nu * nu;  // sqrt(c^2 nu^4)
    CHECK(spectral::scale_norm(f, {Operator::GradDiv, 2}) ==
          doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("class report totals, counts and tail deciles") {
    const double R = 1.0;
    const auto mixed_basis = modes::enumerate_first(
        {Family::CurlPlus, Family::CurlMinus, Family::GradDiv}, 20, R);
    SpectralField f;
    f.radius = R;
    std::size_t n_curl = 0, n_graddiv = 0;
    for (const auto& mode : mixed_basis) {
        f.coefficients[mode.index] = 0.5;
        if (mode.index.family == Family::GradDiv)
            ++n_graddiv;
        else
            ++n_curl;
    }
    const auto report = spectral::class_report(f, {1, 2});
    CHECK(report.curl_mode_count == n_curl);
    CHECK(report.graddiv_mode_count == n_graddiv);
    CHECK(report.curl_norm ==
          doctest::Approx(spectral::scale_norm(f, {Operator::Curl, 2})).epsilon(1e-14));
    CHECK(report.graddiv_norm ==
          doctest::Approx(spectral::scale_norm(f, {Operator::GradDiv, 2})).epsilon(1e-14));
    CHECK(report.curl_tail_ratio > 0.0);
    CHECK(report.curl_tail_ratio < 1.0);

    // A single-mode field is its own tail.
    SpectralField lone;
    lone.radius = R;
    lone.coefficients[{Family::CurlPlus, 1, 1, 0}] = 1.0;
    const auto lone_report = spectral::class_report(lone, {0, 0});
    CHECK(lone_report.curl_tail_ratio == doctest::Approx(1.0));
    CHECK(lone_report.graddiv_norm == 0.0);
    CHECK(lone_report.graddiv_tail_ratio == 0.0);
}

TEST_CASE("polyharmonic solve inverts the squared operator") {
    const auto w = random_field({Family::GradDiv}, 9, 1.2, 53);
    const auto rhs = spectral::apply_power(w, Operator::GradDiv, 4);
    const auto sol = spectral::solve_poly(rhs, Operator::GradDiv, 2);
    for (const auto& [idx, c] : w.coefficients)
        CHECK(sol.coefficients.at(idx) == doctest::Approx(c).epsilon(1e-13));

    // Definitionally the same transform as the -2*order power.
    const auto direct = spectral::apply_power(rhs, Operator::GradDiv, -4);
    for (const auto& [idx, c] : direct.coefficients)
        CHECK(sol.coefficients.at(idx) == c);
}

TEST_CASE("json round trip preserves coefficients bitwise") {
    const auto u = random_field({Family::CurlPlus, Family::CurlMinus, Family::GradDiv}, 10,
                                0.75, 59);
    const auto j = spectral::to_json(u);
    CHECK(j.at("R").get<double>() == 0.75);
    CHECK(j.at("modes").size() == u.coefficients.size());
    const auto back = spectral::field_from_json(j);
    CHECK(back.radius == u.radius);
    REQUIRE(back.coefficients.size() == u.coefficients.size());
    for (const auto& [idx, c] : u.coefficients) CHECK(back.coefficients.at(idx) == c);
}

TEST_CASE("json parsing rejects malformed fields") {
    using nlohmann::json;
    CHECK_THROWS((void)spectral::field_from_json(json{{"R", -1.0}, {"modes", json::array()}}));
    const json dup = {
        {"R", 1.0},
        {"modes",
         {{{"family", "curl+"}, {"n", 1}, {"m", 1}, {"k", 0}, {"c", 1.0}},
          {{"family", "curl+"}, {"n", 1}, {"m", 1}, {"k", 0}, {"c", 2.0}}}}};
    CHECK_THROWS((void)spectral::field_from_json(dup));
    const json bad_family = {
        {"R", 1.0},
        {"modes", {{{"family", "swirl"}, {"n", 1}, {"m", 1}, {"k", 0}, {"c", 1.0}}}}};
    CHECK_THROWS((void)spectral::field_from_json(bad_family));
    const json bad_index = {
        {"R", 1.0},
        {"modes", {{{"family", "curl+"}, {"n", 1}, {"m", 1}, {"k", 5}, {"c", 1.0}}}}};
    CHECK_THROWS((void)spectral::field_from_json(bad_index));
}

TEST_CASE("operator and family bookkeeping") {
    CHECK(spectral::family_matches(Family::CurlPlus, Operator::Curl));
    CHECK(spectral::family_matches(Family::CurlMinus, Operator::Curl));
    CHECK(spectral::family_matches(Family::GradDiv, Operator::GradDiv));
    CHECK(!spectral::family_matches(Family::GradDiv, Operator::Curl));
    CHECK(spectral::operator_from_name(spectral::operator_name(Operator::Curl)) ==
          Operator::Curl);
    CHECK(spectral::operator_from_name(spectral::operator_name(Operator::GradDiv)) ==
          Operator::GradDiv);
    CHECK_THROWS_AS((void)spectral::operator_from_name("nope"), std::invalid_argument);
}

TEST_CASE("spectral validation") {
    SpectralField f;
    f.radius = 1.0;
    f.coefficients[{Family::GradDiv, 1, 1, 0}] = 1.0;
    CHECK_THROWS_AS((void)spectral::apply_power(f, Operator::Curl, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)spectral::apply_power(f, Operator::GradDiv, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)spectral::scale_norm(f, {Operator::GradDiv, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)spectral::solve_poly(f, Operator::GradDiv, 0),
                    std::invalid_argument);

    // Mixed fields are fine for norms (the other family is skipped), and an
    // empty field transforms to an empty field.
    SpectralField empty;
    empty.radius = 1.0;
    const auto out = spectral::apply_power(empty, Operator::Curl, 2);
    CHECK(out.coefficients.empty());
}
