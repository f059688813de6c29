#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "ballmodes/geometry.hpp"
#include "ballmodes/roots.hpp"
#include "ballmodes/specfun.hpp"

using namespace ballmodes;
using roots::alpha;
using roots::Kind;
using roots::rho;

namespace {

// Independent oracle for the first zero of j_1: j_1(z) = 0 iff
// g(z) = sin z - z cos z = 0, bisected with no library code involved.
double first_j1_zero_oracle() {
    auto g = [](double z) { return std::sin(z) - z * std::cos(z); };
    double a = 3.15, b = 6.0;  // g > 0 at a, g < 0 at b
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (g(a) * g(m) <= 0)
            b = m;
        else
            a = m;
    }
    return 0.5 * (a + b);
}

// Independent oracle for the first zero of j_1': j_1'(z) = 0 iff
// h(z) = (z^2 - 2) sin z + 2 z cos z = 0 on (0, pi).
double first_j1_prime_zero_oracle() {
    auto h = [](double z) { return (z * z - 2.0) * std::sin(z) + 2.0 * z * std::cos(z); };
    double a = 0.5, b = 3.1;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (h(a) * h(m) <= 0)
            b = m;
        else
            a = m;
    }
    return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("bessel zeros match independently bisected values") {
    CHECK(std::abs(rho(1, 1) - first_j1_zero_oracle()) < 1e-12);
    CHECK(std::abs(alpha(1, 1) - first_j1_prime_zero_oracle()) < 1e-12);
}

TEST_CASE("bessel zeros match the high-precision table") {
    CHECK(std::abs(rho(1, 1) - 4.4934094579090642) < 1e-12);
    CHECK(std::abs(rho(1, 2) - 7.7252518369377072) < 1e-12);
    CHECK(std::abs(rho(1, 3) - 10.9041216594289) < 1e-10);
    CHECK(std::abs(rho(2, 1) - 5.7634591968945498) < 1e-12);
    CHECK(std::abs(rho(3, 1) - 6.98793200050052) < 1e-11);
    CHECK(std::abs(rho(4, 1) - 8.1825614525712427) < 1e-12);
    CHECK(std::abs(rho(2, 2) - 9.0950113304763552) < 1e-12);
    CHECK(std::abs(rho(10, 3) - 22.662720658136056) < 1e-12);
    CHECK(std::abs(rho(4, 2) - 11.704907154570391) < 1e-12);
    CHECK(std::abs(rho(64, 1) - 72.199780933233055) < 1e-11);

    CHECK(std::abs(alpha(1, 1) - 2.0815759778181006) < 1e-12);
    CHECK(std::abs(alpha(2, 1) - 3.3420936573656942) < 1e-12);
    CHECK(std::abs(alpha(3, 1) - 4.5140996470322817) < 1e-12);
    CHECK(std::abs(alpha(1, 2) - 5.9403699905727125) < 1e-12);
    CHECK(std::abs(alpha(4, 1) - 5.6467036204367963) < 1e-12);
    CHECK(std::abs(alpha(7, 2) - 13.472030353338701) < 1e-12);
    CHECK(std::abs(alpha(2, 3) - 10.613855042316913) < 1e-12);
    CHECK(std::abs(alpha(64, 1) - 67.680656851216135) < 1e-11);
}

TEST_CASE("degree-zero reductions") {
    for (int m = 1; m <= 10; ++m) {
        CHECK(std::abs(rho(0, m) - m * kPi) < 1e-12);
        // j_0' = -j_1, so the zeros coincide.
        CHECK(std::abs(alpha(0, m) - rho(1, m)) < 1e-12);
    }
}

TEST_CASE("returned points are actual zeros") {
    for (int n : {0, 1, 2, 5, 13, 40}) {
        for (int m : {1, 2, 7}) {
            CHECK(std::abs(specfun::psi(n, rho(n, m))) < 1e-10);
            CHECK(std::abs(specfun::psi_prime(n, alpha(n, m))) < 1e-10);
        }
    }
}

TEST_CASE("zeros interlace across degree and index") {
    for (int n = 0; n <= 8; ++n) {
        for (int m = 1; m <= 12; ++m) {
            CHECK(rho(n, m) < rho(n + 1, m));
            CHECK(rho(n + 1, m) < rho(n, m + 1));
            if (n >= 1) {
                // For n >= 1 the profile starts at zero, so each maximum
                // precedes the zero it leads into. Degree 0 peaks at the
                // origin instead and its first stationary point comes after
                // the first zero (alpha(0, m) = rho(1, m)).
                CHECK(alpha(n, m) < rho(n, m));
                CHECK(rho(n, m) < alpha(n, m + 1));
            } else {
                CHECK(rho(0, m) < alpha(0, m));
                CHECK(alpha(0, m) < rho(0, m + 1));
            }
        }
    }
}

TEST_CASE("caching is idempotent and order-independent") {
    const double late = rho(5, 100);
    const double early = rho(5, 1);
    CHECK(rho(5, 100) == late);
    CHECK(rho(5, 1) == early);
    CHECK(early < late);
    const double a = alpha(9, 30);
    CHECK(alpha(9, 30) == a);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS((void)rho(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)rho(65, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)rho(3, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)rho(3, 257), std::invalid_argument);
    CHECK_THROWS_AS((void)alpha(65, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)alpha(3, -2), std::invalid_argument);
}

TEST_CASE("table serialization round trip") {
    const auto table = roots::tabulate(Kind::PsiZero, 0, 3, 4);
    CHECK(table.entries.size() == 16);
    const nlohmann::json j = roots::to_json(table, 2.5);
    CHECK(j.at("kind") == "psi-zero");
    CHECK(j.at("R") == 2.5);
    CHECK(j.at("entries").size() == 16);
    CHECK(j.at("entries")[0].contains("n"));
    CHECK(j.at("entries")[0].contains("m"));
    CHECK(j.at("entries")[0].contains("z"));

    const auto back = roots::table_from_json(j);
    CHECK(back.kind == table.kind);
    REQUIRE(back.entries.size() == table.entries.size());
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        CHECK(back.entries[i].n == table.entries[i].n);
        CHECK(back.entries[i].m == table.entries[i].m);
        CHECK(back.entries[i].z == table.entries[i].z);  // bitwise
    }

    const auto prime = roots::tabulate(Kind::PsiPrimeZero, 1, 2, 2);
    CHECK(roots::to_json(prime, 1.0).at("kind") == "psi-prime-zero");
}

TEST_CASE("kind names round trip") {
    CHECK(roots::kind_from_name(roots::kind_name(Kind::PsiZero)) == Kind::PsiZero);
    CHECK(roots::kind_from_name(roots::kind_name(Kind::PsiPrimeZero)) == Kind::PsiPrimeZero);
    CHECK_THROWS_AS((void)roots::kind_from_name("nonsense"), std::invalid_argument);
}
