#include "ballmodes/roots.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "ballmodes/geometry.hpp"
#include "ballmodes/specfun.hpp"

namespace ballmodes::roots {

namespace {

double f_value(Kind kind, int n, double z) {
    return kind == Kind::PsiZero ? specfun::psi(n, z) : specfun::psi_prime(n, z);
}

double f_derivative(Kind kind, int n, double z) {
    if (kind == Kind::PsiZero) return specfun::psi_prime(n, z);
    // j_n'' from the defining ODE: j'' = -(2/z) j' - (1 - n(n+1)/z^2) j.
    double v, d;
    specfun::psi_and_prime(n, z, &v, &d);
    return -(2.0 / z) * d - (1.0 - n * (n + 1.0) / (z * z)) * v;
}

/// Bisection to width 1e-6, then Newton polish clamped to the bracket.
double refine(Kind kind, int n, double a, double b) {
    double fa = f_value(kind, n, a);
    while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        const double fm = f_value(kind, n, m);
        if (fm == 0.0) {
            a = b = m;
            break;
        }
        if (fa * fm < 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    double z = 0.5 * (a + b);
    const double lo = a - 1e-5, hi = b + 1e-5;
    for (int iter = 0; iter < 50; ++iter) {
        const double fz = f_value(kind, n, z);
        const double dz = fz / f_derivative(kind, n, z);
        z -= dz;
        if (z < lo) z = lo;
        if (z > hi) z = hi;
        if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    if (std::abs(f_value(kind, n, z)) > 1e-9)
        throw std::runtime_error("root refinement failed for " + kind_name(kind) +
                                 " n=" + std::to_string(n) + " near z=" + std::to_string(z));
    return z;
}

/// Extend the cached zero list for degree n until it holds m_target entries.
/// Scan step pi/8 is safely below the asymptotic zero spacing of pi.
void extend(Kind kind, int n, int m_target, std::vector<double>& row) {
    const double step = kPi / 8.0;
    const double z_max = (m_target + 0.5 * n + 2.0) * kPi;
    double z = row.empty() ? std::max(0.5 * n, 0.05) : row.back() + 0.25 * step;
    double fz = f_value(kind, n, z);
    while (static_cast<int>(row.size()) < m_target && z < z_max) {
        const double z2 = z + step;
        const double f2 = f_value(kind, n, z2);
        if (fz == 0.0) {
            row.push_back(z);
        } else if (fz * f2 < 0.0) {
            row.push_back(refine(kind, n, z, z2));
        }
        z = z2;
        fz = f2;
    }
    if (static_cast<int>(row.size()) < m_target)
        throw std::runtime_error("zero scan exhausted its interval: " + kind_name(kind) +
                                 " n=" + std::to_string(n) + " m=" + std::to_string(m_target));
}

struct Cache {
    std::mutex mutex;
    std::array<std::vector<double>, kMaxDegree + 1> rows;
};

Cache& cache_for(Kind kind) {
    static Cache psi_cache, prime_cache;
    return kind == Kind::PsiZero ? psi_cache : prime_cache;
}

double nth_zero(Kind kind, int n, int m) {
    if (n < 0 || n > kMaxDegree)
        throw std::invalid_argument("zero lookup: degree out of range: n=" + std::to_string(n));
    if (m < 1 || m > kMaxIndex)
        throw std::invalid_argument("zero lookup: index out of range: m=" + std::to_string(m));
    Cache& cache = cache_for(kind);
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto& row = cache.rows[n];
    if (static_cast<int>(row.size()) < m) extend(kind, n, m, row);
    return row[m - 1];
}

}  // namespace

std::string kind_name(Kind kind) {
    return kind == Kind::PsiZero ? "psi-zero" : "psi-prime-zero";
}

Kind kind_from_name(const std::string& name) {
    if (name == "psi-zero") return Kind::PsiZero;
    if (name == "psi-prime-zero") return Kind::PsiPrimeZero;
    throw std::invalid_argument("unknown root table kind: " + name);
}

double rho(int n, int m) { return nth_zero(Kind::PsiZero, n, m); }

double alpha(int n, int m) { return nth_zero(Kind::PsiPrimeZero, n, m); }

RootTable tabulate(Kind kind, int n_lo, int n_hi, int m_max) {
    if (n_lo < 0 || n_hi > kMaxDegree || n_lo > n_hi)
        throw std::invalid_argument("tabulate: bad degree range");
    if (m_max < 1 || m_max > kMaxIndex) throw std::invalid_argument("tabulate: bad index range");
    RootTable table;
    table.kind = kind;
    table.tolerance = 1e-12;
    for (int n = n_lo; n <= n_hi; ++n)
        for (int m = 1; m <= m_max; ++m)
            table.entries.push_back({n, m, nth_zero(kind, n, m)});
    return table;
}

nlohmann::json to_json(const RootTable& table, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("to_json: radius must be positive");
    nlohmann::json j;
    j["kind"] = kind_name(table.kind);
    j["R"] = radius;
    j["tolerance"] = table.tolerance;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : table.entries) entries.push_back({{"n", e.n}, {"m", e.m}, {"z", e.z}});
    j["entries"] = std::move(entries);
    return j;
}

RootTable table_from_json(const nlohmann::json& j) {
    RootTable table;
    table.kind = kind_from_name(j.at("kind").get<std::string>());
    table.tolerance = j.value("tolerance", 1e-12);
    for (const auto& e : j.at("entries")) {
        RootEntry entry{e.at("n").get<int>(), e.at("m").get<int>(), e.at("z").get<double>()};
        if (entry.n < 0 || entry.n > kMaxDegree || entry.m < 1 || entry.m > kMaxIndex ||
            !(entry.z > 0.0))
            throw std::invalid_argument("root table entry out of range");
        table.entries.push_back(entry);
    }
    return table;
}

}  // namespace ballmodes::roots
