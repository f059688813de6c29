#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ballmodes::roots {

/// Which function's positive zeros a table holds.
enum class Kind { PsiZero, PsiPrimeZero };

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

/// m-th positive zero of j_n (m >= 1, counted in increasing order).
/// Results are cached per degree; repeated calls are bit-identical.
double rho(int n, int m);

/// m-th positive zero of j_n'.
double alpha(int n, int m);

struct RootEntry {
    int n = 0;
    int m = 0;
    double z = 0.0;
};

struct RootTable {
    Kind kind = Kind::PsiZero;
    double tolerance = 0.0;
    std::vector<RootEntry> entries;  // sorted by (n, m)
};

/// Tabulate zeros for all n in [n_lo, n_hi], m in [1, m_max].
RootTable tabulate(Kind kind, int n_lo, int n_hi, int m_max);

/// Serialize as {"kind": ..., "R": ..., "entries": [{"n","m","z"}...]}.
/// R only scales the interpretation downstream; the stored z values are the
/// raw zeros of the underlying function.
nlohmann::json to_json(const RootTable& table, double radius);
RootTable table_from_json(const nlohmann::json& j);

/// Bounds honoured by rho/alpha.
inline constexpr int kMaxDegree = 64;
inline constexpr int kMaxIndex = 256;

}  // namespace ballmodes::roots
