#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ballmodes/modes.hpp"

namespace ballmodes::spectral {

/// Operator acting diagonally on coefficients: the curl operator S (both sign
/// families) or the gradient-of-divergence operator.
enum class Operator { Curl, GradDiv };

/// Does a mode family belong to an operator's eigenbasis?
bool family_matches(modes::Family f, Operator op);

/// Integer power of the operator applied in coefficient space:
/// curl modes scale by eigenvalue^p (signed), graddiv modes by (-nu^2)^p.
/// Every stored mode must belong to `op`; p must be nonzero (negative powers
/// invert, which the nonzero spectrum always permits).
modes::SpectralField apply_power(const modes::SpectralField& field, Operator op, int p);

/// Sobolev-type scale on an operator's eigenbasis.
/// For GradDiv the scale is graded by even orders 2k with weight nu_j^{4k};
/// for Curl by integer orders m with weight lambda_j^{2m}. Orders may be
/// negative (dual norms).
struct ScaleOrder {
    Operator op = Operator::Curl;
    int order = 0;  // GradDiv: the even exponent 2k; Curl: the order m
};

void require_valid(const ScaleOrder& s);

/// Weighted l2 norm sqrt(sum w_j c_j^2) over the modes of the scale's family;
/// modes of the other family are ignored so mixed fields can be measured on
/// both scales.
double scale_norm(const modes::SpectralField& field, const ScaleOrder& s);

/// Joint regularity class: graddiv part measured at even order 2k, curl part
/// at order m.
struct ClassC {
    int k = 0;
    int m = 0;
};

/// Finite-truncation regularity report: the two scale norms plus the fraction
/// of each weighted sum carried by the last decile of modes (largest
/// |eigenvalue|). Large tail ratios mean the truncation says nothing about
/// actual class membership.
struct ClassReport {
    double graddiv_norm = 0.0;
    double curl_norm = 0.0;
    double graddiv_tail_ratio = 0.0;
    double curl_tail_ratio = 0.0;
    std::size_t graddiv_mode_count = 0;
    std::size_t curl_mode_count = 0;
};

ClassReport class_report(const modes::SpectralField& field, const ClassC& c);

/// Solve L^order u = rhs for the positive-definite fourth-order compositions
/// (order 1: one factor of the squared operator), i.e. coefficients divide by
/// eigenvalue^{2 order}. Equivalent to apply_power(rhs, op, -2 * order).
modes::SpectralField solve_poly(const modes::SpectralField& rhs, Operator op, int order);

/// JSON round trip: {"R": ..., "modes": [{"family","n","m","k","c"}...]}.
nlohmann::json to_json(const modes::SpectralField& field);
modes::SpectralField field_from_json(const nlohmann::json& j);

std::string operator_name(Operator op);
Operator operator_from_name(const std::string& name);

}  // namespace ballmodes::spectral
