#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ballmodes/geometry.hpp"

namespace ballmodes::modes {

/// Eigenfield family: the two curl (Beltrami) branches and the gradient-of-
/// divergence branch.
enum class Family { CurlPlus, CurlMinus, GradDiv };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Index of one eigenfield. Degree n, radial index m >= 1, azimuthal index
/// |k| <= n. Curl families need n >= 1 (there are no spherically symmetric
/// Beltrami fields); graddiv allows n = 0.
struct ModeIndex {
    Family family = Family::CurlPlus;
    int n = 0;
    int m = 1;
    int k = 0;

    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

bool is_valid(const ModeIndex& idx);
void require_valid(const ModeIndex& idx);

/// Fully instantiated mode on the ball of radius `radius`:
/// eigenvalue is +rho_{n,m}/R for curl+, -rho_{n,m}/R for curl-, and
/// -(alpha_{n,m}/R)^2 for graddiv; normalization makes the L2 norm 1.
struct Mode {
    ModeIndex index;
    double eigenvalue = 0.0;
    double normalization = 1.0;
    double radius = 1.0;
};

Mode make_mode(const ModeIndex& idx, double radius);

/// Eigenvalue alone, without the normalization quadrature.
double eigenvalue_of(const ModeIndex& idx, double radius);

/// L2-normalization constant, computed from the exact radial integrals by
/// Gauss-Legendre quadrature and memoized per (family class, n, m, radius).
/// Independent of k.
double normalization_constant(const ModeIndex& idx, double radius);

/// Evaluate a curl-family mode at a point of the closed ball.
VectorValue eval_curl_mode(const Mode& mode, const SphericalPoint& p);

/// Evaluate a graddiv-family mode at a point of the closed ball.
VectorValue eval_graddiv_mode(const Mode& mode, const SphericalPoint& p);

/// Family-dispatched evaluation.
VectorValue eval_mode(const Mode& mode, const SphericalPoint& p);

FieldEvaluator make_evaluator(const Mode& mode);

/// Enumerate all modes of the given families with |eigenvalue| <= cutoff,
/// sorted by |eigenvalue| with ties broken by (n, m, k, family).
std::vector<Mode> enumerate_up_to(const std::vector<Family>& families,
                                  double cutoff, double radius);

/// First `count` modes in the same ordering.
std::vector<Mode> enumerate_first(const std::vector<Family>& families,
                                  int count, double radius);

/// Truncated expansion over the eigenbasis: radius plus a coefficient per mode.
struct SpectralField {
    double radius = 1.0;
    std::map<ModeIndex, double> coefficients;
};

/// Pointwise synthesis sum_j c_j q_j(p). Prefer make_evaluator for repeated
/// evaluation; it instantiates the modes once.
VectorValue synthesize(const SpectralField& field, const SphericalPoint& p);

FieldEvaluator make_evaluator(const SpectralField& field);

}  // namespace ballmodes::modes
