#pragma once

#include "ballmodes/geometry.hpp"

namespace ballmodes::fd {

/// Fourth-order central difference of one Cartesian component along one axis.
double partial(const CartesianField& f, const Vec3& p, int component, int axis, double h);

/// curl f by fourth-order central differences.
Vec3 curl(const CartesianField& f, const Vec3& p, double h);

/// div f by fourth-order central differences.
double divergence(const CartesianField& f, const Vec3& p, double h);

/// grad(div f) by nested central differences (outer grad over inner div).
Vec3 grad_div(const CartesianField& f, const Vec3& p, double h);

}  // namespace ballmodes::fd
