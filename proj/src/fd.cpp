#include "ballmodes/fd.hpp"

namespace ballmodes::fd {

namespace {

Vec3 shift(const Vec3& p, int axis, double d) {
    Vec3 q = p;
    if (axis == 0) q.x += d;
    if (axis == 1) q.y += d;
    if (axis == 2) q.z += d;
    return q;
}

double component(const Vec3& v, int c) { return c == 0 ? v.x : (c == 1 ? v.y : v.z); }

}  // namespace

double partial(const CartesianField& f, const Vec3& p, int comp, int axis, double h) {
    const double f1 = component(f(shift(p, axis, h)), comp);
    const double fm1 = component(f(shift(p, axis, -h)), comp);
    const double f2 = component(f(shift(p, axis, 2.0 * h)), comp);
    const double fm2 = component(f(shift(p, axis, -2.0 * h)), comp);
    return (8.0 * (f1 - fm1) - (f2 - fm2)) / (12.0 * h);
}

Vec3 curl(const CartesianField& f, const Vec3& p, double h) {
    return {partial(f, p, 2, 1, h) - partial(f, p, 1, 2, h),
            partial(f, p, 0, 2, h) - partial(f, p, 2, 0, h),
            partial(f, p, 1, 0, h) - partial(f, p, 0, 1, h)};
}

double divergence(const CartesianField& f, const Vec3& p, double h) {
    return partial(f, p, 0, 0, h) + partial(f, p, 1, 1, h) + partial(f, p, 2, 2, h);
}

Vec3 grad_div(const CartesianField& f, const Vec3& p, double h) {
    auto div_at = [&](const Vec3& q) { return divergence(f, q, h); };
    Vec3 g;
    g.x = (8.0 * (div_at(shift(p, 0, h)) - div_at(shift(p, 0, -h))) -
           (div_at(shift(p, 0, 2.0 * h)) - div_at(shift(p, 0, -2.0 * h)))) /
          (12.0 * h);
    g.y = (8.0 * (div_at(shift(p, 1, h)) - div_at(shift(p, 1, -h))) -
           (div_at(shift(p, 1, 2.0 * h)) - div_at(shift(p, 1, -2.0 * h)))) /
          (12.0 * h);
    g.z = (8.0 * (div_at(shift(p, 2, h)) - div_at(shift(p, 2, -h))) -
           (div_at(shift(p, 2, 2.0 * h)) - div_at(shift(p, 2, -2.0 * h)))) /
          (12.0 * h);
    return g;
}

}  // namespace ballmodes::fd
