#pragma once

#include <vector>

#include "ballmodes/geometry.hpp"
#include "ballmodes/modes.hpp"

namespace ballmodes::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product quadrature on the ball: Gauss-Legendre in r (weights carry the r^2
/// Jacobian), Gauss-Legendre in cos(theta), uniform trapezoid in phi.
/// Total weight equals 4 pi R^3 / 3 to machine precision.
struct BallQuadrature {
    double radius = 1.0;
    std::vector<double> r_nodes, r_weights;          // weight includes r^2 dr
    std::vector<double> theta_nodes, theta_weights;  // weight includes sin(theta) dtheta
    std::vector<double> phi_nodes;
    double phi_weight = 0.0;

    std::size_t node_count() const {
        return r_nodes.size() * theta_nodes.size() * phi_nodes.size();
    }
    double total_weight() const;
};

BallQuadrature build_ball_quadrature(int n_r, int n_theta, int n_phi, double radius);

/// Default orders (48, 48, 96), scaled linearly once max(n, m) of the target
/// mode set exceeds 8.
void default_orders(int max_n, int max_m, int& n_r, int& n_theta, int& n_phi);

/// L2 inner product of two vector fields over the ball. The summation order is
/// fixed, so inner_product(f, g) and inner_product(g, f) agree bitwise.
double inner_product(const FieldEvaluator& f, const FieldEvaluator& g,
                     const BallQuadrature& q);

/// Project a field onto a set of modes: coefficients (f, q_j).
modes::SpectralField project(const FieldEvaluator& f, const std::vector<modes::Mode>& basis,
                             const BallQuadrature& q);

/// Gram matrix (q_i, q_j) of a mode set, with each mode evaluated once per node.
std::vector<std::vector<double>> gram_matrix(const std::vector<modes::Mode>& basis,
                                             const BallQuadrature& q);

/// Quadrature over the unit sphere (Gauss-Legendre in cos(theta), uniform phi).
struct SphereQuadrature {
    std::vector<double> theta_nodes, theta_weights;
    std::vector<double> phi_nodes;
    double phi_weight = 0.0;
};

SphereQuadrature build_sphere_quadrature(int n_theta, int n_phi);

}  // namespace ballmodes::quad
