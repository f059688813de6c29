#include "ballmodes/quad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gauss.hpp"

namespace ballmodes::quad {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    ballmodes::detail::gauss_legendre_impl(n, nodes, weights);
}

double BallQuadrature::total_weight() const {
    double wr = 0.0, wt = 0.0;
    for (double w : r_weights) wr += w;
    for (double w : theta_weights) wt += w;
    return wr * wt * (phi_weight * static_cast<double>(phi_nodes.size()));
}

BallQuadrature build_ball_quadrature(int n_r, int n_theta, int n_phi, double radius) {
    if (n_r < 2 || n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("ball quadrature needs at least 2 nodes per direction");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("ball quadrature: radius must be positive");
    BallQuadrature q;
    q.radius = radius;

    std::vector<double> x, w;
    ballmodes::detail::gauss_legendre_impl(n_r, x, w);
    q.r_nodes.resize(n_r);
    q.r_weights.resize(n_r);
    for (int i = 0; i < n_r; ++i) {
        const double r = 0.5 * radius * (x[i] + 1.0);
        q.r_nodes[i] = r;
        q.r_weights[i] = 0.5 * radius * w[i] * r * r;  // carries the r^2 Jacobian
    }

    ballmodes::detail::gauss_legendre_impl(n_theta, x, w);
    q.theta_nodes.resize(n_theta);
    q.theta_weights.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        // Gauss in u = cos(theta); ascending u maps to descending theta.
        q.theta_nodes[j] = std::acos(x[n_theta - 1 - j]);
        q.theta_weights[j] = w[n_theta - 1 - j];
    }

    q.phi_nodes.resize(n_phi);
    for (int l = 0; l < n_phi; ++l) q.phi_nodes[l] = 2.0 * kPi * (static_cast<double>(l) / n_phi);
    q.phi_weight = 2.0 * kPi / n_phi;
    return q;
}

void default_orders(int max_n, int max_m, int& n_r, int& n_theta, int& n_phi) {
    const int level = std::max(std::max(max_n, max_m), 1);
    const double scale = std::max(1.0, level / 8.0);
    n_r = static_cast<int>(std::ceil(48 * scale));
    n_theta = static_cast<int>(std::ceil(48 * scale));
    n_phi = static_cast<int>(std::ceil(96 * scale));
}

namespace {

[[noreturn]] void rethrow_with_node(const std::exception& e, const SphericalPoint& p) {
    throw std::runtime_error("field evaluation failed at r=" + std::to_string(p.r) +
                             " theta=" + std::to_string(p.theta) +
                             " phi=" + std::to_string(p.phi) + ": " + e.what());
}

}  // namespace

double inner_product(const FieldEvaluator& f, const FieldEvaluator& g, const BallQuadrature& q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q.r_nodes.size(); ++i) {
        for (std::size_t j = 0; j < q.theta_nodes.size(); ++j) {
            const double w_rt = q.r_weights[i] * q.theta_weights[j];
            double slice = 0.0;
            for (std::size_t l = 0; l < q.phi_nodes.size(); ++l) {
                const SphericalPoint p{q.r_nodes[i], q.theta_nodes[j], q.phi_nodes[l]};
                VectorValue fv, gv;
                try {
                    fv = f(p);
                    gv = g(p);
                } catch (const std::exception& e) {
                    rethrow_with_node(e, p);
                }
                slice += dot(fv, gv);
            }
            acc += w_rt * q.phi_weight * slice;
        }
    }
    return acc;
}

modes::SpectralField project(const FieldEvaluator& f, const std::vector<modes::Mode>& basis,
                             const BallQuadrature& q) {
    modes::SpectralField out;
    out.radius = q.radius;
    if (basis.empty()) return out;
    for (const auto& mode : basis) {
        if (std::abs(mode.radius - q.radius) > 1e-12 * q.radius)
            throw std::invalid_argument("project: mode radius does not match the quadrature");
    }
    std::vector<double> acc(basis.size(), 0.0);
    for (std::size_t i = 0; i < q.r_nodes.size(); ++i) {
        for (std::size_t j = 0; j < q.theta_nodes.size(); ++j) {
            const double w_rt = q.r_weights[i] * q.theta_weights[j];
            for (std::size_t l = 0; l < q.phi_nodes.size(); ++l) {
                const SphericalPoint p{q.r_nodes[i], q.theta_nodes[j], q.phi_nodes[l]};
                VectorValue fv;
                try {
                    fv = f(p);
                } catch (const std::exception& e) {
                    rethrow_with_node(e, p);
                }
                const double w = w_rt * q.phi_weight;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    acc[b] += w * dot(fv, modes::eval_mode(basis[b], p));
            }
        }
    }
    for (std::size_t b = 0; b < basis.size(); ++b) out.coefficients[basis[b].index] = acc[b];
    return out;
}

std::vector<std::vector<double>> gram_matrix(const std::vector<modes::Mode>& basis,
                                             const BallQuadrature& q) {
    const std::size_t nb = basis.size();
    const std::size_t nn = q.node_count();
    std::vector<std::vector<VectorValue>> vals(nb);
    std::vector<double> weights(nn);
    {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < q.r_nodes.size(); ++i)
            for (std::size_t j = 0; j < q.theta_nodes.size(); ++j)
                for (std::size_t l = 0; l < q.phi_nodes.size(); ++l)
                    weights[idx++] = q.r_weights[i] * q.theta_weights[j] * q.phi_weight;
    }
    for (std::size_t b = 0; b < nb; ++b) {
        vals[b].resize(nn);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < q.r_nodes.size(); ++i)
            for (std::size_t j = 0; j < q.theta_nodes.size(); ++j)
                for (std::size_t l = 0; l < q.phi_nodes.size(); ++l) {
                    const SphericalPoint p{q.r_nodes[i], q.theta_nodes[j], q.phi_nodes[l]};
                    vals[b][idx++] = modes::eval_mode(basis[b], p);
                }
    }
    std::vector<std::vector<double>> gram(nb, std::vector<double>(nb, 0.0));
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = a; b < nb; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < nn; ++i) acc += weights[i] * dot(vals[a][i], vals[b][i]);
            gram[a][b] = acc;
            gram[b][a] = acc;
        }
    }
    return gram;
}

SphereQuadrature build_sphere_quadrature(int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("sphere quadrature needs at least 2 nodes per direction");
    SphereQuadrature q;
    std::vector<double> x, w;
    ballmodes::detail::gauss_legendre_impl(n_theta, x, w);
    q.theta_nodes.resize(n_theta);
    q.theta_weights.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        q.theta_nodes[j] = std::acos(x[n_theta - 1 - j]);
        q.theta_weights[j] = w[n_theta - 1 - j];
    }
    q.phi_nodes.resize(n_phi);
    for (int l = 0; l < n_phi; ++l) q.phi_nodes[l] = 2.0 * kPi * (static_cast<double>(l) / n_phi);
    q.phi_weight = 2.0 * kPi / n_phi;
    return q;
}

}  // namespace ballmodes::quad
