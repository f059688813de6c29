#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ballmodes::detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
/// Nodes ascend; the rule is exact for polynomials of degree 2n-1.
inline void gauss_legendre_impl(int n, std::vector<double>& nodes,
                                std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dpn = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dpn = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

}  // namespace ballmodes::detail
