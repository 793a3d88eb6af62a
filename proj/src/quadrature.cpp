#include "nlschwarz/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nlschwarz {

// Legendre P_n and its derivative at x, by recurrence.
static void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

void gauss_legendre_unit(int n, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_unit: n < 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        // Roots of P_n on (-1,1) by Newton from the Chebyshev guess.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        // Nodes come out descending in x; store ascending on [0,1].
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

std::vector<TrianglePoint> duffy_triangle_rule(int points_per_direction,
                                               bool collapse_first_axis) {
    std::vector<double> x, w;
    gauss_legendre_unit(points_per_direction, x, w);
    std::vector<TrianglePoint> rule;
    rule.reserve(points_per_direction * points_per_direction);
    for (int i = 0; i < points_per_direction; ++i) {
        for (int j = 0; j < points_per_direction; ++j) {
            double u = x[i], v = x[j];
            TrianglePoint q;
            if (collapse_first_axis) {
                q.xi = u * v;
                q.eta = v * (1.0 - u);
                q.weight = w[i] * w[j] * v;
            } else {
                q.xi = u * (1.0 - v);
                q.eta = u * v;
                q.weight = w[i] * w[j] * u;
            }
            rule.push_back(q);
        }
    }
    return rule;
}

}  // namespace nlschwarz
