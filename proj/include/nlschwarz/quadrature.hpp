#pragma once

#include <vector>

namespace nlschwarz {

struct TrianglePoint {
    double xi, eta, weight;
};

// n-point Gauss-Legendre rule on [0,1], nodes ascending.
void gauss_legendre_unit(int n, std::vector<double>& nodes,
                         std::vector<double>& weights);

// Tensor Gauss rule collapsed onto the reference triangle
// {xi, eta >= 0, xi + eta <= 1}. Exact for total degree
// <= 2 * points_per_direction - 2. The collapse direction is selectable so
// two rules with different point layouts can cross-check each other.
std::vector<TrianglePoint> duffy_triangle_rule(int points_per_direction,
                                               bool collapse_first_axis = false);

}  // namespace nlschwarz
