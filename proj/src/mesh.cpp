#include "nlschwarz/mesh.hpp"

#include <stdexcept>

namespace nlschwarz {

Mesh::Mesh(int n) : n_(n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("Mesh: n must be even and >= 2");
    tris_.reserve(2 * n * n);
    for (int cy = 0; cy < n; ++cy) {
        for (int cx = 0; cx < n; ++cx) {
            // P1 corner vertices of the cell
            int ll = pressure_node(cx, cy);
            int lr = pressure_node(cx + 1, cy);
            int ur = pressure_node(cx + 1, cy + 1);
            int ul = pressure_node(cx, cy + 1);
            std::array<std::array<int, 3>, 2> split;
            if (cx < n / 2) {
                split = {{{ll, lr, ur}, {ll, ur, ul}}};
            } else {
                split = {{{ll, lr, ul}, {lr, ur, ul}}};
            }
            for (const auto& tv : split) {
                Triangle t;
                t.v = tv;
                std::array<std::array<int, 2>, 3> lat;
                for (int k = 0; k < 3; ++k) {
                    lat[k] = pressure_lattice(tv[k]);
                    t.q[k] = velocity_node(2 * lat[k][0], 2 * lat[k][1]);
                }
                for (int k = 0; k < 3; ++k) {
                    int a = k, b = (k + 1) % 3;
                    t.q[3 + k] = velocity_node(lat[a][0] + lat[b][0],
                                               lat[a][1] + lat[b][1]);
                }
                tris_.push_back(t);
            }
        }
    }
}

std::array<int, 2> Mesh::cell_triangles(int cx, int cy) const {
    int base = 2 * (cy * n_ + cx);
    return {base, base + 1};
}

std::array<int, 2> Mesh::velocity_lattice(int node) const {
    int w = 2 * n_ + 1;
    return {node % w, node / w};
}

std::array<int, 2> Mesh::pressure_lattice(int node) const {
    int w = n_ + 1;
    return {node % w, node / w};
}

std::array<double, 2> Mesh::velocity_coord(int node) const {
    auto l = velocity_lattice(node);
    double s = 1.0 / (2 * n_);
    return {l[0] * s, l[1] * s};
}

std::array<double, 2> Mesh::pressure_coord(int node) const {
    auto l = pressure_lattice(node);
    double s = 1.0 / n_;
    return {l[0] * s, l[1] * s};
}

bool Mesh::velocity_on_boundary(int node) const {
    auto l = velocity_lattice(node);
    return l[0] == 0 || l[0] == 2 * n_ || l[1] == 0 || l[1] == 2 * n_;
}

}  // namespace nlschwarz
