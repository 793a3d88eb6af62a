#pragma once

#include <array>
#include <vector>

namespace nlschwarz {

struct Triangle {
    std::array<int, 3> v;  // pressure vertices (P1), counter-clockwise
    std::array<int, 6> q;  // velocity nodes (P2): corners, then midpoints
                           // of edges 01, 12, 20
};

// Structured Taylor-Hood triangulation of the unit square with n x n cells,
// two triangles each. Cells in the left half are split along the diagonal
// from their lower-left corner and cells in the right half along the one
// from the lower-right corner, which makes the mesh mirror symmetric about
// x = 1/2. Velocity nodes live on the (2n+1)^2 lattice, pressure vertices
// on the (n+1)^2 lattice.
class Mesh {
public:
    explicit Mesh(int n);  // n even, >= 2

    int cells_per_side() const { return n_; }
    double h() const { return 1.0 / n_; }

    int triangle_count() const { return static_cast<int>(tris_.size()); }
    const Triangle& triangle(int t) const { return tris_[t]; }
    std::array<int, 2> cell_triangles(int cx, int cy) const;

    int velocity_node_count() const { return (2 * n_ + 1) * (2 * n_ + 1); }
    int pressure_node_count() const { return (n_ + 1) * (n_ + 1); }

    int velocity_node(int ix, int iy) const { return iy * (2 * n_ + 1) + ix; }
    int pressure_node(int ix, int iy) const { return iy * (n_ + 1) + ix; }
    std::array<int, 2> velocity_lattice(int node) const;
    std::array<int, 2> pressure_lattice(int node) const;
    std::array<double, 2> velocity_coord(int node) const;
    std::array<double, 2> pressure_coord(int node) const;
    bool velocity_on_boundary(int node) const;

private:
    int n_;
    std::vector<Triangle> tris_;
};

}  // namespace nlschwarz
