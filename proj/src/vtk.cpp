#include "nlschwarz/vtk.hpp"

#include <fstream>
#include <stdexcept>

namespace nlschwarz {

// Pressure at a velocity-lattice node: vertex values pass through, edge
// midpoints average their endpoints (exact for a linear field). The node at
// a cell center sits on the cell's diagonal edge, whose direction depends on
// which half of the mesh the cell is in.
static double pressure_at(const CavityProblem& prob, const Vector& u, int ix,
                          int iy) {
    const Mesh& m = prob.mesh();
    int n = m.cells_per_side();
    auto pval = [&](int px, int py) {
        return u(prob.pressure_dof(m.pressure_node(px, py)));
    };
    bool ex = ix % 2 == 0, ey = iy % 2 == 0;
    if (ex && ey) return pval(ix / 2, iy / 2);
    if (!ex && ey) return 0.5 * (pval((ix - 1) / 2, iy / 2) +
                                 pval((ix + 1) / 2, iy / 2));
    if (ex && !ey) return 0.5 * (pval(ix / 2, (iy - 1) / 2) +
                                 pval(ix / 2, (iy + 1) / 2));
    int cx = (ix - 1) / 2;
    if (cx < n / 2)
        return 0.5 * (pval(cx, (iy - 1) / 2) + pval(cx + 1, (iy + 1) / 2));
    return 0.5 * (pval(cx + 1, (iy - 1) / 2) + pval(cx, (iy + 1) / 2));
}

void write_cavity_vtk(const std::string& path, const CavityProblem& prob,
                      const Vector& state) {
    const Mesh& m = prob.mesh();
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f.precision(10);
    f << "# vtk DataFile Version 3.0\n";
    f << "cavity state\n";
    f << "ASCII\n";
    f << "DATASET UNSTRUCTURED_GRID\n";

    int npts = m.velocity_node_count();
    f << "POINTS " << npts << " double\n";
    for (int i = 0; i < npts; ++i) {
        auto c = m.velocity_coord(i);
        f << c[0] << " " << c[1] << " 0\n";
    }

    int nt = m.triangle_count();
    f << "CELLS " << nt << " " << 7 * nt << "\n";
    for (int t = 0; t < nt; ++t) {
        const Triangle& tri = m.triangle(t);
        f << 6;
        for (int k = 0; k < 6; ++k) f << " " << tri.q[k];
        f << "\n";
    }
    f << "CELL_TYPES " << nt << "\n";
    for (int t = 0; t < nt; ++t) f << 22 << "\n";  // quadratic triangle

    f << "POINT_DATA " << npts << "\n";
    f << "VECTORS velocity double\n";
    for (int i = 0; i < npts; ++i)
        f << state(prob.vx_dof(i)) << " " << state(prob.vy_dof(i)) << " 0\n";
    f << "SCALARS pressure double 1\n";
    f << "LOOKUP_TABLE default\n";
    for (int i = 0; i < npts; ++i) {
        auto l = m.velocity_lattice(i);
        f << pressure_at(prob, state, l[0], l[1]) << "\n";
    }
}

}  // namespace nlschwarz
