#include "nlschwarz/interface.hpp"

namespace nlschwarz {

InterfaceGeometry::InterfaceGeometry(const Decomposition& dec) : dec_(&dec) {
    const Mesh& mesh = dec.problem().mesh();
    const int s = dec.per_side();
    const int n = mesh.cells_per_side();
    const int c = n / s;

    for (int ky = 1; ky < s; ++ky)
        for (int kx = 1; kx < s; ++kx)
            crosses_.push_back({kx, ky,
                                mesh.velocity_node(2 * c * kx, 2 * c * ky),
                                mesh.pressure_node(c * kx, c * ky)});
    auto cross_id = [&](int kx, int ky) {
        if (kx < 1 || kx >= s || ky < 1 || ky >= s) return -1;
        return (ky - 1) * (s - 1) + (kx - 1);
    };

    for (int pass = 0; pass < 2; ++pass) {
        bool vertical = pass == 0;
        for (int k = 1; k < s; ++k) {
            for (int seg = 0; seg < s; ++seg) {
                InterfaceEdge e;
                e.vertical = vertical;
                e.line_k = k;
                e.segment = seg;
                e.cross_lo = vertical ? cross_id(k, seg) : cross_id(seg, k);
                e.cross_hi =
                    vertical ? cross_id(k, seg + 1) : cross_id(seg + 1, k);
                for (int iv = 2 * c * seg + 1; iv < 2 * c * (seg + 1); ++iv)
                    e.velocity_nodes.push_back(
                        vertical ? mesh.velocity_node(2 * c * k, iv)
                                 : mesh.velocity_node(iv, 2 * c * k));
                for (int ip = c * seg + 1; ip < c * (seg + 1); ++ip)
                    e.pressure_nodes.push_back(
                        vertical ? mesh.pressure_node(c * k, ip)
                                 : mesh.pressure_node(ip, c * k));
                edges_.push_back(std::move(e));
            }
        }
    }

    cross_edges_.resize(crosses_.size());
    for (size_t ei = 0; ei < edges_.size(); ++ei) {
        const InterfaceEdge& e = edges_[ei];
        if (e.cross_lo >= 0)
            cross_edges_[e.cross_lo].push_back(static_cast<int>(ei));
        if (e.cross_hi >= 0)
            cross_edges_[e.cross_hi].push_back(static_cast<int>(ei));
    }
}

double InterfaceGeometry::velocity_position(const InterfaceEdge& e,
                                            int vnode) const {
    const Mesh& mesh = dec_->problem().mesh();
    const int c = mesh.cells_per_side() / dec_->per_side();
    auto l = mesh.velocity_lattice(vnode);
    int along = e.vertical ? l[1] : l[0];
    return (along - 2.0 * c * e.segment) / (2.0 * c);
}

double InterfaceGeometry::pressure_position(const InterfaceEdge& e,
                                            int pnode) const {
    const Mesh& mesh = dec_->problem().mesh();
    const int c = mesh.cells_per_side() / dec_->per_side();
    auto l = mesh.pressure_lattice(pnode);
    int along = e.vertical ? l[1] : l[0];
    return (along - 1.0 * c * e.segment) / c;
}

}  // namespace nlschwarz
