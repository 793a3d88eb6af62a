#include "nlschwarz/decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace nlschwarz {

Decomposition::Decomposition(const CavityProblem& problem,
                             const DecompositionConfig& cfg)
    : prob_(&problem), cfg_(cfg) {
    const Mesh& mesh = problem.mesh();
    const int n = mesh.cells_per_side();
    const int s = cfg.subdomains_per_side;
    if (s < 1 || n % s != 0)
        throw std::invalid_argument(
            "Decomposition: subdomain count must divide the cell count");
    if (cfg.overlap < 0)
        throw std::invalid_argument("Decomposition: negative overlap");
    cells_per_block_ = n / s;
    const int c = cells_per_block_;
    const int m = cfg.overlap;

    subs_.resize(s * s);
    for (int sy = 0; sy < s; ++sy) {
        for (int sx = 0; sx < s; ++sx) {
            Subdomain& sd = subs_[sy * s + sx];
            sd.cell_lo[0] = sx * c;
            sd.cell_lo[1] = sy * c;
            sd.cell_hi[0] = (sx + 1) * c;
            sd.cell_hi[1] = (sy + 1) * c;
            for (int a = 0; a < 2; ++a) {
                sd.olap_lo[a] = std::max(0, sd.cell_lo[a] - m);
                sd.olap_hi[a] = std::min(n, sd.cell_hi[a] + m);
            }
            for (int cy = sd.olap_lo[1]; cy < sd.olap_hi[1]; ++cy)
                for (int cx = sd.olap_lo[0]; cx < sd.olap_hi[0]; ++cx)
                    sd.cells.push_back(cy * n + cx);

            // A lattice line on the rectangle face is interior data unless
            // the face coincides with the domain boundary.
            auto axis_free = [&](int lat, int scale, int a) {
                int lo = scale * sd.olap_lo[a], hi = scale * sd.olap_hi[a];
                bool lo_ok = lat > lo || sd.olap_lo[a] == 0;
                bool hi_ok = lat < hi || sd.olap_hi[a] == n;
                return lat >= lo && lat <= hi && lo_ok && hi_ok;
            };
            auto push = [&](int dof) {
                sd.global_to_local[dof] = static_cast<int>(sd.dofs.size());
                sd.dofs.push_back(dof);
            };
            for (int pass = 0; pass < 2; ++pass) {
                for (int iy = 2 * sd.olap_lo[1]; iy <= 2 * sd.olap_hi[1]; ++iy) {
                    for (int ix = 2 * sd.olap_lo[0]; ix <= 2 * sd.olap_hi[0];
                         ++ix) {
                        if (!axis_free(ix, 2, 0) || !axis_free(iy, 2, 1))
                            continue;
                        int node = mesh.velocity_node(ix, iy);
                        int dof = pass == 0 ? problem.vx_dof(node)
                                            : problem.vy_dof(node);
                        if (!problem.is_constrained(dof)) push(dof);
                    }
                }
            }
            sd.pressure_begin = static_cast<int>(sd.dofs.size());
            for (int py = sd.olap_lo[1]; py <= sd.olap_hi[1]; ++py) {
                for (int px = sd.olap_lo[0]; px <= sd.olap_hi[0]; ++px) {
                    if (!axis_free(px, 1, 0) || !axis_free(py, 1, 1)) continue;
                    int dof = problem.pressure_dof(mesh.pressure_node(px, py));
                    if (!problem.is_constrained(dof)) push(dof);
                }
            }
        }
    }

    for (int i = 0; i < count(); ++i) {
        Subdomain& sd = subs_[i];
        sd.owned.resize(sd.dofs.size());
        for (size_t k = 0; k < sd.dofs.size(); ++k) {
            int dof = sd.dofs[k];
            int owner;
            if (dof < problem.velocity_dof_count()) {
                int node = dof % mesh.velocity_node_count();
                owner = velocity_owner(node);
            } else {
                owner = pressure_owner(dof - problem.velocity_dof_count());
            }
            sd.owned[k] = owner == i ? 1 : 0;
        }
    }
}

int Decomposition::axis_owner(int lattice, int stride) const {
    int q = lattice / stride;
    if (lattice % stride == 0 && lattice > 0) --q;
    return q;
}

int Decomposition::velocity_owner(int vnode) const {
    auto l = prob_->mesh().velocity_lattice(vnode);
    int stride = 2 * cells_per_block_;
    return axis_owner(l[1], stride) * per_side() + axis_owner(l[0], stride);
}

int Decomposition::pressure_owner(int pnode) const {
    auto l = prob_->mesh().pressure_lattice(pnode);
    return axis_owner(l[1], cells_per_block_) * per_side() +
           axis_owner(l[0], cells_per_block_);
}

Vector Decomposition::restrict_to(int i, const Vector& global) const {
    const Subdomain& sd = subs_[i];
    Vector out(sd.dofs.size());
    for (size_t k = 0; k < sd.dofs.size(); ++k) out(k) = global(sd.dofs[k]);
    return out;
}

void Decomposition::add_prolonged(int i, const Vector& local,
                                  Vector& global) const {
    const Subdomain& sd = subs_[i];
    for (size_t k = 0; k < sd.dofs.size(); ++k) global(sd.dofs[k]) += local(k);
}

void Decomposition::add_prolonged_restricted(int i, const Vector& local,
                                             Vector& global) const {
    const Subdomain& sd = subs_[i];
    for (size_t k = 0; k < sd.dofs.size(); ++k)
        if (sd.owned[k]) global(sd.dofs[k]) += local(k);
}

void Decomposition::write_classification_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    const CavityProblem& p = *prob_;
    const Mesh& mesh = p.mesh();
    f << "dof,field,lattice_x,lattice_y,constrained,owner,member_of\n";
    for (int d = 0; d < p.dof_count(); ++d) {
        const char* field;
        int lx, ly, owner;
        if (d < p.velocity_dof_count()) {
            int node = d % mesh.velocity_node_count();
            auto l = mesh.velocity_lattice(node);
            field = d < mesh.velocity_node_count() ? "vx" : "vy";
            lx = l[0];
            ly = l[1];
            owner = velocity_owner(node);
        } else {
            auto l = mesh.pressure_lattice(d - p.velocity_dof_count());
            field = "p";
            lx = l[0];
            ly = l[1];
            owner = pressure_owner(d - p.velocity_dof_count());
        }
        int member = 0;
        for (const auto& sd : subs_)
            if (sd.global_to_local.count(d)) ++member;
        f << d << "," << field << "," << lx << "," << ly << ","
          << (p.is_constrained(d) ? 1 : 0) << "," << owner << "," << member
          << "\n";
    }
}

}  // namespace nlschwarz
