#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "nlschwarz/cavity.hpp"

namespace nlschwarz {

struct DecompositionConfig {
    int subdomains_per_side = 2;  // must divide the cell count
    int overlap = 1;              // element layers added around each block
};

// One square block of the decomposition. The local space holds every
// unconstrained dof that can move in this subdomain's solve: dofs strictly
// inside the overlap rectangle, plus the ones on rectangle faces that lie on
// the domain boundary (there is no neighbour behind those). Everything else
// in the closure is boundary data for the local problem.
struct Subdomain {
    int cell_lo[2], cell_hi[2];  // nonoverlapping block, cells [lo, hi)
    int olap_lo[2], olap_hi[2];  // with overlap, clipped to the domain
    std::vector<int> cells;      // flattened cell ids covering the rectangle
    std::vector<int> dofs;       // local index -> global dof
    int pressure_begin = 0;      // dofs[pressure_begin..] are pressures
    std::vector<char> owned;     // per local dof: does this block own it?
    std::unordered_map<int, int> global_to_local;
};

class Decomposition {
public:
    Decomposition(const CavityProblem& problem,
                  const DecompositionConfig& cfg);

    const CavityProblem& problem() const { return *prob_; }
    const DecompositionConfig& config() const { return cfg_; }
    int count() const { return static_cast<int>(subs_.size()); }
    int per_side() const { return cfg_.subdomains_per_side; }
    const Subdomain& subdomain(int i) const { return subs_[i]; }

    // Owning block of a lattice node: the lowest-index subdomain whose
    // closed nonoverlapping block contains it.
    int velocity_owner(int vnode) const;
    int pressure_owner(int pnode) const;

    Vector restrict_to(int i, const Vector& global) const;
    void add_prolonged(int i, const Vector& local, Vector& global) const;
    void add_prolonged_restricted(int i, const Vector& local,
                                  Vector& global) const;

    // One line per dof: field, lattice position, owner, membership count.
    void write_classification_csv(const std::string& path) const;

private:
    int axis_owner(int lattice, int stride) const;

    const CavityProblem* prob_;
    DecompositionConfig cfg_;
    int cells_per_block_;
    std::vector<Subdomain> subs_;
};

}  // namespace nlschwarz
