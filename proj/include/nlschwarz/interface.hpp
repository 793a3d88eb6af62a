#pragma once

#include <vector>

#include "nlschwarz/decomposition.hpp"

namespace nlschwarz {

struct InterfaceCross {
    int kx, ky;  // block-line indices, 1..s-1
    int vnode;   // velocity node at the crossing
    int pnode;   // pressure vertex at the crossing
};

// Open segment of a block line between two crossings, or between a crossing
// and the domain boundary. Nodes are listed in ascending order along the
// line and exclude the endpoints.
struct InterfaceEdge {
    bool vertical;
    int line_k;                      // block line index, 1..s-1
    int segment;                     // 0..s-1 along the line
    int cross_lo = -1, cross_hi = -1;  // -1 when the end hits the boundary
    std::vector<int> velocity_nodes;
    std::vector<int> pressure_nodes;
};

// Skeleton of the nonoverlapping decomposition: the velocity and pressure
// nodes on internal block lines, with domain-boundary nodes left out, split
// into crossings and the edge segments between them.
class InterfaceGeometry {
public:
    explicit InterfaceGeometry(const Decomposition& dec);

    const Decomposition& decomposition() const { return *dec_; }
    const std::vector<InterfaceCross>& crosses() const { return crosses_; }
    const std::vector<InterfaceEdge>& edges() const { return edges_; }
    const std::vector<int>& edges_at_cross(int cross) const {
        return cross_edges_[cross];
    }

    // Fractional position of a node along an edge: 0 at the lower end of
    // the segment, 1 at the upper end (measured between the segment's
    // endpoints, whether crossings or the boundary).
    double velocity_position(const InterfaceEdge& e, int vnode) const;
    double pressure_position(const InterfaceEdge& e, int pnode) const;

private:
    const Decomposition* dec_;
    std::vector<InterfaceCross> crosses_;
    std::vector<InterfaceEdge> edges_;
    std::vector<std::vector<int>> cross_edges_;
};

}  // namespace nlschwarz
