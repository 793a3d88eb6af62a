#pragma once

#include <utility>
#include <vector>

#include "nlschwarz/interface.hpp"

namespace nlschwarz {

enum class CoarseSpaceType { GDSW, RGDSW_A, RGDSW_B };

// Scalar interface values of one coarse patch, given per node of each
// lattice. The same values feed both velocity components.
struct InterfacePatch {
    std::vector<std::pair<int, double>> velocity_values;  // (P2 node, value)
    std::vector<std::pair<int, double>> pressure_values;  // (P1 vertex, value)
};

// GDSW: one indicator patch per crossing and per edge. The reduced variants
// keep one patch per crossing, spreading it over the adjacent edges: type A
// decays linearly toward the neighbouring crossing, type B weights every
// edge node by the number of crossings its edge touches. Edges that end at
// the domain boundary have a single crossing, so both variants give their
// nodes full weight. All three choices sum to one on the interface.
std::vector<InterfacePatch> build_interface_patches(
    const InterfaceGeometry& geometry, CoarseSpaceType type);

const char* coarse_space_name(CoarseSpaceType type);

}  // namespace nlschwarz
