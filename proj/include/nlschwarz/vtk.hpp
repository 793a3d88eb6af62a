#pragma once

#include <string>

#include "nlschwarz/cavity.hpp"

namespace nlschwarz {

// Legacy ASCII VTK with quadratic triangle cells. Velocity is written as a
// point vector field; the piecewise linear pressure is interpolated to the
// quadratic lattice for the point scalar field. Works for solution states
// and for any other dof vector (coarse basis columns, corrections, ...).
void write_cavity_vtk(const std::string& path, const CavityProblem& problem,
                      const Vector& state);

}  // namespace nlschwarz
