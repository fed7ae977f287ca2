#pragma once

#include "auxeig/mesh.hpp"

#include <map>
#include <string>

namespace auxeig
{

// Boundary condition per bridge-domain segment label "A".."L".
using SegmentConditions = std::map<std::string, BoundaryCondition>;

// Row `bc_case` (1..10) of the bridge configuration table, with the bridge
// sides B and H set to `bridge_bc`.
SegmentConditions bridge_boundary_config(int bc_case, BoundaryCondition bridge_bc);

}  // namespace auxeig
