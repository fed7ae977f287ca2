#include "auxeig/bridge_config.hpp"

#include "auxeig/errors.hpp"

#include <array>

namespace auxeig
{

SegmentConditions bridge_boundary_config(int bc_case, BoundaryCondition bridge_bc)
{
  // Columns A C D E F G I J K L; B and H carry the bridge condition.
  static const std::array<const char*, 10> rows{
      "DDNDDNDNDN", "DDNDNDDNDN", "DNDNNDDNDN", "DNDNDNDNDN", "NDNDDNNDND",
      "NNDNNDNDND", "NNDNDNNDND", "NDNDDNDNDD", "NNDNNDDNDD", "DNDNNDNDNN",
  };
  static const std::array<const char*, 10> labels{"A", "C", "D", "E", "F", "G", "I", "J", "K", "L"};
  if (bc_case < 1 || bc_case > 10)
    throw ConfigurationError("bridge case must be in 1..10, got " + std::to_string(bc_case));
  SegmentConditions out;
  const char* row = rows[bc_case - 1];
  for (int i = 0; i < 10; ++i)
    out[labels[i]] = row[i] == 'D' ? BoundaryCondition::Dirichlet : BoundaryCondition::Neumann;
  out["B"] = bridge_bc;
  out["H"] = bridge_bc;
  return out;
}

}  // namespace auxeig
