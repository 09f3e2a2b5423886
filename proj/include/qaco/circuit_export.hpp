#pragma once

#include <string>
#include <vector>

#include "qaco/density_matrix.hpp"
#include "qaco/qaco.hpp"

namespace qaco {

// Renders one iteration as OpenQASM 2.0 with an explicitly reset exploration
// wire: the pheromone rotation layer, then per planned gate an exploration
// rotation, the controlled gate and a reset, and finally the ant
// measurements. Output is byte-identical for identical inputs.
std::string export_circuit(const PheromoneAngles& angles, double beta,
                           const ExplorationPlan& plan);

} // namespace qaco
