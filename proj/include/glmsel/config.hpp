#pragma once

#include <string>

#include "glmsel/simulate.hpp"

namespace glmsel {

// Flat key = value configuration mirroring SimulationConfig and LassoPathConfig.
// Lines starting with '#' are comments. Unknown keys are errors.
//
//   scenario         multiple_index | logistic_interaction
//   n, p, n_reps     integers
//   base_seed        64-bit unsigned integer
//   criteria         comma list: aic,bic,gaic,gbic,gbic_p,hgbic_p,hgbic_p_zeta(Z)
//   zeta_grid        comma list of positive reals (sweep-zeta only)
//   test_size        integer
//   n_lambda         integer
//   lambda_min_ratio real in (0, 1)
//   max_support      integer; -1 selects min(n/2, 50)
//   tol_cd           positive real
//   max_passes       integer
//   standardize      true | false
SimulationConfig load_simulation_config(const std::string& path);

void write_simulation_config(const SimulationConfig& config, const std::string& path);

}  // namespace glmsel
