#ifndef SCMAEE_BACKHAUL_HPP
#define SCMAEE_BACKHAUL_HPP

#include "scmaee/alloc.hpp"
#include "scmaee/kernel.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace backhaul {

struct Result {
  kernel::SolveStatus status = kernel::SolveStatus::Optimal;
  Grid3 power;  // p~[b][n][t]
  Grid2 zeta;   // [b][n], relaxed in [0,1]
  int binding_b = -1;  // most violated traffic row when Infeasible
  int binding_t = -1;
};

// Time-sharing relaxation: zeta in [0,1], x = zeta * p~, jointly concave
// perspective capacity maximized under the per-frame power budget and the
// backhaul traffic constraints. Powers are recovered as x / zeta.
Result solve_backhaul(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                      Scenario scenario);

// Threshold at 0.5 (ties assign), then re-run the power-only problem with
// the subcarrier pattern fixed to restore traffic feasibility.
Result round_subcarriers(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                         Scenario scenario, const Grid2& zeta_relaxed);

// Capacity of frame (b,t) in bits/s/Hz for a given assignment and power.
double capacity(const NetworkInstance& inst, const Grid2& zeta, const Grid3& power, int b, int t);

}  // namespace backhaul
}  // namespace scmaee

#endif  // SCMAEE_BACKHAUL_HPP
