#ifndef SCMAEE_CONSTRAINTS_HPP
#define SCMAEE_CONSTRAINTS_HPP

#include <array>
#include <string>
#include <vector>

#include "scmaee/alloc.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace constraints {

// One residual per constraint instance; residual <= tol means satisfied.
struct Residual {
  std::string id;
  std::array<int, 3> index{-1, -1, -1};
  double value = 0.0;
};

struct ConstraintReport {
  std::vector<Residual> residuals;
  bool feasible = true;
  double worst_violation = 0.0;
  double tolerance = 0.0;

  const Residual* worst() const;
  std::string to_json() const;
};

// Battery recursion E^{t+1} = min(E^t - T*sum(s*p) + E~^t, Emax), starting
// from the instance's initial state. E has F+1 columns: entry t is the level
// at the start of frame t, entry F the post-horizon level.
Grid2 battery_trace(const NetworkInstance& inst, const AllocationState& alloc);

// Evaluates every constraint family for the given scenario:
//   cache_capacity, split_completeness (MFCD), backhaul_traffic,
//   downlink_traffic, access_power_nonneg, backhaul_power_nonneg,
//   backhaul_power_budget, energy_causality, battery_overflow,
//   subcarrier_reuse, codebook_exclusivity, binary_domain, channel_box.
// Energy causality and battery overflow are checked frame by frame: spending
// in a frame may not exceed the battery at its start, and stored-plus-
// arriving energy net of spending may not exceed capacity.
ConstraintReport check_all(const NetworkInstance& inst, const AllocationState& alloc,
                           Scenario scenario, double tol);

// Per-frame backhaul demand in Mbits: uncached requested files fetched once
// per BS, gated by that BS having an active assignment in the frame.
double backhaul_demand_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                             Scenario scenario, int b, int t);

// Per-frame downlink demand in Mbits for user u (sizes or splits of the
// files u requested, gated by u's active assignments).
double downlink_demand_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                             Scenario scenario, int u, int t);

}  // namespace constraints
}  // namespace scmaee

#endif  // SCMAEE_CONSTRAINTS_HPP
