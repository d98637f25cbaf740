#ifndef SCMAEE_ORCHESTRATOR_HPP
#define SCMAEE_ORCHESTRATOR_HPP

#include <string>
#include <vector>

#include "scmaee/alloc.hpp"
#include "scmaee/caching.hpp"
#include "scmaee/metrics.hpp"
#include "scmaee/model.hpp"
#include "scmaee/solver_config.hpp"

namespace scmaee {
namespace orchestrator {

struct SweepRecord {
  int sweep = 0;
  double theta = 0.0;
  std::string worst_case_status;
  std::string placement_status;
  std::string backhaul_status;
  std::string codebook_status;
  std::string access_status;
  double wall_ms = 0.0;
};

struct SolveTrace {
  std::vector<SweepRecord> records;
  std::string to_jsonl() const;
};

struct SolveOutcome {
  AllocationState alloc;
  MetricsReport metrics;
  SolveTrace trace;
  bool converged = false;
  bool outage = false;
  int sweeps = 0;
};

// Transformed objective at optimally set auxiliaries: worst-case secrecy
// numerator over total transmit power; zero when no power is spent.
double objective_theta(const NetworkInstance& inst, const AllocationState& alloc);

// Feasible deterministic starting point: most-popular caches, all backhaul
// subcarriers on with a uniform power share, one greedy link per BS (SFCD)
// or per BS and frame (MFCD), battery-respecting uniform powers.
AllocationState initial_allocation(const NetworkInstance& inst, Scenario scenario,
                                   caching::Strategy strategy, std::uint64_t seed);

// Alternating sweep in the fixed order: worst-case channels, content
// placement, backhaul power/subcarriers, codebook assignment, access powers
// (and MFCD splits after the rates settle). Stops on |dTheta| <= eps1 or the
// sweep cap. `strategy` selects the placement rule; the LP strategy runs the
// in-loop placement, baselines stay fixed at their initial caches.
SolveOutcome solve_joint(const NetworkInstance& inst, Scenario scenario, const SolverConfig& cfg,
                         caching::Strategy strategy = caching::Strategy::Lp);

// Stage one maximizes the backhaul rate under the power budget alone; stage
// two reruns the access-side loop with backhaul variables frozen and each
// frame's numerator capped by the stage-one backhaul rate.
SolveOutcome solve_disjoint(const NetworkInstance& inst, Scenario scenario,
                            const SolverConfig& cfg,
                            caching::Strategy strategy = caching::Strategy::Lp);

}  // namespace orchestrator
}  // namespace scmaee

#endif  // SCMAEE_ORCHESTRATOR_HPP
