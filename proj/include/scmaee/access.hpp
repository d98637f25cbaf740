#ifndef SCMAEE_ACCESS_HPP
#define SCMAEE_ACCESS_HPP

#include <vector>

#include "scmaee/alloc.hpp"
#include "scmaee/kernel.hpp"
#include "scmaee/model.hpp"
#include "scmaee/solver_config.hpp"

namespace scmaee {
namespace access {

// Optimal epigraph auxiliaries at the current allocation: phi is the
// worst-case eavesdropper rate bound per active link (zero without
// eavesdroppers), delta the larger of -R2-phi and -R1, so that delta+R1
// recovers [R^D - phi]^+ term by term.
void epigraph_transform(const NetworkInstance& inst, AllocationState& alloc);

// Sum over active links of (delta + R1) at optimal auxiliaries; equals the
// worst-case secrecy numerator of the transformed objective.
double transformed_numerator(const NetworkInstance& inst, const AllocationState& alloc);

// Total transmit power sum(s*p) over the super frame.
double power_denominator(const NetworkInstance& inst, const AllocationState& alloc);

struct DinkelbachResult {
  kernel::SolveStatus status = kernel::SolveStatus::Optimal;
  double chi = 0.0;
  std::vector<double> chi_trace;
  double termination_gap = 0.0;
  bool zero_power = false;
  bool waste_relaxed = false;
  int iterations = 0;
};

// Dinkelbach fractional loop for the access powers with the eavesdropper
// constraint DC-linearized around the allocation's current powers. Updates
// p, phi and delta in place. `numerator_cap_units`, when given, upper-bounds
// each frame's numerator contribution (bits/s/Hz per (b,t)); the disjoint
// solver uses it to cap access capacity by the fixed backhaul rate.
DinkelbachResult dinkelbach_access(const NetworkInstance& inst, AllocationState& alloc,
                                   Scenario scenario, double chi0, const SolverConfig& cfg,
                                   const Grid2* numerator_cap_units = nullptr);

struct DcResult {
  kernel::SolveStatus status = kernel::SolveStatus::Optimal;
  double chi = 0.0;
  std::vector<double> surrogate_trace;  // max true eavesdropper rate per iteration
  std::vector<double> chi_trace;        // last Dinkelbach trace
  bool waste_relaxed = false;
  int iterations = 0;
};

// Outer successive-linearization loop: relinearize at the current powers,
// re-run the Dinkelbach solve, stop on power stationarity. A step that
// would raise the true worst-case eavesdropper rate is rejected, keeping
// the recorded surrogate sequence nonincreasing.
DcResult dc_outer_loop(const NetworkInstance& inst, AllocationState& alloc, Scenario scenario,
                       const SolverConfig& cfg, const Grid2* numerator_cap_units = nullptr);

// Codebook assignment: same Dinkelbach/DC machinery over relaxed s with the
// powers held at a per-BS hypothesis, then exclusive rounding and greedy
// reuse-cap repair.
void codebook_assign(const NetworkInstance& inst, AllocationState& alloc, Scenario scenario,
                     const SolverConfig& cfg);

// MFCD file splitting: LP maximizing the minimum backhaul/downlink slack
// across frames subject to completeness, at the current rates.
Grid2 split_files(const NetworkInstance& inst, const AllocationState& alloc,
                  const SolverConfig& cfg);

// Uniform per-BS starting power for a frame, min(Emax, E1 + sum E~)/(T*F).
double initial_power_w(const NetworkInstance& inst, int b);

struct FeasibilityProbe {
  bool feasible = false;
  double min_slack_mbits = 0.0;
  Grid2 beta;  // the splits the probe chose (MFCD with free beta)
};

// Physical deliverability of the scheduled traffic under causality with
// battery waste allowed (the clamp in the recursion); used by the outage
// estimator. `beta_free` lets the probe co-optimize MFCD splits.
FeasibilityProbe traffic_feasible(const NetworkInstance& inst, const AllocationState& alloc,
                                  Scenario scenario, bool beta_free, const SolverConfig& cfg);

}  // namespace access
}  // namespace scmaee

#endif  // SCMAEE_ACCESS_HPP
