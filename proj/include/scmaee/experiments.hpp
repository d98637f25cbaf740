#ifndef SCMAEE_EXPERIMENTS_HPP
#define SCMAEE_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scmaee/caching.hpp"
#include "scmaee/metrics.hpp"
#include "scmaee/model.hpp"
#include "scmaee/orchestrator.hpp"
#include "scmaee/solver_config.hpp"

namespace scmaee {
namespace experiments {

// Applies a named sweep axis to the params. Known axes: rho, gamma, alpha,
// epsilon, ptotal, frames, eves, users, cache, emax.
void apply_axis(ScenarioParams& params, const std::string& axis, double value);

struct RunRow {
  std::string axis;
  double value = 0.0;
  std::string strategy;
  std::string scenario;
  std::string mode;
  std::uint64_t seed = 0;
  bool excluded = false;
  std::string fault;
  MetricsReport metrics;
};

struct AggregateRow {
  std::string axis;
  double value = 0.0;
  std::string strategy;
  std::string scenario;
  std::string mode;
  int runs = 0;
  int excluded = 0;
  MetricsReport mean;
  MetricsReport stderr_;
};

struct SweepSpec {
  ScenarioParams base;
  SolverConfig solver;
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> strategies = {"lp"};
  std::string scenario = "sfcd";  // sfcd | mfcd | mfcd_uniform
  std::string mode = "joint";    // joint | disjoint
  int runs = 50;
  std::uint64_t base_seed = 1;
  bool parallel = true;
};

struct SweepResult {
  std::vector<RunRow> rows;            // one per (value, strategy, seed)
  std::vector<AggregateRow> aggregates;  // one per (value, strategy)
};

// Solves every (value, strategy, seed) combination; instances are paired by
// seed across values and strategies. Per-run faults mark the row excluded
// and drop it from the aggregates. Deterministic given base_seed regardless
// of the worker schedule.
SweepResult run_sweep(const SweepSpec& spec);

struct OutageRow {
  double alpha_mbits = 0.0;
  std::string scheme;  // sfcd | mfcd_uniform | mfcd_opt
  double outage = 0.0;
  double inutility = 0.0;
  int runs = 0;
};

// Monte-Carlo deliverability probe over paired seeds: fraction of runs whose
// scheduled traffic cannot be carried under energy causality (battery waste
// allowed), per delivery scheme; inutility multiplies by the delivery delay
// in frames.
std::vector<OutageRow> estimate_outage(const ScenarioParams& base, const SolverConfig& solver,
                                       const std::vector<double>& alphas, int runs,
                                       std::uint64_t base_seed, bool parallel = true);

std::string build_id();

std::string run_rows_csv(const std::vector<RunRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::string outage_csv(const std::vector<OutageRow>& rows);

// Scenario/solver configuration as a JSON document; unknown keys are
// rejected. Fields mirror ScenarioParams and SolverConfig.
ScenarioParams params_from_json(const std::string& text);
SolverConfig solver_from_json(const std::string& text);

Scenario scenario_from_string(const std::string& s, bool* uniform_split = nullptr);

// Runs the generator invariant suite (channel/energy invariants, Poisson
// mean, shadowing spread, zipf shape) over `seeds` instances; returns the
// failure count and appends one line per check to `log`.
int validate_model(const ScenarioParams& params, int seeds, std::string& log);

}  // namespace experiments
}  // namespace scmaee

#endif  // SCMAEE_EXPERIMENTS_HPP
