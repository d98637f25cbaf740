#include "scmaee/experiments.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "scmaee/access.hpp"
#include "scmaee/constraints.hpp"
#include "scmaee/worstcase.hpp"

#ifndef SCMAEE_BUILD_ID
#define SCMAEE_BUILD_ID "untagged"
#endif

namespace scmaee {

std::string MetricsReport::to_json() const {
  nlohmann::json j{{"energy_efficiency_bits_per_j", energy_efficiency_bits_per_j},
                   {"sum_secrecy_rate", sum_secrecy_rate},
                   {"backhaul_rate", backhaul_rate},
                   {"backhaul_capacity", backhaul_capacity},
                   {"backhaul_traffic_mbits", backhaul_traffic_mbits},
                   {"outage", outage},
                   {"transmission_inutility", transmission_inutility},
                   {"convergence_iterations", convergence_iterations},
                   {"relaxation_gap", relaxation_gap},
                   {"total_power_w", total_power_w}};
  return j.dump();
}

namespace experiments {

namespace {

using nlohmann::json;

const std::vector<std::pair<std::string, double MetricsReport::*>> kMetricFields = {
    {"energy_efficiency_bits_per_j", &MetricsReport::energy_efficiency_bits_per_j},
    {"sum_secrecy_rate", &MetricsReport::sum_secrecy_rate},
    {"backhaul_rate", &MetricsReport::backhaul_rate},
    {"backhaul_capacity", &MetricsReport::backhaul_capacity},
    {"backhaul_traffic_mbits", &MetricsReport::backhaul_traffic_mbits},
    {"outage", &MetricsReport::outage},
    {"transmission_inutility", &MetricsReport::transmission_inutility},
    {"convergence_iterations", &MetricsReport::convergence_iterations},
    {"relaxation_gap", &MetricsReport::relaxation_gap},
    {"total_power_w", &MetricsReport::total_power_w},
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string build_id() { return SCMAEE_BUILD_ID; }

void apply_axis(ScenarioParams& params, const std::string& axis, double value) {
  if (axis == "rho") {
    params.unit_energy_j = value;
  } else if (axis == "gamma") {
    params.arrival_rate_per_s = value;
  } else if (axis == "alpha") {
    params.size_model = "fixed";
    params.alpha_fixed_mbits = value;
  } else if (axis == "epsilon") {
    params.eve_uncertainty_rel = value;
  } else if (axis == "ptotal") {
    params.backhaul_power_budget_w = value;
  } else if (axis == "frames") {
    params.num_frames = static_cast<int>(value);
  } else if (axis == "eves") {
    params.num_eves = static_cast<int>(value);
  } else if (axis == "users") {
    params.users_per_bs = static_cast<int>(value);
  } else if (axis == "cache") {
    params.cache_capacity_mbits = value;
  } else if (axis == "emax") {
    params.battery_cap_j = value;
  } else {
    throw InvalidInput(
        "unknown sweep axis '" + axis +
        "' (expected rho|gamma|alpha|epsilon|ptotal|frames|eves|users|cache|emax)");
  }
}

Scenario scenario_from_string(const std::string& s, bool* uniform_split) {
  if (uniform_split) *uniform_split = false;
  if (s == "sfcd") return Scenario::SFCD;
  if (s == "mfcd") return Scenario::MFCD;
  if (s == "mfcd_uniform") {
    if (uniform_split) *uniform_split = true;
    return Scenario::MFCD;
  }
  throw InvalidInput("unknown scenario '" + s + "' (expected sfcd|mfcd|mfcd_uniform)");
}

SweepResult run_sweep(const SweepSpec& spec) {
  struct Task {
    double value;
    std::string strategy;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (double v : spec.values)
    for (const auto& st : spec.strategies)
      for (int r = 0; r < spec.runs; ++r) tasks.push_back({v, st, spec.base_seed + r});

  SweepResult result;
  result.rows.resize(tasks.size());

  const auto run_one = [&](std::size_t i) {
    const Task& task = tasks[i];
    RunRow row;
    row.axis = spec.axis;
    row.value = task.value;
    row.strategy = task.strategy;
    row.scenario = spec.scenario;
    row.mode = spec.mode;
    row.seed = task.seed;
    try {
      ScenarioParams p = spec.base;
      if (!spec.axis.empty()) apply_axis(p, spec.axis, task.value);
      bool uniform = false;
      const Scenario sc = scenario_from_string(spec.scenario, &uniform);
      SolverConfig cfg = spec.solver;
      cfg.uniform_split = cfg.uniform_split || uniform;
      const NetworkInstance inst = generate_instance(p, task.seed);
      const caching::Strategy strat = caching::strategy_from_string(task.strategy);
      const orchestrator::SolveOutcome sol =
          spec.mode == "disjoint" ? orchestrator::solve_disjoint(inst, sc, cfg, strat)
                                  : orchestrator::solve_joint(inst, sc, cfg, strat);
      row.metrics = sol.metrics;
    } catch (const std::exception& e) {
      row.excluded = true;
      row.fault = e.what();
    }
    result.rows[i] = std::move(row);
  };

  if (spec.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(tasks.size()); ++i) run_one(i);
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  }

  // aggregate in deterministic (value, strategy) order
  for (double v : spec.values)
    for (const auto& st : spec.strategies) {
      AggregateRow agg;
      agg.axis = spec.axis;
      agg.value = v;
      agg.strategy = st;
      agg.scenario = spec.scenario;
      agg.mode = spec.mode;
      std::vector<const MetricsReport*> metrics;
      for (const auto& row : result.rows) {
        if (row.value != v || row.strategy != st) continue;
        ++agg.runs;
        if (row.excluded) {
          ++agg.excluded;
          continue;
        }
        metrics.push_back(&row.metrics);
      }
      const double n = static_cast<double>(metrics.size());
      if (n > 0) {
        for (const auto& [name, field] : kMetricFields) {
          double mean = 0.0;
          for (const auto* m : metrics) mean += m->*field;
          mean /= n;
          double var = 0.0;
          for (const auto* m : metrics) var += (m->*field - mean) * (m->*field - mean);
          agg.mean.*field = mean;
          agg.stderr_.*field = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
        }
      }
      result.aggregates.push_back(std::move(agg));
    }
  return result;
}

namespace {

// Deterministic delivery schedule for the outage probe: each BS serves its
// strongest requesting user; SFCD in the single frame `sfcd_frame`, MFCD in
// every frame. Codebooks are chosen by gain under the reuse cap.
AllocationState probe_schedule(const NetworkInstance& inst, Scenario scenario, int sfcd_frame) {
  const auto& topo = inst.topology;
  const int U = topo.num_users(), N = topo.num_subcarriers;
  const int M = topo.num_codebooks, F = topo.num_frames;

  AllocationState a = AllocationState::zeros(inst);
  Grid2 reuse(N, F);
  auto gain = [&](int b, int u, int m, int t) {
    double acc = 0.0;
    for (int n = 0; n < N; ++n)
      acc += inst.codebooks.proportion(n, m) * inst.channels.access_gain(b, u, n, t);
    return acc;
  };

  for (int b = 0; b < topo.num_bs(); ++b) {
    int chosen_u = -1;
    double best_mean = -1.0;
    for (int u = 0; u < U; ++u) {
      if (topo.owner_bs[u] != b) continue;
      bool requests = false;
      for (int k = 0; k < inst.catalog.num_files; ++k)
        if (inst.catalog.requests(k, u) > 0.0) requests = true;
      if (!requests) continue;
      double mean = 0.0;
      for (int m = 0; m < M; ++m)
        for (int t = 0; t < F; ++t) mean += gain(b, u, m, t);
      if (mean > best_mean) {
        best_mean = mean;
        chosen_u = u;
      }
    }
    if (chosen_u < 0) continue;

    const auto serve = [&](int t) {
      int best_m = -1;
      double best = -1.0;
      for (int m = 0; m < M; ++m) {
        bool fits = true;
        for (int n = 0; n < N; ++n)
          if (inst.codebooks.incidence(n, m) > 0.5 && reuse(n, t) + 1 > inst.reuse_cap)
            fits = false;
        if (!fits) continue;
        const double g = gain(b, chosen_u, m, t);
        if (g > best) {
          best = g;
          best_m = m;
        }
      }
      if (best_m < 0) return;
      a.codebook_assign(chosen_u, best_m, t) = 1.0;
      a.access_power(chosen_u, best_m, t) = access::initial_power_w(inst, b);
      for (int n = 0; n < N; ++n)
        if (inst.codebooks.incidence(n, best_m) > 0.5) reuse(n, t) += 1.0;
    };

    if (scenario == Scenario::SFCD) {
      serve(sfcd_frame);
    } else {
      for (int t = 0; t < F; ++t) serve(t);
    }
  }

  for (int k = 0; k < inst.catalog.num_files; ++k)
    for (int t = 0; t < F; ++t) a.split_sizes(k, t) = inst.catalog.sizes_mbits[k] / F;
  return a;
}

}  // namespace

std::vector<OutageRow> estimate_outage(const ScenarioParams& base, const SolverConfig& solver,
                                       const std::vector<double>& alphas, int runs,
                                       std::uint64_t base_seed, bool parallel) {
  const std::vector<std::string> schemes = {"sfcd", "mfcd_uniform", "mfcd_opt"};
  std::vector<double> outage(alphas.size() * schemes.size(), 0.0);

  struct Task {
    std::size_t ai;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    for (int r = 0; r < runs; ++r) tasks.push_back({ai, base_seed + r});
  std::vector<std::array<int, 3>> fails(tasks.size());

  const auto run_one = [&](std::size_t i) {
    const Task& task = tasks[i];
    ScenarioParams p = base;
    apply_axis(p, "alpha", alphas[task.ai]);
    const NetworkInstance inst = generate_instance(p, task.seed);
    std::array<int, 3> fail{0, 0, 0};

    for (int si = 0; si < 3; ++si) {
      const Scenario sc = si == 0 ? Scenario::SFCD : Scenario::MFCD;
      bool feasible = false;
      if (sc == Scenario::SFCD) {
        // best single frame per BS: feasible when any frame choice works
        for (int t = 0; t < inst.topology.num_frames && !feasible; ++t) {
          AllocationState a = probe_schedule(inst, sc, t);
          worstcase::assemble_worst_case(inst, a);
          feasible = access::traffic_feasible(inst, a, sc, false, solver).feasible;
        }
      } else {
        AllocationState a = probe_schedule(inst, sc, -1);
        worstcase::assemble_worst_case(inst, a);
        feasible =
            access::traffic_feasible(inst, a, sc, /*beta_free=*/si == 2, solver).feasible;
      }
      fail[si] = feasible ? 0 : 1;
    }
    fails[i] = fail;
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(tasks.size()); ++i) run_one(i);
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  }

  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (int si = 0; si < 3; ++si)
      outage[tasks[i].ai * 3 + si] += fails[i][si];

  std::vector<OutageRow> rows;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    for (int si = 0; si < 3; ++si) {
      OutageRow row;
      row.alpha_mbits = alphas[ai];
      row.scheme = schemes[si];
      row.runs = runs;
      row.outage = runs > 0 ? outage[ai * 3 + si] / runs : 0.0;
      const double delay = si == 0 ? 1.0 : static_cast<double>(base.num_frames);
      row.inutility = row.outage * delay;
      rows.push_back(row);
    }
  return rows;
}

std::string run_rows_csv(const std::vector<RunRow>& rows) {
  std::ostringstream os;
  os << "axis,value,strategy,scenario,mode,seed,excluded,fault";
  for (const auto& [name, field] : kMetricFields) os << "," << name;
  os << ",build_id\n";
  for (const auto& r : rows) {
    os << csv_escape(r.axis) << "," << r.value << "," << csv_escape(r.strategy) << ","
       << csv_escape(r.scenario) << "," << csv_escape(r.mode) << "," << r.seed << ","
       << (r.excluded ? 1 : 0) << "," << csv_escape(r.fault);
    for (const auto& [name, field] : kMetricFields) os << "," << r.metrics.*field;
    os << "," << csv_escape(build_id()) << "\n";
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "axis,value,strategy,scenario,mode,runs,excluded";
  for (const auto& [name, field] : kMetricFields)
    os << "," << name << "_mean," << name << "_stderr";
  os << ",build_id\n";
  for (const auto& r : rows) {
    os << csv_escape(r.axis) << "," << r.value << "," << csv_escape(r.strategy) << ","
       << csv_escape(r.scenario) << "," << csv_escape(r.mode) << "," << r.runs << ","
       << r.excluded;
    for (const auto& [name, field] : kMetricFields)
      os << "," << r.mean.*field << "," << r.stderr_.*field;
    os << "," << csv_escape(build_id()) << "\n";
  }
  return os.str();
}

std::string outage_csv(const std::vector<OutageRow>& rows) {
  std::ostringstream os;
  os << "alpha_mbits,scheme,outage,inutility,runs,build_id\n";
  for (const auto& r : rows)
    os << r.alpha_mbits << "," << csv_escape(r.scheme) << "," << r.outage << ","
       << r.inutility << "," << r.runs << "," << csv_escape(build_id()) << "\n";
  return os.str();
}

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ScenarioParams params_from_json(const std::string& text) {
  const json j = json::parse(text);
  static const std::vector<std::string> known = {
      "num_macro", "num_small", "users_per_bs", "num_eves", "num_subcarriers",
      "num_codebooks", "codebook_degree", "num_frames", "frame_duration_s",
      "subcarrier_bandwidth_hz", "cell_radius_km", "bs_ring_radius_km", "min_distance_km",
      "shadowing_std_db", "noise_dbm", "backhaul_distance_km", "num_files", "size_model",
      "alpha_fixed_mbits", "alpha_mean_mbits", "lognormal_mu", "lognormal_kappa",
      "alpha_clamp_lo_mbits", "alpha_clamp_hi_mbits", "zipf_exponent", "requests_per_user",
      "arrival_rate_per_s", "unit_energy_j", "battery_cap_j", "initial_battery_frac",
      "cache_capacity_mbits", "backhaul_power_budget_w", "eve_uncertainty_rel", "reuse_cap",
      "solver"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw InvalidInput("unknown config key: " + it.key());

  ScenarioParams p;
  read_field(j, "num_macro", p.num_macro);
  read_field(j, "num_small", p.num_small);
  read_field(j, "users_per_bs", p.users_per_bs);
  read_field(j, "num_eves", p.num_eves);
  read_field(j, "num_subcarriers", p.num_subcarriers);
  read_field(j, "num_codebooks", p.num_codebooks);
  read_field(j, "codebook_degree", p.codebook_degree);
  read_field(j, "num_frames", p.num_frames);
  read_field(j, "frame_duration_s", p.frame_duration_s);
  read_field(j, "subcarrier_bandwidth_hz", p.subcarrier_bandwidth_hz);
  read_field(j, "cell_radius_km", p.cell_radius_km);
  read_field(j, "bs_ring_radius_km", p.bs_ring_radius_km);
  read_field(j, "min_distance_km", p.min_distance_km);
  read_field(j, "shadowing_std_db", p.shadowing_std_db);
  read_field(j, "noise_dbm", p.noise_dbm);
  read_field(j, "backhaul_distance_km", p.backhaul_distance_km);
  read_field(j, "num_files", p.num_files);
  read_field(j, "size_model", p.size_model);
  read_field(j, "alpha_fixed_mbits", p.alpha_fixed_mbits);
  read_field(j, "alpha_mean_mbits", p.alpha_mean_mbits);
  read_field(j, "lognormal_mu", p.lognormal_mu);
  read_field(j, "lognormal_kappa", p.lognormal_kappa);
  read_field(j, "alpha_clamp_lo_mbits", p.alpha_clamp_lo_mbits);
  read_field(j, "alpha_clamp_hi_mbits", p.alpha_clamp_hi_mbits);
  read_field(j, "zipf_exponent", p.zipf_exponent);
  read_field(j, "requests_per_user", p.requests_per_user);
  read_field(j, "arrival_rate_per_s", p.arrival_rate_per_s);
  read_field(j, "unit_energy_j", p.unit_energy_j);
  read_field(j, "battery_cap_j", p.battery_cap_j);
  read_field(j, "initial_battery_frac", p.initial_battery_frac);
  read_field(j, "cache_capacity_mbits", p.cache_capacity_mbits);
  read_field(j, "backhaul_power_budget_w", p.backhaul_power_budget_w);
  read_field(j, "eve_uncertainty_rel", p.eve_uncertainty_rel);
  read_field(j, "reuse_cap", p.reuse_cap);
  return p;
}

SolverConfig solver_from_json(const std::string& text) {
  const json root = json::parse(text);
  SolverConfig cfg;
  if (!root.contains("solver")) return cfg;
  const json& j = root.at("solver");
  static const std::vector<std::string> known = {
      "eps1", "psi1", "eps2", "psi2", "eps3", "psi3", "inner_tol", "inner_iters",
      "constraint_tol", "denom_tol", "candidate_codebooks", "uniform_split",
      "allow_waste_relaxation", "parallel_worst_case"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw InvalidInput("unknown solver key: " + it.key());
  read_field(j, "eps1", cfg.eps1);
  read_field(j, "psi1", cfg.psi1);
  read_field(j, "eps2", cfg.eps2);
  read_field(j, "psi2", cfg.psi2);
  read_field(j, "eps3", cfg.eps3);
  read_field(j, "psi3", cfg.psi3);
  read_field(j, "inner_tol", cfg.inner_tol);
  read_field(j, "inner_iters", cfg.inner_iters);
  read_field(j, "constraint_tol", cfg.constraint_tol);
  read_field(j, "denom_tol", cfg.denom_tol);
  read_field(j, "candidate_codebooks", cfg.candidate_codebooks);
  read_field(j, "uniform_split", cfg.uniform_split);
  read_field(j, "allow_waste_relaxation", cfg.allow_waste_relaxation);
  read_field(j, "parallel_worst_case", cfg.parallel_worst_case);
  return cfg;
}

int validate_model(const ScenarioParams& params, int seeds, std::string& log) {
  std::ostringstream os;
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    os << (ok ? "pass" : "FAIL") << ": " << what << "\n";
    if (!ok) ++failures;
  };

  // per-instance invariants
  bool channels_ok = true, energy_ok = true, eta_ok = true, determinism_ok = true;
  for (int s = 1; s <= seeds; ++s) {
    const NetworkInstance a = generate_instance(params, s);
    const auto& topo = a.topology;
    for (int b = 0; b < topo.num_bs() && channels_ok; ++b)
      for (int q = 0; q < topo.num_eves && channels_ok; ++q)
        for (int n = 0; n < topo.num_subcarriers && channels_ok; ++n)
          for (int t = 0; t < topo.num_frames; ++t)
            if (a.channels.eve_gain_est(b, q, n, t) - a.channels.eve_uncertainty(b, q, n, t) <
                0.0) {
              channels_ok = false;
              break;
            }
    for (int b = 0; b < topo.num_bs(); ++b) {
      if (a.energy.initial_battery_j[b] < 0.0 ||
          a.energy.initial_battery_j[b] > a.energy.battery_cap_j[b])
        energy_ok = false;
      for (int t = 0; t < topo.num_frames; ++t)
        if (a.energy.harvested_j(b, t) < 0.0) energy_ok = false;
    }
    for (int m = 0; m < topo.num_codebooks; ++m) {
      double sum = 0.0;
      for (int n = 0; n < topo.num_subcarriers; ++n) {
        const double c = a.codebooks.incidence(n, m), e = a.codebooks.proportion(n, m);
        if ((c > 0.5) != (e > 0.0 && e < 1.0)) eta_ok = false;
        sum += e;
      }
      if (std::abs(sum - 1.0) > 1e-12) eta_ok = false;
    }
    if (s == 1) {
      const NetworkInstance b2 = generate_instance(params, s);
      determinism_ok = a.channels.access_gain == b2.channels.access_gain &&
                       a.catalog.sizes_mbits == b2.catalog.sizes_mbits &&
                       a.energy.harvested_j == b2.energy.harvested_j;
    }
  }
  check(channels_ok, "eve channel boxes stay nonnegative");
  check(energy_ok, "battery levels and harvests within bounds");
  check(eta_ok, "codebook proportions strictly inside (0,1) and summing to 1");
  check(determinism_ok, "same seed reproduces the instance");

  // Poisson arrivals: empirical mean within 3 standard errors
  {
    const double lambda = params.arrival_rate_per_s * params.frame_duration_s;
    double sum = 0.0;
    int count = 0;
    for (int s = 1; s <= 10000 / std::max(1, params.num_frames); ++s) {
      const NetworkInstance a = generate_instance(params, 77000 + s);
      for (int t = 0; t < a.topology.num_frames; ++t) {
        sum += a.energy.arrivals(0, t);
        ++count;
      }
    }
    const double mean = sum / count;
    const double se = std::sqrt(lambda / count);
    check(std::abs(mean - lambda) <= 3.0 * se + 1e-12,
          "Poisson arrival mean within 3 standard errors");
  }

  // shadowing spread: sample std of the path-loss residual near 8 dB
  {
    ScenarioParams p = params;
    p.num_macro = 1;
    p.num_small = 0;
    p.users_per_bs = 1;
    std::vector<double> db;
    for (int s = 1; s <= 10000; ++s) {
      const NetworkInstance a = generate_instance(p, 99000 + s);
      double mean_gain = 0.0;
      int cnt = 0;
      for (int n = 0; n < a.topology.num_subcarriers; ++n)
        for (int t = 0; t < a.topology.num_frames; ++t) {
          mean_gain += a.channels.access_gain(0, 0, n, t);
          ++cnt;
        }
      mean_gain /= cnt;  // Rayleigh averages out across subcarriers and frames
      const double d = std::max(p.min_distance_km,
                                std::hypot(a.topology.user_pos_km[0][0] -
                                               a.topology.bs_pos_km[0][0],
                                           a.topology.user_pos_km[0][1] -
                                               a.topology.bs_pos_km[0][1]));
      const double pl_det = 128.1 + 37.6 * std::log10(d);
      db.push_back(-10.0 * std::log10(mean_gain) - pl_det);
    }
    double mean = 0.0;
    for (double x : db) mean += x;
    mean /= db.size();
    double var = 0.0;
    for (double x : db) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / (db.size() - 1));
    // averaging 16 Rayleigh draws leaves ~1.1 dB of residual spread
    const double expected = std::sqrt(params.shadowing_std_db * params.shadowing_std_db + 1.3);
    check(std::abs(sd - expected) <= 0.1 * expected,
          "shadowing spread within 10% of the model");
  }

  // zipf shape
  {
    const auto pop = zipf_popularity(6, 0.8);
    bool desc = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      sum += pop[i];
      if (i && pop[i] > pop[i - 1] + 1e-15) desc = false;
    }
    check(desc && std::abs(sum - 1.0) <= 1e-12, "zipf popularity descending and normalized");
  }

  log = os.str();
  return failures;
}

}  // namespace experiments
}  // namespace scmaee
