#include "scmaee/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scmaee/access.hpp"
#include "scmaee/backhaul.hpp"
#include "scmaee/constraints.hpp"
#include "scmaee/rates.hpp"
#include "scmaee/worstcase.hpp"

namespace scmaee {
namespace orchestrator {

namespace {

const char* status_name(kernel::SolveStatus s) {
  switch (s) {
    case kernel::SolveStatus::Optimal: return "ok";
    case kernel::SolveStatus::Infeasible: return "infeasible";
    case kernel::SolveStatus::Unbounded: return "unbounded";
    default: return "iteration_limit";
  }
}

double compute_theta(const NetworkInstance& inst, const AllocationState& a) {
  const double den = access::power_denominator(inst, a);
  if (den <= 1e-15) return 0.0;
  AllocationState tmp = a;
  access::epigraph_transform(inst, tmp);
  return access::transformed_numerator(inst, tmp) / den;
}

struct StepTimer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

MetricsReport finish_metrics(const NetworkInstance& inst, const AllocationState& alloc,
                             Scenario scenario, const SolverConfig& cfg, int sweeps,
                             double relax_gap) {
  MetricsReport m;
  const double conv = inst.mbits_per_unit_rate();
  const double theta = compute_theta(inst, alloc);
  m.energy_efficiency_bits_per_j = theta * inst.topology.subcarrier_bandwidth_hz;
  AllocationState tmp = alloc;
  access::epigraph_transform(inst, tmp);
  m.sum_secrecy_rate = access::transformed_numerator(inst, tmp);
  m.total_power_w = access::power_denominator(inst, alloc);
  m.convergence_iterations = sweeps;
  m.relaxation_gap = relax_gap;

  for (int b = 0; b < inst.topology.num_bs(); ++b)
    for (int t = 0; t < inst.topology.num_frames; ++t) {
      const double demand = constraints::backhaul_demand_mbits(inst, alloc, scenario, b, t);
      const double cap = backhaul::capacity(inst, alloc.backhaul_subcarrier,
                                            alloc.backhaul_power, b, t);
      m.backhaul_traffic_mbits += demand;
      m.backhaul_capacity += cap;
      m.backhaul_rate += std::min(demand / conv, cap);
    }

  const bool beta_free = scenario == Scenario::MFCD && !cfg.uniform_split;
  const access::FeasibilityProbe probe =
      access::traffic_feasible(inst, alloc, scenario, beta_free, cfg);
  m.outage = probe.feasible ? 0.0 : 1.0;
  const double delay = scenario == Scenario::SFCD ? 1.0 : inst.topology.num_frames;
  m.transmission_inutility = m.outage * delay;
  return m;
}

}  // namespace

std::string SolveTrace::to_jsonl() const {
  std::ostringstream os;
  for (const auto& r : records) {
    os << "{\"sweep\":" << r.sweep << ",\"theta\":" << r.theta << ",\"worst_case\":\""
       << r.worst_case_status << "\",\"placement\":\"" << r.placement_status
       << "\",\"backhaul\":\"" << r.backhaul_status << "\",\"codebook\":\""
       << r.codebook_status << "\",\"access\":\"" << r.access_status
       << "\",\"wall_ms\":" << r.wall_ms << "}\n";
  }
  return os.str();
}

double objective_theta(const NetworkInstance& inst, const AllocationState& alloc) {
  return compute_theta(inst, alloc);
}

AllocationState initial_allocation(const NetworkInstance& inst, Scenario scenario,
                                   caching::Strategy strategy, std::uint64_t seed) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), U = topo.num_users(), N = topo.num_subcarriers;
  const int M = topo.num_codebooks, F = topo.num_frames;

  AllocationState a = AllocationState::zeros(inst);
  a.cache_placement = caching::baseline_placement(
      inst, strategy == caching::Strategy::Lp ? caching::Strategy::MostPopular : strategy,
      seed);

  for (int b = 0; b < B; ++b)
    for (int n = 0; n < N; ++n) {
      a.backhaul_subcarrier(b, n) = 1.0;
      for (int t = 0; t < F; ++t)
        a.backhaul_power(b, n, t) = inst.backhaul_power_budget_w[t] / (B * N);
    }

  for (int k = 0; k < inst.catalog.num_files; ++k)
    for (int t = 0; t < F; ++t) a.split_sizes(k, t) = inst.catalog.sizes_mbits[k] / F;

  // one greedy link per BS (SFCD) or per BS and frame (MFCD), respecting the
  // subcarrier reuse cap across BSs
  Grid2 reuse(N, F);
  auto gain = [&](int b, int u, int m, int t) {
    double acc = 0.0;
    for (int n = 0; n < N; ++n)
      acc += inst.codebooks.proportion(n, m) * inst.channels.access_gain(b, u, n, t);
    return acc;
  };
  auto fits = [&](int m, int t) {
    for (int n = 0; n < N; ++n)
      if (inst.codebooks.incidence(n, m) > 0.5 && reuse(n, t) + 1 > inst.reuse_cap)
        return false;
    return true;
  };
  auto commit = [&](int m, int t) {
    for (int n = 0; n < N; ++n)
      if (inst.codebooks.incidence(n, m) > 0.5) reuse(n, t) += 1.0;
  };

  for (int b = 0; b < B; ++b) {
    std::vector<int> requesters;
    for (int u = 0; u < U; ++u) {
      if (topo.owner_bs[u] != b) continue;
      for (int k = 0; k < inst.catalog.num_files; ++k)
        if (inst.catalog.requests(k, u) > 0.0) {
          requesters.push_back(u);
          break;
        }
    }
    if (requesters.empty()) continue;

    if (scenario == Scenario::SFCD) {
      int bu = -1, bm = -1, bt = -1;
      double best = -1.0;
      for (int u : requesters)
        for (int m = 0; m < M; ++m)
          for (int t = 0; t < F; ++t) {
            if (!fits(m, t)) continue;
            const double g = gain(b, u, m, t);
            if (g > best) {
              best = g;
              bu = u;
              bm = m;
              bt = t;
            }
          }
      if (bu >= 0) {
        a.codebook_assign(bu, bm, bt) = 1.0;
        commit(bm, bt);
      }
    } else {
      for (int t = 0; t < F; ++t) {
        int bu = -1, bm = -1;
        double best = -1.0;
        for (int u : requesters)
          for (int m = 0; m < M; ++m) {
            if (!fits(m, t)) continue;
            const double g = gain(b, u, m, t);
            if (g > best) {
              best = g;
              bu = u;
              bm = m;
            }
          }
        if (bu >= 0) {
          a.codebook_assign(bu, bm, t) = 1.0;
          commit(bm, t);
        }
      }
    }
  }

  // battery-respecting uniform powers on the chosen links
  for (int b = 0; b < B; ++b) {
    double avail = inst.energy.initial_battery_j[b];
    const double target = access::initial_power_w(inst, b);
    for (int t = 0; t < F; ++t) {
      for (int u = 0; u < U; ++u) {
        if (topo.owner_bs[u] != b) continue;
        for (int m = 0; m < M; ++m) {
          if (a.codebook_assign(u, m, t) < 0.5) continue;
          const double p = std::min(target, 0.9 * avail / topo.frame_duration_s);
          a.access_power(u, m, t) = std::max(p, 0.0);
          avail -= topo.frame_duration_s * a.access_power(u, m, t);
        }
      }
      avail = std::min(avail + inst.energy.harvested_j(b, t), inst.energy.battery_cap_j[b]);
    }
  }

  access::epigraph_transform(inst, a);
  return a;
}

namespace {

SolveOutcome run_loop(const NetworkInstance& inst, Scenario scenario, const SolverConfig& cfg,
                      caching::Strategy strategy, bool backhaul_fixed,
                      const Grid2* numerator_cap_units, AllocationState start) {
  SolveOutcome out;
  AllocationState cur = std::move(start);
  const auto mode =
      cfg.parallel_worst_case ? worstcase::ParMode::OpenMP : worstcase::ParMode::Serial;

  double theta_prev = compute_theta(inst, cur);
  double relax_gap = 0.0;
  {
    SweepRecord r0;
    r0.sweep = 0;
    r0.theta = theta_prev;
    out.trace.records.push_back(r0);
  }

  for (int sweep = 1; sweep <= cfg.psi1; ++sweep) {
    StepTimer timer;
    SweepRecord rec;
    rec.sweep = sweep;

    worstcase::assemble_worst_case(inst, cur, mode);
    access::epigraph_transform(inst, cur);
    rec.worst_case_status = "ok";

    if (strategy == caching::Strategy::Lp) {
      const Grid2 relaxed = caching::placement_lp(inst, cur, scenario);
      const Grid2 rounded = caching::round_placement(relaxed, inst);
      relax_gap = caching::total_backhaul_traffic_mbits(inst, cur, scenario, rounded) -
                  caching::total_backhaul_traffic_mbits(inst, cur, scenario, relaxed);
      cur.cache_placement = rounded;
      rec.placement_status = "ok";
    } else {
      rec.placement_status = "fixed";
    }

    if (!backhaul_fixed) {
      const backhaul::Result relaxed = backhaul::solve_backhaul(inst, cur, scenario);
      const backhaul::Result rounded =
          backhaul::round_subcarriers(inst, cur, scenario, relaxed.zeta);
      if (rounded.status == kernel::SolveStatus::Optimal) {
        cur.backhaul_power = rounded.power;
        cur.backhaul_subcarrier = rounded.zeta;
        rec.backhaul_status = "ok";
      } else {
        rec.backhaul_status = status_name(rounded.status);
      }
    } else {
      rec.backhaul_status = "fixed";
    }

    {
      AllocationState trial = cur;
      access::codebook_assign(inst, trial, scenario, cfg);
      worstcase::assemble_worst_case(inst, trial, mode);
      access::epigraph_transform(inst, trial);
      if (compute_theta(inst, trial) >= compute_theta(inst, cur) - 1e-12) {
        cur = std::move(trial);
        rec.codebook_status = "ok";
      } else {
        rec.codebook_status = "kept_previous";
      }
    }

    {
      AllocationState trial = cur;
      const access::DcResult dc =
          access::dc_outer_loop(inst, trial, scenario, cfg, numerator_cap_units);
      if (dc.status == kernel::SolveStatus::Optimal &&
          compute_theta(inst, trial) >= compute_theta(inst, cur) - 1e-12) {
        cur = std::move(trial);
        rec.access_status = "ok";
      } else {
        rec.access_status = dc.status == kernel::SolveStatus::Optimal
                                ? "kept_previous"
                                : status_name(dc.status);
      }
    }

    if (scenario == Scenario::MFCD && !cfg.uniform_split)
      cur.split_sizes = access::split_files(inst, cur, cfg);

    const double theta_now = compute_theta(inst, cur);
    rec.theta = theta_now;
    rec.wall_ms = timer.ms();
    out.trace.records.push_back(rec);
    out.sweeps = sweep;

    if (std::abs(theta_now - theta_prev) <= cfg.eps1) {
      out.converged = true;
      break;
    }
    theta_prev = theta_now;
  }

  out.metrics = finish_metrics(inst, cur, scenario, cfg, out.sweeps, relax_gap);
  out.outage = out.metrics.outage > 0.5;
  out.alloc = std::move(cur);
  return out;
}

}  // namespace

SolveOutcome solve_joint(const NetworkInstance& inst, Scenario scenario, const SolverConfig& cfg,
                         caching::Strategy strategy) {
  AllocationState start = initial_allocation(inst, scenario, strategy, inst.rng_seed);
  return run_loop(inst, scenario, cfg, strategy, false, nullptr, std::move(start));
}

SolveOutcome solve_disjoint(const NetworkInstance& inst, Scenario scenario,
                            const SolverConfig& cfg, caching::Strategy strategy) {
  // Stage one: pure backhaul rate maximization under the power budget.
  AllocationState empty = AllocationState::zeros(inst);
  const backhaul::Result relaxed = backhaul::solve_backhaul(inst, empty, scenario);
  const backhaul::Result stage1 = backhaul::round_subcarriers(inst, empty, scenario, relaxed.zeta);

  const int B = inst.topology.num_bs(), F = inst.topology.num_frames;
  Grid2 cap_units(B, F);
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t)
      cap_units(b, t) = backhaul::capacity(inst, stage1.zeta, stage1.power, b, t);

  AllocationState start = initial_allocation(inst, scenario, strategy, inst.rng_seed);
  start.backhaul_power = stage1.power;
  start.backhaul_subcarrier = stage1.zeta;
  return run_loop(inst, scenario, cfg, strategy, true, &cap_units, std::move(start));
}

}  // namespace orchestrator
}  // namespace scmaee
