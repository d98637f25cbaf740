#include "scmaee/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scmaee/rates.hpp"

namespace scmaee {
namespace constraints {

const Residual* ConstraintReport::worst() const {
  const Residual* w = nullptr;
  for (const auto& r : residuals)
    if (!w || r.value > w->value) w = &r;
  return w;
}

std::string ConstraintReport::to_json() const {
  std::ostringstream os;
  os << "{\"feasible\":" << (feasible ? "true" : "false")
     << ",\"tolerance\":" << tolerance << ",\"worst_violation\":" << worst_violation
     << ",\"violations\":[";
  bool first = true;
  for (const auto& r : residuals) {
    if (r.value <= tolerance) continue;
    if (!first) os << ",";
    first = false;
    os << "{\"id\":\"" << r.id << "\",\"index\":[" << r.index[0] << "," << r.index[1] << ","
       << r.index[2] << "],\"residual\":" << r.value << "}";
  }
  os << "]}";
  return os.str();
}

Grid2 battery_trace(const NetworkInstance& inst, const AllocationState& alloc) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), F = topo.num_frames;
  Grid2 E(B, F + 1);
  for (int b = 0; b < B; ++b) {
    E(b, 0) = inst.energy.initial_battery_j[b];
    for (int t = 0; t < F; ++t) {
      double spend_w = 0.0;
      for (int u = 0; u < topo.num_users(); ++u) {
        if (topo.owner_bs[u] != b) continue;
        for (int m = 0; m < topo.num_codebooks; ++m)
          spend_w += alloc.codebook_assign(u, m, t) * alloc.access_power(u, m, t);
      }
      const double next = E(b, t) - topo.frame_duration_s * spend_w + inst.energy.harvested_j(b, t);
      E(b, t + 1) = std::min(next, inst.energy.battery_cap_j[b]);
    }
  }
  return E;
}

namespace {

double frame_spend_w(const NetworkInstance& inst, const AllocationState& alloc, int b, int t) {
  const auto& topo = inst.topology;
  double spend = 0.0;
  for (int u = 0; u < topo.num_users(); ++u) {
    if (topo.owner_bs[u] != b) continue;
    for (int m = 0; m < topo.num_codebooks; ++m)
      spend += alloc.codebook_assign(u, m, t) * alloc.access_power(u, m, t);
  }
  return spend;
}

double binary_residual(double x, bool relaxed) {
  if (relaxed) return std::max(-x, x - 1.0);
  return std::min(std::abs(x), std::abs(x - 1.0));
}

}  // namespace

double backhaul_demand_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                             Scenario scenario, int b, int t) {
  const auto& topo = inst.topology;
  const auto& cat = inst.catalog;
  double activity = 0.0;
  for (int u = 0; u < topo.num_users(); ++u) {
    if (topo.owner_bs[u] != b) continue;
    for (int m = 0; m < topo.num_codebooks; ++m) activity += alloc.codebook_assign(u, m, t);
  }
  if (activity == 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < cat.num_files; ++k) {
    double requested = 0.0;
    for (int u = 0; u < topo.num_users(); ++u)
      if (topo.owner_bs[u] == b) requested += cat.requests(k, u);
    const double once = std::min(requested, 1.0);
    if (once == 0.0) continue;
    const double size =
        scenario == Scenario::SFCD ? cat.sizes_mbits[k] : alloc.split_sizes(k, t);
    acc += activity * (1.0 - alloc.cache_placement(b, k)) * once * size;
  }
  return acc;
}

double downlink_demand_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                             Scenario scenario, int u, int t) {
  const auto& topo = inst.topology;
  const auto& cat = inst.catalog;
  double activity = 0.0;
  for (int m = 0; m < topo.num_codebooks; ++m) activity += alloc.codebook_assign(u, m, t);
  if (activity == 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < cat.num_files; ++k) {
    if (cat.requests(k, u) == 0.0) continue;
    const double size =
        scenario == Scenario::SFCD ? cat.sizes_mbits[k] : alloc.split_sizes(k, t);
    acc += activity * size;
  }
  return acc;
}

ConstraintReport check_all(const NetworkInstance& inst, const AllocationState& alloc,
                           Scenario scenario, double tol) {
  const auto& topo = inst.topology;
  const auto& cat = inst.catalog;
  const int B = topo.num_bs(), U = topo.num_users(), N = topo.num_subcarriers;
  const int M = topo.num_codebooks, F = topo.num_frames, K = cat.num_files;
  const int Q = topo.num_eves;
  const double conv = inst.mbits_per_unit_rate();

  ConstraintReport rep;
  rep.tolerance = tol;
  auto add = [&rep](const std::string& id, std::array<int, 3> ix, double value) {
    rep.residuals.push_back({id, ix, value});
  };

  for (int b = 0; b < B; ++b) {
    double used = 0.0;
    for (int k = 0; k < K; ++k) used += alloc.cache_placement(b, k) * cat.sizes_mbits[k];
    add("cache_capacity", {b, -1, -1}, used - inst.cache_capacity_mbits[b]);
  }

  if (scenario == Scenario::MFCD) {
    for (int k = 0; k < K; ++k) {
      double requested = 0.0;
      for (int u = 0; u < U; ++u) requested += cat.requests(k, u);
      if (requested == 0.0) continue;
      double total = 0.0;
      for (int t = 0; t < F; ++t) total += alloc.split_sizes(k, t);
      add("split_completeness", {k, -1, -1}, std::abs(total - cat.sizes_mbits[k]));
    }
  }

  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t) {
      double capacity = 0.0;
      for (int n = 0; n < N; ++n)
        capacity += alloc.backhaul_subcarrier(b, n) * rates::backhaul_rate(inst, alloc, b, n, t);
      add("backhaul_traffic", {b, t, -1},
          backhaul_demand_mbits(inst, alloc, scenario, b, t) - conv * capacity);
    }

  for (int u = 0; u < U; ++u) {
    const int b = topo.owner_bs[u];
    for (int t = 0; t < F; ++t) {
      double capacity = 0.0;
      for (int m = 0; m < M; ++m) capacity += rates::secrecy_rate(inst, alloc, b, u, m, t);
      add("downlink_traffic", {b, u, t},
          downlink_demand_mbits(inst, alloc, scenario, u, t) - conv * capacity);
    }
  }

  for (int u = 0; u < U; ++u)
    for (int m = 0; m < M; ++m)
      for (int t = 0; t < F; ++t)
        add("access_power_nonneg", {u, m, t}, -alloc.access_power(u, m, t));
  for (int b = 0; b < B; ++b)
    for (int n = 0; n < N; ++n)
      for (int t = 0; t < F; ++t)
        add("backhaul_power_nonneg", {b, n, t}, -alloc.backhaul_power(b, n, t));

  for (int t = 0; t < F; ++t) {
    double used = 0.0;
    for (int b = 0; b < B; ++b)
      for (int n = 0; n < N; ++n)
        used += alloc.backhaul_subcarrier(b, n) * alloc.backhaul_power(b, n, t);
    add("backhaul_power_budget", {t, -1, -1}, used - inst.backhaul_power_budget_w[t]);
  }

  {
    const Grid2 E = battery_trace(inst, alloc);
    for (int b = 0; b < B; ++b)
      for (int t = 0; t < F; ++t) {
        const double spend_j = topo.frame_duration_s * frame_spend_w(inst, alloc, b, t);
        add("energy_causality", {b, t, -1}, spend_j - E(b, t));
        add("battery_overflow", {b, t, -1},
            E(b, t) + inst.energy.harvested_j(b, t) - spend_j - inst.energy.battery_cap_j[b]);
      }
  }

  const double reuse_cap = inst.reuse_cap;
  for (int n = 0; n < N; ++n)
    for (int t = 0; t < F; ++t) {
      double uses = 0.0;
      for (int u = 0; u < U; ++u)
        for (int m = 0; m < M; ++m)
          uses += inst.codebooks.incidence(n, m) * alloc.codebook_assign(u, m, t);
      add("subcarrier_reuse", {n, t, -1}, uses - reuse_cap);
    }

  if (scenario == Scenario::SFCD) {
    for (int b = 0; b < B; ++b) {
      double total = 0.0;
      for (int u = 0; u < U; ++u) {
        if (topo.owner_bs[u] != b) continue;
        for (int m = 0; m < M; ++m)
          for (int t = 0; t < F; ++t) total += alloc.codebook_assign(u, m, t);
      }
      add("codebook_exclusivity", {b, -1, -1}, total - 1.0);
    }
  } else {
    for (int b = 0; b < B; ++b)
      for (int t = 0; t < F; ++t) {
        double total = 0.0;
        for (int u = 0; u < U; ++u) {
          if (topo.owner_bs[u] != b) continue;
          for (int m = 0; m < M; ++m) total += alloc.codebook_assign(u, m, t);
        }
        add("codebook_exclusivity", {b, t, -1}, total - 1.0);
      }
  }

  for (int u = 0; u < U; ++u)
    for (int m = 0; m < M; ++m)
      for (int t = 0; t < F; ++t)
        add("binary_domain", {u, m, t},
            binary_residual(alloc.codebook_assign(u, m, t), alloc.s_relaxed));
  for (int b = 0; b < B; ++b)
    for (int k = 0; k < K; ++k)
      add("binary_domain_theta", {b, k, -1},
          binary_residual(alloc.cache_placement(b, k), alloc.theta_relaxed));
  for (int b = 0; b < B; ++b)
    for (int n = 0; n < N; ++n)
      add("binary_domain_zeta", {b, n, -1},
          binary_residual(alloc.backhaul_subcarrier(b, n), alloc.zeta_relaxed));

  for (int b = 0; b < B; ++b)
    for (int q = 0; q < Q; ++q)
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < F; ++t) {
          const double est = inst.channels.eve_gain_est(b, q, n, t);
          const double eps = inst.channels.eve_uncertainty(b, q, n, t);
          const double lo = est - eps, hi = est + eps;
          const double hs = alloc.worst_case.signal(b, q, n, t);
          const double hi_ = alloc.worst_case.interference(b, q, n, t);
          add("channel_box", {b, q, n * F + t},
              std::max(std::max(lo - hs, hs - hi), std::max(lo - hi_, hi_ - hi)));
        }

  rep.worst_violation = 0.0;
  for (const auto& r : rep.residuals) rep.worst_violation = std::max(rep.worst_violation, r.value);
  rep.feasible = rep.worst_violation <= tol;
  return rep;
}

}  // namespace constraints
}  // namespace scmaee
