#include "scmaee/caching.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "scmaee/constraints.hpp"
#include "scmaee/kernel.hpp"

namespace scmaee {
namespace caching {

Strategy strategy_from_string(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "random") return Strategy::Random;
  if (s == "popular") return Strategy::MostPopular;
  if (s == "lp") return Strategy::Lp;
  throw InvalidInput("unknown caching strategy: " + s);
}

namespace {

// Deduplicated per-file traffic weight for BS b over the super frame, plus a
// small multiplicity tiebreak so equally sized files rank by request count.
std::vector<double> traffic_weights(const NetworkInstance& inst, const AllocationState& alloc,
                                    Scenario scenario, int b) {
  const auto& topo = inst.topology;
  const auto& cat = inst.catalog;
  const int K = cat.num_files, F = topo.num_frames;

  std::vector<double> activity(F, 0.0);
  for (int t = 0; t < F; ++t)
    for (int u = 0; u < topo.num_users(); ++u) {
      if (topo.owner_bs[u] != b) continue;
      for (int m = 0; m < topo.num_codebooks; ++m)
        activity[t] += alloc.codebook_assign(u, m, t);
    }

  std::vector<double> w(K, 0.0);
  for (int k = 0; k < K; ++k) {
    double requested = 0.0;
    for (int u = 0; u < topo.num_users(); ++u)
      if (topo.owner_bs[u] == b) requested += cat.requests(k, u);
    if (requested == 0.0) continue;
    double per_frame = 0.0;
    for (int t = 0; t < F; ++t) {
      const double size =
          scenario == Scenario::SFCD ? cat.sizes_mbits[k] : alloc.split_sizes(k, t);
      per_frame += activity[t] * size;
    }
    w[k] = per_frame * (1.0 + 1e-6 * requested);
  }
  return w;
}

}  // namespace

Grid2 placement_lp(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                   Scenario scenario) {
  const int B = inst.topology.num_bs();
  const int K = inst.catalog.num_files;
  Grid2 theta(B, K);

  for (int b = 0; b < B; ++b) {
    const std::vector<double> w = traffic_weights(inst, alloc_fixed, scenario, b);
    kernel::LinearProgram lp = kernel::LinearProgram::sized(K);
    for (int k = 0; k < K; ++k) {
      lp.c[k] = w[k];  // maximizing cached traffic == minimizing backhaul traffic
      lp.lo[k] = 0.0;
      lp.hi[k] = 1.0;
    }
    lp.Ain = kernel::MatrixXd::Zero(1, K);
    lp.bin = kernel::VectorXd::Zero(1);
    for (int k = 0; k < K; ++k) lp.Ain(0, k) = inst.catalog.sizes_mbits[k];
    lp.bin[0] = inst.cache_capacity_mbits[b];

    const kernel::LpResult res = kernel::solve_lp(lp, 1e-10);
    if (res.status != kernel::SolveStatus::Optimal)
      throw std::runtime_error("placement_lp: LP did not solve");
    for (int k = 0; k < K; ++k) {
      double v = std::clamp(res.x[k], 0.0, 1.0);
      if (w[k] == 0.0) v = 0.0;  // unrequested files never occupy cache
      theta(b, k) = v;
    }
  }
  return theta;
}

Grid2 round_placement(const Grid2& theta_relaxed, const NetworkInstance& inst) {
  const int B = theta_relaxed.extent(0), K = theta_relaxed.extent(1);
  Grid2 theta(B, K);
  for (int b = 0; b < B; ++b) {
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      return theta_relaxed(b, i) > theta_relaxed(b, j);
    });
    double used = 0.0;
    for (int k : order) {
      if (theta_relaxed(b, k) <= 0.0) continue;
      if (used + inst.catalog.sizes_mbits[k] <= inst.cache_capacity_mbits[b] + 1e-12) {
        theta(b, k) = 1.0;
        used += inst.catalog.sizes_mbits[k];
      }
    }
  }
  return theta;
}

Grid2 baseline_placement(const NetworkInstance& inst, Strategy strategy, std::uint64_t seed) {
  const int B = inst.topology.num_bs();
  const int K = inst.catalog.num_files;
  Grid2 theta(B, K);
  if (strategy == Strategy::None) return theta;

  for (int b = 0; b < B; ++b) {
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    if (strategy == Strategy::Random) {
      std::mt19937_64 rng(seed * 1000003ULL + b);
      std::shuffle(order.begin(), order.end(), rng);
    } else {
      std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return inst.catalog.popularity[i] > inst.catalog.popularity[j];
      });
    }
    double used = 0.0;
    for (int k : order)
      if (used + inst.catalog.sizes_mbits[k] <= inst.cache_capacity_mbits[b] + 1e-12) {
        theta(b, k) = 1.0;
        used += inst.catalog.sizes_mbits[k];
      }
  }
  return theta;
}

double total_backhaul_traffic_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                                    Scenario scenario, const Grid2& theta) {
  AllocationState probe = alloc;
  probe.cache_placement = theta;
  double total = 0.0;
  for (int b = 0; b < inst.topology.num_bs(); ++b)
    for (int t = 0; t < inst.topology.num_frames; ++t)
      total += constraints::backhaul_demand_mbits(inst, probe, scenario, b, t);
  return total;
}

}  // namespace caching
}  // namespace scmaee
