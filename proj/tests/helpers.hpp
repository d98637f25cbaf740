#ifndef SCMAEE_TESTS_HELPERS_HPP
#define SCMAEE_TESTS_HELPERS_HPP

#include <random>

#include "scmaee/alloc.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace testing {

// Hand-built instance with unit-friendly numbers: all gains zero, noise one,
// codebooks covering subcarrier pairs, no energy arrivals, generous battery.
// Tests overwrite the fields they exercise.
inline NetworkInstance manual_instance(int num_bs, int users_per_bs, int num_eves, int N, int M,
                                       int F) {
  NetworkInstance inst;
  auto& topo = inst.topology;
  topo.num_macro = num_bs;
  topo.num_small = 0;
  topo.users_per_bs = users_per_bs;
  topo.num_eves = num_eves;
  topo.num_subcarriers = N;
  topo.num_codebooks = M;
  topo.num_frames = F;
  topo.frame_duration_s = 1.0;
  topo.subcarrier_bandwidth_hz = 1e6;  // conv = 1 Mbit per unit rate
  topo.cell_radius_km = 1.0;

  const int B = num_bs, U = num_bs * users_per_bs;
  topo.bs_pos_km.assign(B, {0.0, 0.0});
  topo.user_pos_km.assign(U, {0.0, 0.0});
  topo.eve_pos_km.assign(num_eves, {0.0, 0.0});
  topo.owner_bs.resize(U);
  for (int u = 0; u < U; ++u) topo.owner_bs[u] = u / users_per_bs;

  inst.codebooks.incidence = Grid2(N, M);
  inst.codebooks.proportion = Grid2(N, M);
  for (int m = 0; m < M; ++m) {
    const int a = m % N, b = (m + 1) % N;
    inst.codebooks.incidence(a, m) = 1.0;
    inst.codebooks.incidence(b, m) = 1.0;
    inst.codebooks.proportion(a, m) = 0.5;
    inst.codebooks.proportion(b, m) = 0.5;
  }

  auto& ch = inst.channels;
  ch.access_gain = Grid4(B, U, N, F);
  ch.eve_gain_est = Grid4(B, std::max(num_eves, 1), N, F);
  ch.eve_uncertainty = Grid4(B, std::max(num_eves, 1), N, F);
  ch.backhaul_gain = Grid3(B, N, F);
  ch.noise_user = Grid2(U, N);
  ch.noise_eve = Grid2(std::max(num_eves, 1), N);
  ch.noise_bs = Grid2(B, N);
  ch.noise_user.fill(1.0);
  ch.noise_eve.fill(1.0);
  ch.noise_bs.fill(1.0);

  auto& cat = inst.catalog;
  cat.num_files = 2;
  cat.sizes_mbits = {1.0, 1.0};
  cat.popularity = {0.6, 0.4};
  cat.requests = Grid2(2, U);

  auto& en = inst.energy;
  en.arrival_rate.assign(B, 0.0);
  en.unit_energy_j.assign(B, 0.0);
  en.battery_cap_j.assign(B, 1e6);
  en.initial_battery_j.assign(B, 1e6);
  en.harvested_j = Grid2(B, F);
  en.arrivals = Grid2(B, F);

  inst.cache_capacity_mbits.assign(B, 0.0);
  inst.backhaul_power_budget_w.assign(F, 1.0);
  inst.reuse_cap = 2;
  return inst;
}

// Uniformly random gains in (lo, hi) for every channel tensor entry.
inline void randomize_channels(NetworkInstance& inst, std::mt19937_64& rng, double lo = 0.1,
                               double hi = 2.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  auto& topo = inst.topology;
  for (int b = 0; b < topo.num_bs(); ++b) {
    for (int u = 0; u < topo.num_users(); ++u)
      for (int n = 0; n < topo.num_subcarriers; ++n)
        for (int t = 0; t < topo.num_frames; ++t)
          inst.channels.access_gain(b, u, n, t) = uni(rng);
    for (int q = 0; q < topo.num_eves; ++q)
      for (int n = 0; n < topo.num_subcarriers; ++n)
        for (int t = 0; t < topo.num_frames; ++t) {
          inst.channels.eve_gain_est(b, q, n, t) = uni(rng);
          inst.channels.eve_uncertainty(b, q, n, t) =
              0.5 * inst.channels.eve_gain_est(b, q, n, t);
        }
    for (int n = 0; n < topo.num_subcarriers; ++n)
      for (int t = 0; t < topo.num_frames; ++t) inst.channels.backhaul_gain(b, n, t) = uni(rng);
  }
}

// One served user per BS on a random codebook/frame with random power.
inline AllocationState random_schedule(const NetworkInstance& inst, std::mt19937_64& rng,
                                       double pmax = 2.0) {
  AllocationState a = AllocationState::zeros(inst);
  const auto& topo = inst.topology;
  std::uniform_real_distribution<double> uni(0.1, pmax);
  std::uniform_int_distribution<int> pick_m(0, topo.num_codebooks - 1);
  std::uniform_int_distribution<int> pick_t(0, topo.num_frames - 1);
  std::uniform_int_distribution<int> pick_u(0, topo.users_per_bs - 1);
  for (int b = 0; b < topo.num_bs(); ++b) {
    const int u = b * topo.users_per_bs + pick_u(rng);
    a.codebook_assign(u, pick_m(rng), pick_t(rng)) = 1.0;
    for (int m = 0; m < topo.num_codebooks; ++m)
      for (int t = 0; t < topo.num_frames; ++t)
        if (a.codebook_assign(u, m, t) > 0.5) a.access_power(u, m, t) = uni(rng);
  }
  return a;
}

}  // namespace testing
}  // namespace scmaee

#endif  // SCMAEE_TESTS_HELPERS_HPP
