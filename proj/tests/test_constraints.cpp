#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "scmaee/constraints.hpp"

using namespace scmaee;
using testing::manual_instance;
using testing::random_schedule;
using testing::randomize_channels;

TEST_CASE("battery trace: recursion and clamp") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  inst.energy.initial_battery_j = {1.0};
  inst.energy.battery_cap_j = {2.0};
  inst.energy.harvested_j(0, 0) = 0.2;
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 0.4;  // T = 1 s -> spend 0.4 J
  const Grid2 E = constraints::battery_trace(inst, a);
  CHECK(E(0, 0) == doctest::Approx(1.0));
  CHECK(E(0, 1) == doctest::Approx(0.8).epsilon(1e-12));

  inst.energy.initial_battery_j = {1.9};
  inst.energy.harvested_j(0, 0) = 0.5;
  AllocationState idle = AllocationState::zeros(inst);
  const Grid2 E2 = constraints::battery_trace(inst, idle);
  CHECK(E2(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("battery trace: four frames equal a step-by-step loop") {
  std::mt19937_64 rng(3);
  NetworkInstance inst = manual_instance(2, 1, 0, 2, 1, 4);
  std::uniform_real_distribution<double> uni(0.0, 0.6);
  inst.energy.initial_battery_j = {1.0, 1.2};
  inst.energy.battery_cap_j = {2.0, 1.5};
  for (int b = 0; b < 2; ++b)
    for (int t = 0; t < 4; ++t) inst.energy.harvested_j(b, t) = uni(rng);
  AllocationState a = AllocationState::zeros(inst);
  for (int b = 0; b < 2; ++b)
    for (int t = 0; t < 4; ++t) {
      a.codebook_assign(b, 0, t) = 1.0;  // user b is BS b's only user
      a.access_power(b, 0, t) = uni(rng) * 0.5;
    }
  const Grid2 E = constraints::battery_trace(inst, a);
  for (int b = 0; b < 2; ++b) {
    double e = inst.energy.initial_battery_j[b];
    for (int t = 0; t < 4; ++t) {
      CHECK(E(b, t) == doctest::Approx(e).epsilon(1e-12));
      e = std::min(e - a.access_power(b, 0, t) + inst.energy.harvested_j(b, t),
                   inst.energy.battery_cap_j[b]);
    }
    CHECK(E(b, 4) == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("all-zero allocation on an energy-free instance is feasible") {
  NetworkInstance inst = manual_instance(2, 2, 1, 4, 4, 2);
  inst.energy.initial_battery_j = {0.0, 0.0};
  inst.catalog.requests.fill(0.0);
  AllocationState a = AllocationState::zeros(inst);
  const auto rep = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
  INFO(rep.to_json());
  CHECK(rep.feasible);
}

TEST_CASE("subcarrier reuse violation is reported at the right index") {
  NetworkInstance inst = manual_instance(1, 3, 0, 4, 4, 1);
  inst.reuse_cap = 2;
  AllocationState a = AllocationState::zeros(inst);
  a.s_relaxed = false;
  // codebooks 0 (subcarriers 0,1), 3 (3,0), and 0 again share subcarrier 0
  a.codebook_assign(0, 0, 0) = 1.0;
  a.codebook_assign(1, 3, 0) = 1.0;
  a.codebook_assign(2, 0, 0) = 1.0;
  const auto rep = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
  CHECK(!rep.feasible);
  bool found = false;
  for (const auto& r : rep.residuals)
    if (r.id == "subcarrier_reuse" && r.index[0] == 0 && r.value > 0.5) found = true;
  CHECK(found);
}

TEST_CASE("check_all is total: expected count per constraint family") {
  NetworkInstance inst = manual_instance(2, 2, 1, 4, 4, 2);
  AllocationState a = AllocationState::zeros(inst);
  const auto rep = constraints::check_all(inst, a, Scenario::MFCD, 1e-6);
  std::map<std::string, int> counts;
  for (const auto& r : rep.residuals) counts[r.id]++;
  const int B = 2, U = 4, N = 4, M = 4, F = 2, K = 2, Q = 1;
  CHECK(counts["cache_capacity"] == B);
  CHECK(counts["backhaul_traffic"] == B * F);
  CHECK(counts["downlink_traffic"] == U * F);
  CHECK(counts["access_power_nonneg"] == U * M * F);
  CHECK(counts["backhaul_power_nonneg"] == B * N * F);
  CHECK(counts["backhaul_power_budget"] == F);
  CHECK(counts["energy_causality"] == B * F);
  CHECK(counts["battery_overflow"] == B * F);
  CHECK(counts["subcarrier_reuse"] == N * F);
  CHECK(counts["codebook_exclusivity"] == B * F);  // MFCD: per BS and frame
  CHECK(counts["binary_domain"] == U * M * F);
  CHECK(counts["binary_domain_theta"] == B * K);
  CHECK(counts["binary_domain_zeta"] == B * N);
  CHECK(counts["channel_box"] == B * Q * N * F);

  const auto rep_sfcd = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
  std::map<std::string, int> counts2;
  for (const auto& r : rep_sfcd.residuals) counts2[r.id]++;
  CHECK(counts2["codebook_exclusivity"] == B);
  CHECK(counts2.count("split_completeness") == 0);  // SFCD has no splits
}

TEST_CASE("SFCD exclusivity implies MFCD exclusivity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 0, 4, 4, 2);
    AllocationState a = AllocationState::zeros(inst);
    // random allocation with at most one assignment per BS (SFCD-exclusive)
    for (int b = 0; b < 2; ++b) {
      if (rng() % 3 == 0) continue;
      const int u = b * 2 + rng() % 2;
      a.codebook_assign(u, rng() % 4, rng() % 2) = 1.0;
    }
    auto violations = [](const constraints::ConstraintReport& rep) {
      int v = 0;
      for (const auto& r : rep.residuals)
        if (r.id == "codebook_exclusivity" && r.value > 1e-9) ++v;
      return v;
    };
    const auto sf = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
    const auto mf = constraints::check_all(inst, a, Scenario::MFCD, 1e-6);
    if (violations(sf) == 0) CHECK(violations(mf) == 0);
  }
}

TEST_CASE("feasibility by construction: projected random allocations pass") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 1, 4, 4, 2);
    randomize_channels(inst, rng);
    inst.energy.initial_battery_j = {5.0, 5.0};
    inst.energy.battery_cap_j = {10.0, 10.0};
    inst.cache_capacity_mbits = {1.0, 1.0};
    inst.catalog.requests.fill(0.0);  // no traffic demand

    // construct a feasible point: one link per BS, power under the battery,
    // one cached file, all splits complete
    AllocationState a = AllocationState::zeros(inst);
    for (int b = 0; b < 2; ++b) {
      const int u = b * 2;
      a.codebook_assign(u, b, 0) = 1.0;  // different codebooks, no reuse clash
      a.access_power(u, b, 0) = 2.0;     // 2 J < 5 J initial
      a.cache_placement(b, 0) = 1.0;     // 1 Mbit cache holds file 0
    }
    for (int k = 0; k < 2; ++k)
      for (int t = 0; t < 2; ++t) a.split_sizes(k, t) = inst.catalog.sizes_mbits[k] / 2.0;
    const auto rep = constraints::check_all(inst, a, Scenario::MFCD, 1e-6);
    INFO(rep.to_json());
    CHECK(rep.feasible);
  }
}

TEST_CASE("independent per-constraint oracle agrees on random allocations") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 1, 4, 4, 2);
    randomize_channels(inst, rng);
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    inst.energy.initial_battery_j = {uni(rng), uni(rng)};
    inst.cache_capacity_mbits = {uni(rng), uni(rng)};
    AllocationState a = random_schedule(inst, rng);
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) a.cache_placement(b, k) = (rng() % 2) ? 1.0 : 0.0;

    const auto rep = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);

    // oracle: cache capacity per BS
    for (int b = 0; b < 2; ++b) {
      double used = 0.0;
      for (int k = 0; k < 2; ++k) used += a.cache_placement(b, k) * inst.catalog.sizes_mbits[k];
      const bool ok = used <= inst.cache_capacity_mbits[b] + 1e-6;
      for (const auto& r : rep.residuals)
        if (r.id == "cache_capacity" && r.index[0] == b) {
          CHECK((r.value <= 1e-6) == ok);
          ++checked;
        }
    }
    // oracle: energy causality per (b,t) with an independent battery loop
    for (int b = 0; b < 2; ++b) {
      double e = inst.energy.initial_battery_j[b];
      for (int t = 0; t < 2; ++t) {
        double spend = 0.0;
        for (int u = 0; u < 4; ++u) {
          if (inst.topology.owner_bs[u] != b) continue;
          for (int m = 0; m < 4; ++m)
            spend += a.codebook_assign(u, m, t) * a.access_power(u, m, t);
        }
        const bool ok = spend <= e + 1e-6;
        for (const auto& r : rep.residuals)
          if (r.id == "energy_causality" && r.index[0] == b && r.index[1] == t) {
            CHECK((r.value <= 1e-6) == ok);
            ++checked;
          }
        e = std::min(e - spend + inst.energy.harvested_j(b, t), inst.energy.battery_cap_j[b]);
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("passing check_all keeps the battery within [0, Emax]") {
  std::mt19937_64 rng(43);
  int feasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    NetworkInstance inst = manual_instance(2, 1, 0, 2, 1, 3);
    std::uniform_real_distribution<double> uni(0.0, 1.5);
    inst.energy.initial_battery_j = {uni(rng), uni(rng)};
    inst.energy.battery_cap_j = {2.0, 2.0};
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < 3; ++t) inst.energy.harvested_j(b, t) = 0.5 * uni(rng);
    inst.catalog.requests.fill(0.0);
    AllocationState a = AllocationState::zeros(inst);
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < 3; ++t)
        if (rng() % 2) {
          a.codebook_assign(b, 0, t) = 1.0;
          a.access_power(b, 0, t) = 0.4 * uni(rng);
        }
    const auto rep = constraints::check_all(inst, a, Scenario::MFCD, 0.0);
    if (!rep.feasible) continue;
    ++feasible_seen;
    const Grid2 E = constraints::battery_trace(inst, a);
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t <= 3; ++t) {
        CHECK(E(b, t) >= -1e-12);
        CHECK(E(b, t) <= inst.energy.battery_cap_j[b] + 1e-12);
      }
  }
  CHECK(feasible_seen > 5);
}

TEST_CASE("explain-infeasible JSON names the violated family") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  AllocationState a = AllocationState::zeros(inst);
  a.access_power(0, 0, 0) = -1.0;
  const auto rep = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
  CHECK(!rep.feasible);
  CHECK(rep.to_json().find("access_power_nonneg") != std::string::npos);
}
