#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "scmaee/caching.hpp"
#include "scmaee/constraints.hpp"

using namespace scmaee;
using testing::manual_instance;

namespace {

// Instance with K files of given sizes and a request-count vector; every
// user of BS 0 is scheduled in frame 0 so the traffic weights are active.
NetworkInstance catalog_instance(const std::vector<double>& sizes,
                                 const std::vector<int>& request_counts, double capacity) {
  const int K = static_cast<int>(sizes.size());
  NetworkInstance inst = manual_instance(1, 8, 0, 2, 1, 1);
  inst.catalog.num_files = K;
  inst.catalog.sizes_mbits = sizes;
  inst.catalog.popularity = zipf_popularity(K, 0.8);
  inst.catalog.requests = Grid2(K, 8);
  int next_user = 0;
  for (int k = 0; k < K; ++k)
    for (int r = 0; r < request_counts[k]; ++r)
      inst.catalog.requests(k, next_user++ % 8) = 1.0;
  inst.cache_capacity_mbits = {capacity};
  return inst;
}

AllocationState scheduled(const NetworkInstance& inst) {
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 1.0;
  return a;
}

}  // namespace

TEST_CASE("ample capacity caches every requested file") {
  NetworkInstance inst = catalog_instance({1.0, 1.0, 1.0}, {1, 1, 0}, 10.0);
  const Grid2 theta = caching::placement_lp(inst, scheduled(inst), Scenario::SFCD);
  CHECK(theta(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(theta(0, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(theta(0, 2) == 0.0);  // never requested
}

TEST_CASE("zero capacity caches nothing") {
  NetworkInstance inst = catalog_instance({1.0, 1.0}, {1, 1}, 0.0);
  const Grid2 theta = caching::placement_lp(inst, scheduled(inst), Scenario::SFCD);
  CHECK(theta(0, 0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(theta(0, 1) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("capacity for two unit files picks the two most requested") {
  NetworkInstance inst = catalog_instance({1.0, 1.0, 1.0, 1.0}, {3, 2, 1, 0}, 2.0);
  const AllocationState a = scheduled(inst);
  const Grid2 relaxed = caching::placement_lp(inst, a, Scenario::SFCD);
  const Grid2 theta = caching::round_placement(relaxed, inst);

  // oracle: enumerate all C(4,2) placements, minimizing the requested-bits
  // traffic that the LP weighting targets
  double best = 1e300;
  int best_mask = 0;
  for (int mask = 0; mask < 16; ++mask) {
    int cnt = 0;
    for (int k = 0; k < 4; ++k) cnt += (mask >> k) & 1;
    if (cnt != 2) continue;
    const std::vector<int> reqs = {3, 2, 1, 0};
    double traffic = 0.0;
    for (int k = 0; k < 4; ++k)
      if (!((mask >> k) & 1)) traffic += reqs[k];
    if (traffic < best) {
      best = traffic;
      best_mask = mask;
    }
  }
  CHECK(best_mask == 0b0011);  // files 1 and 2
  CHECK(theta(0, 0) == 1.0);
  CHECK(theta(0, 1) == 1.0);
  CHECK(theta(0, 2) == 0.0);
  CHECK(theta(0, 3) == 0.0);
}

TEST_CASE("rounding: binary input unchanged, ties break to lower index") {
  NetworkInstance inst = catalog_instance({1.0, 1.0, 1.0}, {1, 1, 1}, 2.0);
  Grid2 binary(1, 3);
  binary(0, 1) = 1.0;
  const Grid2 same = caching::round_placement(binary, inst);
  CHECK(same(0, 0) == 0.0);
  CHECK(same(0, 1) == 1.0);
  CHECK(same(0, 2) == 0.0);

  Grid2 equal(1, 3);
  for (int k = 0; k < 3; ++k) equal(0, k) = 0.5;
  const Grid2 tied = caching::round_placement(equal, inst);
  CHECK(tied(0, 0) == 1.0);
  CHECK(tied(0, 1) == 1.0);
  CHECK(tied(0, 2) == 0.0);
}

TEST_CASE("rounding never violates the cache capacity") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> sizes(5);
    for (double& s : sizes) s = 0.2 + uni(rng);
    NetworkInstance inst = catalog_instance(sizes, {1, 1, 1, 1, 1}, 1.5);
    Grid2 relaxed(1, 5);
    for (int k = 0; k < 5; ++k) relaxed(0, k) = uni(rng);
    const Grid2 theta = caching::round_placement(relaxed, inst);
    AllocationState a = scheduled(inst);
    a.cache_placement = theta;
    const auto rep = constraints::check_all(inst, a, Scenario::SFCD, 1e-6);
    for (const auto& r : rep.residuals)
      if (r.id == "cache_capacity") REQUIRE(r.value <= 1e-9);
  }
}

TEST_CASE("baselines: none, most popular, random") {
  NetworkInstance inst = catalog_instance({1.0, 1.0, 1.0}, {1, 1, 1}, 2.0);
  const Grid2 none = caching::baseline_placement(inst, caching::Strategy::None, 1);
  for (int k = 0; k < 3; ++k) CHECK(none(0, k) == 0.0);

  const Grid2 popular = caching::baseline_placement(inst, caching::Strategy::MostPopular, 1);
  CHECK(popular(0, 0) == 1.0);  // zipf popularity is descending
  CHECK(popular(0, 1) == 1.0);
  CHECK(popular(0, 2) == 0.0);

  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Grid2 random = caching::baseline_placement(inst, caching::Strategy::Random, seed);
    double used = 0.0;
    for (int k = 0; k < 3; ++k) used += random(0, k) * inst.catalog.sizes_mbits[k];
    REQUIRE(used <= inst.cache_capacity_mbits[0] + 1e-9);
  }
}

TEST_CASE("equal sizes make the rounded LP exactly dominant") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> reqs(6);
    for (int& r : reqs) r = rng() % 3;
    NetworkInstance inst = catalog_instance({1, 1, 1, 1, 1, 1}, reqs, 2.0);
    const AllocationState a = scheduled(inst);

    const Grid2 lp =
        caching::round_placement(caching::placement_lp(inst, a, Scenario::SFCD), inst);
    const Grid2 popular = caching::baseline_placement(inst, caching::Strategy::MostPopular, 1);
    const Grid2 none = caching::baseline_placement(inst, caching::Strategy::None, 1);

    const double t_lp = caching::total_backhaul_traffic_mbits(inst, a, Scenario::SFCD, lp);
    const double t_pop =
        caching::total_backhaul_traffic_mbits(inst, a, Scenario::SFCD, popular);
    const double t_none =
        caching::total_backhaul_traffic_mbits(inst, a, Scenario::SFCD, none);
    CHECK(t_lp <= t_pop + 1e-9);
    CHECK(t_pop <= t_none + 1e-9);
  }
}

TEST_CASE("with varied sizes the LP placement wins on most seeds") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int ordered = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> sizes(6);
    for (double& s : sizes) s = 0.3 + uni(rng);
    std::vector<int> reqs(6);
    for (int& r : reqs) r = 1 + static_cast<int>(rng() % 3);
    NetworkInstance inst = catalog_instance(sizes, reqs, 1.2);
    const AllocationState a = scheduled(inst);

    const Grid2 lp =
        caching::round_placement(caching::placement_lp(inst, a, Scenario::SFCD), inst);
    const Grid2 popular = caching::baseline_placement(inst, caching::Strategy::MostPopular, 1);
    const double t_lp = caching::total_backhaul_traffic_mbits(inst, a, Scenario::SFCD, lp);
    const double t_pop =
        caching::total_backhaul_traffic_mbits(inst, a, Scenario::SFCD, popular);
    if (t_lp <= t_pop + 1e-9) ++ordered;
  }
  CHECK(ordered >= 90);
}
