#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scmaee/experiments.hpp"
#include "scmaee/model.hpp"

using namespace scmaee;

TEST_CASE("zipf: uniform limit at zero exponent") {
  const auto p = zipf_popularity(3, 0.0);
  for (double x : p) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zipf: two files at exponent one") {
  const auto p = zipf_popularity(2, 1.0);
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zipf: matches direct summation oracle") {
  const int K = 6;
  const double e = 0.8;
  double z = 0.0;
  for (int k = 1; k <= K; ++k) z += std::pow(k, -e);
  const auto p = zipf_popularity(K, e);
  for (int k = 1; k <= K; ++k)
    CHECK(p[k - 1] == doctest::Approx(std::pow(k, -e) / z).epsilon(1e-12));
}

TEST_CASE("path loss at 1 km") {
  CHECK(path_loss_db(true, 1.0) == doctest::Approx(128.1).epsilon(1e-12));
  CHECK(path_loss_db(false, 1.0) == doctest::Approx(38.0).epsilon(1e-12));
}

TEST_CASE("zero arrival rate harvests nothing") {
  ScenarioParams p;
  p.arrival_rate_per_s = 0.0;
  const NetworkInstance inst = generate_instance(p, 3);
  for (int b = 0; b < inst.topology.num_bs(); ++b)
    for (int t = 0; t < inst.topology.num_frames; ++t)
      CHECK(inst.energy.harvested_j(b, t) == 0.0);
}

TEST_CASE("same seed gives bit-identical instances") {
  ScenarioParams p;
  p.size_model = "lognormal";
  const NetworkInstance a = generate_instance(p, 42);
  const NetworkInstance b = generate_instance(p, 42);
  CHECK(a.channels.access_gain == b.channels.access_gain);
  CHECK(a.channels.eve_gain_est == b.channels.eve_gain_est);
  CHECK(a.channels.backhaul_gain == b.channels.backhaul_gain);
  CHECK(a.energy.harvested_j == b.energy.harvested_j);
  CHECK(a.catalog.sizes_mbits == b.catalog.sizes_mbits);
  CHECK(a.catalog.requests == b.catalog.requests);
  const NetworkInstance c = generate_instance(p, 43);
  CHECK(!(a.channels.access_gain == c.channels.access_gain));
}

TEST_CASE("invalid params name the offending field") {
  ScenarioParams p;
  p.users_per_bs = 0;
  CHECK_THROWS_WITH_AS(generate_instance(p, 1),
                       doctest::Contains("users_per_bs"), InvalidInput);
  ScenarioParams q;
  q.eve_uncertainty_rel = 1.5;
  CHECK_THROWS_WITH_AS(generate_instance(q, 1),
                       doctest::Contains("eve_uncertainty_rel"), InvalidInput);
}

TEST_CASE("generated instances satisfy channel and energy invariants") {
  ScenarioParams p;
  p.num_frames = 2;
  for (int seed = 1; seed <= 1000; ++seed) {
    const NetworkInstance a = generate_instance(p, seed);
    const auto& topo = a.topology;
    for (int b = 0; b < topo.num_bs(); ++b) {
      for (int q = 0; q < topo.num_eves; ++q)
        for (int n = 0; n < topo.num_subcarriers; ++n)
          for (int t = 0; t < topo.num_frames; ++t) {
            const double lo = a.channels.eve_gain_est(b, q, n, t) -
                              a.channels.eve_uncertainty(b, q, n, t);
            REQUIRE(lo >= 0.0);
          }
      REQUIRE(a.energy.initial_battery_j[b] >= 0.0);
      REQUIRE(a.energy.initial_battery_j[b] <= a.energy.battery_cap_j[b]);
      for (int t = 0; t < topo.num_frames; ++t) REQUIRE(a.energy.harvested_j(b, t) >= 0.0);
    }
  }
}

TEST_CASE("statistical suite: arrivals and shadowing") {
  ScenarioParams p;
  std::string log;
  const int failures = experiments::validate_model(p, 200, log);
  INFO(log);
  CHECK(failures == 0);
}
