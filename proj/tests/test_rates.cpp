#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "scmaee/rates.hpp"

using namespace scmaee;
using testing::manual_instance;
using testing::random_schedule;
using testing::randomize_channels;

namespace {

rates::EveChannels nominal_view(const NetworkInstance& inst) {
  return [&inst](int b, int q, int n, int t) { return inst.channels.eve_gain_est(b, q, n, t); };
}

}  // namespace

TEST_CASE("access sinr: single active subcarrier plug-in") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  inst.channels.access_gain(0, 0, 0, 0) = 1.0;  // second codebook subcarrier stays at zero gain
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 2.0;
  CHECK(rates::access_sinr(inst, a, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));

  a.access_power(0, 0, 0) = 0.0;
  CHECK(rates::access_sinr(inst, a, 0, 0, 0, 0) == 0.0);
}

TEST_CASE("access sinr: two-BS hand evaluation") {
  NetworkInstance inst = manual_instance(2, 1, 0, 2, 1, 1);
  // own gains 1.0, cross gains 0.25 on both subcarriers
  for (int n = 0; n < 2; ++n) {
    inst.channels.access_gain(0, 0, n, 0) = 1.0;
    inst.channels.access_gain(1, 1, n, 0) = 1.0;
    inst.channels.access_gain(0, 1, n, 0) = 0.25;
    inst.channels.access_gain(1, 0, n, 0) = 0.25;
  }
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.codebook_assign(1, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 2.0;
  a.access_power(1, 0, 0) = 2.0;
  // signal = 2 * (0.5 + 0.5) = 2; interference = 2 * 0.25; noise 1
  const double expect = 2.0 / (0.5 + 1.0);
  CHECK(rates::access_sinr(inst, a, 0, 0, 0, 0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(rates::access_rate(inst, a, 0, 0, 0, 0) ==
        doctest::Approx(std::log2(1.0 + expect)).epsilon(1e-12));
}

TEST_CASE("access rate basics") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  inst.channels.access_gain(0, 0, 0, 0) = 2.0;  // eta 0.5 -> unit slope
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 1.0;
  CHECK(rates::access_rate(inst, a, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  a.access_power(0, 0, 0) = 0.5;
  CHECK(rates::access_rate(inst, a, 0, 0, 0, 0) ==
        doctest::Approx(std::log2(1.5)).epsilon(1e-12));
}

TEST_CASE("eve rate: zero gains and the log2(4) point") {
  NetworkInstance inst = manual_instance(1, 1, 1, 2, 1, 1);
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 2.0;
  CHECK(rates::eve_rate(inst, a, 0, 0, 0, 0, 0, nominal_view(inst)) == 0.0);

  inst.channels.eve_gain_est(0, 0, 0, 0) = 3.0;  // eta*s*p*h/sigma2 = 0.5*2*3 = 3
  const AllocationState b = [&] {
    AllocationState x = AllocationState::zeros(inst);
    x.codebook_assign(0, 0, 0) = 1.0;
    x.access_power(0, 0, 0) = 2.0;
    return x;
  }();
  CHECK(rates::eve_rate(inst, b, 0, 0, 0, 0, 0, nominal_view(inst)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eve rate: random instance matches scalar oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 2, 4, 4, 2);
    randomize_channels(inst, rng);
    AllocationState a = random_schedule(inst, rng);

    for (int u = 0; u < inst.topology.num_users(); ++u)
      for (int m = 0; m < 4; ++m)
        for (int t = 0; t < 2; ++t) {
          if (a.codebook_assign(u, m, t) < 0.5) continue;
          const int b = inst.topology.owner_bs[u];
          for (int q = 0; q < 2; ++q) {
            // scalar oracle straight from the SINR definition
            double sig = 0.0, intf = 0.0;
            for (int n = 0; n < 4; ++n)
              sig += inst.codebooks.proportion(n, m) * a.access_power(u, m, t) *
                     inst.channels.eve_gain_est(b, q, n, t);
            for (int v = 0; v < inst.topology.num_users(); ++v) {
              if (inst.topology.owner_bs[v] == b) continue;
              for (int n = 0; n < 4; ++n)
                intf += inst.codebooks.proportion(n, m) * a.codebook_assign(v, m, t) *
                        a.access_power(v, m, t) * inst.channels.eve_gain_est(
                            inst.topology.owner_bs[v], q, n, t);
            }
            const double oracle = std::log2(1.0 + sig / (intf + 1.0));
            CHECK(rates::eve_rate(inst, a, b, u, q, m, t, nominal_view(inst)) ==
                  doctest::Approx(oracle).epsilon(1e-12));
          }
        }
  }
}

TEST_CASE("eve rate rejects channels outside the box") {
  NetworkInstance inst = manual_instance(1, 1, 1, 2, 1, 1);
  inst.channels.eve_gain_est(0, 0, 0, 0) = 1.0;
  inst.channels.eve_uncertainty(0, 0, 0, 0) = 0.1;
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 1.0;
  CHECK_THROWS_AS(rates::eve_rate(inst, a, 0, 0, 0, 0, 0,
                                  [](int, int, int, int) { return 2.0; }),
                  InvalidInput);
}

TEST_CASE("secrecy rate: clamp and max over eavesdroppers") {
  NetworkInstance inst = manual_instance(1, 1, 2, 2, 1, 1);
  inst.channels.access_gain(0, 0, 0, 0) = 6.0;  // R^D = log2(4) = 2
  inst.channels.eve_gain_est(0, 0, 0, 0) = 0.8284271247461903;  // R^E = 0.5
  inst.channels.eve_gain_est(0, 1, 0, 0) = 0.4622888266898326;  // R^E = 0.3
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 1.0;
  // worst_case tensors default to the estimates
  CHECK(rates::access_rate(inst, a, 0, 0, 0, 0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rates::eve_rate_worst(inst, a, 0, 0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rates::eve_rate_worst(inst, a, 0, 0, 1, 0, 0) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(rates::secrecy_rate(inst, a, 0, 0, 0, 0) == doctest::Approx(1.5).epsilon(1e-9));

  // clamp at zero when the eavesdropper is stronger
  inst.channels.eve_gain_est(0, 0, 0, 0) = 50.0;
  AllocationState b = AllocationState::zeros(inst);
  b.codebook_assign(0, 0, 0) = 1.0;
  b.access_power(0, 0, 0) = 1.0;
  CHECK(rates::secrecy_rate(inst, b, 0, 0, 0, 0) == 0.0);
}

TEST_CASE("secrecy degenerates to access rate without eavesdroppers") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  inst.channels.access_gain(0, 0, 0, 0) = 2.0;
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 3.0;
  CHECK(rates::secrecy_rate(inst, a, 0, 0, 0, 0) ==
        doctest::Approx(rates::access_rate(inst, a, 0, 0, 0, 0)).epsilon(1e-15));
}

TEST_CASE("backhaul rate") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  AllocationState a = AllocationState::zeros(inst);
  CHECK(rates::backhaul_rate(inst, a, 0, 0, 0) == 0.0);
  inst.channels.backhaul_gain(0, 0, 0) = 2.0;
  a.backhaul_power(0, 0, 0) = 0.5;  // p*h/sigma2 = 1
  CHECK(rates::backhaul_rate(inst, a, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(9);
  NetworkInstance r = manual_instance(2, 1, 0, 4, 4, 2);
  randomize_channels(r, rng);
  AllocationState ra = AllocationState::zeros(r);
  ra.backhaul_power(1, 2, 1) = 1.7;
  const double oracle =
      std::log2(1.0 + 1.7 * r.channels.backhaul_gain(1, 2, 1) / r.channels.noise_bs(1, 2));
  CHECK(rates::backhaul_rate(r, ra, 1, 2, 1) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("dc splits recover the rates exactly") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 1, 4, 4, 2);
    randomize_channels(inst, rng);
    AllocationState a = random_schedule(inst, rng);
    for (int u = 0; u < inst.topology.num_users(); ++u)
      for (int m = 0; m < 4; ++m)
        for (int t = 0; t < 2; ++t) {
          if (a.codebook_assign(u, m, t) < 0.5) continue;
          const int b = inst.topology.owner_bs[u];
          const auto sp = rates::dc_split_access(inst, a, b, u, m, t);
          CHECK(sp.first - sp.second ==
                doctest::Approx(rates::access_rate(inst, a, b, u, m, t)).epsilon(1e-10));
          const auto se = rates::dc_split_eve(inst, a, b, u, 0, m, t, nominal_view(inst));
          CHECK(se.first - se.second ==
                doctest::Approx(rates::eve_rate(inst, a, b, u, 0, m, t, nominal_view(inst)))
                    .epsilon(1e-10));
        }
  }
}

TEST_CASE("dc split: no interference puts the noise in the second log") {
  NetworkInstance inst = manual_instance(1, 1, 0, 2, 1, 1);
  inst.channels.access_gain(0, 0, 0, 0) = 1.0;
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 1.0;
  const auto sp = rates::dc_split_access(inst, a, 0, 0, 0, 0);
  CHECK(sp.second == doctest::Approx(std::log2(1.0)).epsilon(1e-12));

  // zero power makes both logs equal
  a.access_power(0, 0, 0) = 0.0;
  const auto sp0 = rates::dc_split_access(inst, a, 0, 0, 0, 0);
  CHECK(sp0.first == doctest::Approx(sp0.second).epsilon(1e-12));
}

TEST_CASE("eve rate gradient: hand value and finite differences") {
  NetworkInstance inst = manual_instance(1, 1, 1, 2, 1, 1);
  inst.channels.eve_gain_est(0, 0, 0, 0) = 1.0;
  AllocationState a = AllocationState::zeros(inst);
  a.codebook_assign(0, 0, 0) = 1.0;
  a.access_power(0, 0, 0) = 2.0;
  // (s/ln2) * (eta*h) / (eta*s*p*h + sigma2) = (1/ln2)*0.5/2
  const double hand = 0.5 / (std::log(2.0) * 2.0);
  CHECK(rates::eve_rate_gradient(inst, a, 0, 0, 0, 0, 0, nominal_view(inst)) ==
        doctest::Approx(hand).epsilon(1e-12));
  CHECK(hand == doctest::Approx(0.3607).epsilon(1e-3));

  // s = 0 kills the gradient
  AllocationState z = AllocationState::zeros(inst);
  z.access_power(0, 0, 0) = 2.0;
  CHECK(rates::eve_rate_gradient(inst, z, 0, 0, 0, 0, 0, nominal_view(inst)) == 0.0);
}

TEST_CASE("eve rate gradient matches central differences on random points") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 100) {
    NetworkInstance inst = manual_instance(2, 2, 2, 4, 4, 2);
    randomize_channels(inst, rng);
    AllocationState a = random_schedule(inst, rng);
    for (int u = 0; u < inst.topology.num_users() && checked < 100; ++u)
      for (int m = 0; m < 4; ++m)
        for (int t = 0; t < 2; ++t) {
          if (a.codebook_assign(u, m, t) < 0.5) continue;
          const int b = inst.topology.owner_bs[u];
          const int q = checked % 2;
          const double g =
              rates::eve_rate_gradient(inst, a, b, u, q, m, t, nominal_view(inst));
          const double h = 1e-6 * std::max(1.0, a.access_power(u, m, t));
          const double p0 = a.access_power(u, m, t);
          a.access_power(u, m, t) = p0 + h;
          const double fp =
              rates::dc_split_eve(inst, a, b, u, q, m, t, nominal_view(inst)).first;
          a.access_power(u, m, t) = p0 - h;
          const double fm =
              rates::dc_split_eve(inst, a, b, u, q, m, t, nominal_view(inst)).first;
          a.access_power(u, m, t) = p0;
          const double fd = (fp - fm) / (2.0 * h);
          CHECK(g == doctest::Approx(fd).epsilon(1e-5));
          ++checked;
        }
  }
}

TEST_CASE("monotonicity: own power helps, interference hurts") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkInstance inst = manual_instance(2, 1, 0, 4, 4, 1);
    randomize_channels(inst, rng);
    AllocationState a = AllocationState::zeros(inst);
    a.codebook_assign(0, 1, 0) = 1.0;
    a.codebook_assign(1, 1, 0) = 1.0;  // same codebook, other BS
    std::uniform_real_distribution<double> uni(0.1, 2.0);
    a.access_power(0, 1, 0) = uni(rng);
    a.access_power(1, 1, 0) = uni(rng);

    const double base = rates::access_rate(inst, a, 0, 0, 1, 0);
    a.access_power(0, 1, 0) *= 1.5;
    CHECK(rates::access_rate(inst, a, 0, 0, 1, 0) >= base - 1e-12);
    a.access_power(0, 1, 0) /= 1.5;
    a.access_power(1, 1, 0) *= 1.5;
    CHECK(rates::access_rate(inst, a, 0, 0, 1, 0) <= base + 1e-12);
  }
}

TEST_CASE("secrecy rate stays within [0, access rate]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkInstance inst = manual_instance(2, 2, 2, 4, 4, 2);
    randomize_channels(inst, rng);
    AllocationState a = random_schedule(inst, rng);
    for (int u = 0; u < inst.topology.num_users(); ++u)
      for (int m = 0; m < 4; ++m)
        for (int t = 0; t < 2; ++t) {
          if (a.codebook_assign(u, m, t) < 0.5) continue;
          const int b = inst.topology.owner_bs[u];
          const double rs = rates::secrecy_rate(inst, a, b, u, m, t);
          CHECK(rs >= 0.0);
          CHECK(rs <= rates::access_rate(inst, a, b, u, m, t) + 1e-12);
        }
  }
}
