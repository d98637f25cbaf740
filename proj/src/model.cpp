#include "scmaee/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scmaee {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw InvalidInput("invalid params: " + field + " " + why);
}

double distance_km(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1];
  return std::hypot(dx, dy);
}

std::array<double, 2> uniform_in_disc(std::mt19937_64& rng, const std::array<double, 2>& center,
                                      double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * M_PI * unit(rng);
  return {center[0] + r * std::cos(phi), center[1] + r * std::sin(phi)};
}

}  // namespace

double path_loss_db(bool macro_tier, double d_km) {
  if (macro_tier) return 128.1 + 37.6 * std::log10(d_km);
  return 38.0 + 30.0 * std::log10(d_km);
}

std::vector<double> zipf_popularity(int num_files, double exponent) {
  require(num_files >= 1, "num_files", "must be >= 1");
  require(exponent >= 0.0, "zipf_exponent", "must be >= 0");
  std::vector<double> p(num_files);
  double z = 0.0;
  for (int k = 0; k < num_files; ++k) {
    p[k] = std::pow(static_cast<double>(k + 1), -exponent);
    z += p[k];
  }
  for (double& x : p) x /= z;
  return p;
}

NetworkInstance generate_instance(const ScenarioParams& params, std::uint64_t seed) {
  require(params.num_macro >= 0, "num_macro", "must be >= 0");
  require(params.num_small >= 0, "num_small", "must be >= 0");
  require(params.num_macro + params.num_small >= 1, "num_macro+num_small", "must be >= 1");
  require(params.users_per_bs >= 1, "users_per_bs", "must be >= 1");
  require(params.num_eves >= 0, "num_eves", "must be >= 0");
  require(params.num_subcarriers >= 1, "num_subcarriers", "must be >= 1");
  require(params.num_codebooks >= 1, "num_codebooks", "must be >= 1");
  require(params.codebook_degree >= 2, "codebook_degree", "must be >= 2 so that 0 < eta < 1");
  require(params.codebook_degree <= params.num_subcarriers, "codebook_degree",
          "must be <= num_subcarriers");
  require(params.num_frames >= 1, "num_frames", "must be >= 1");
  require(params.frame_duration_s > 0.0, "frame_duration_s", "must be > 0");
  require(params.subcarrier_bandwidth_hz > 0.0, "subcarrier_bandwidth_hz", "must be > 0");
  require(params.num_files >= 1, "num_files", "must be >= 1");
  require(params.zipf_exponent >= 0.0, "zipf_exponent", "must be >= 0");
  require(params.arrival_rate_per_s >= 0.0, "arrival_rate_per_s", "must be >= 0");
  require(params.unit_energy_j >= 0.0, "unit_energy_j", "must be >= 0");
  require(params.battery_cap_j >= 0.0, "battery_cap_j", "must be >= 0");
  require(params.initial_battery_frac >= 0.0 && params.initial_battery_frac <= 1.0,
          "initial_battery_frac", "must be in [0,1]");
  require(params.cache_capacity_mbits >= 0.0, "cache_capacity_mbits", "must be >= 0");
  require(params.backhaul_power_budget_w >= 0.0, "backhaul_power_budget_w", "must be >= 0");
  require(params.eve_uncertainty_rel >= 0.0 && params.eve_uncertainty_rel <= 1.0,
          "eve_uncertainty_rel", "must be in [0,1] so that h~ - eps stays nonnegative");
  require(params.requests_per_user >= 0, "requests_per_user", "must be >= 0");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shadow_db(0.0, params.shadowing_std_db);
  std::exponential_distribution<double> rayleigh_power(1.0);  // unit-mean power gain

  NetworkInstance inst;
  inst.rng_seed = seed;

  NetworkTopology& topo = inst.topology;
  topo.num_macro = params.num_macro;
  topo.num_small = params.num_small;
  topo.users_per_bs = params.users_per_bs;
  topo.num_eves = params.num_eves;
  topo.num_subcarriers = params.num_subcarriers;
  topo.num_codebooks = params.num_codebooks;
  topo.num_frames = params.num_frames;
  topo.frame_duration_s = params.frame_duration_s;
  topo.subcarrier_bandwidth_hz = params.subcarrier_bandwidth_hz;
  topo.cell_radius_km = params.cell_radius_km;

  const int B = topo.num_bs();
  const int U = topo.num_users();
  const int Q = topo.num_eves;
  const int N = topo.num_subcarriers;
  const int M = topo.num_codebooks;
  const int F = topo.num_frames;

  // BSs on a ring, macro tiers first; users in a disc around their own BS,
  // eavesdroppers anywhere in the network area.
  topo.bs_pos_km.resize(B);
  for (int b = 0; b < B; ++b) {
    const double phi = 2.0 * M_PI * b / B;
    topo.bs_pos_km[b] = {params.bs_ring_radius_km * std::cos(phi),
                         params.bs_ring_radius_km * std::sin(phi)};
  }
  topo.user_pos_km.resize(U);
  topo.owner_bs.resize(U);
  for (int b = 0; b < B; ++b)
    for (int j = 0; j < topo.users_per_bs; ++j) {
      const int u = b * topo.users_per_bs + j;
      topo.owner_bs[u] = b;
      topo.user_pos_km[u] = uniform_in_disc(rng, topo.bs_pos_km[b], params.cell_radius_km);
    }
  topo.eve_pos_km.resize(Q);
  for (int q = 0; q < Q; ++q)
    topo.eve_pos_km[q] =
        uniform_in_disc(rng, {0.0, 0.0}, params.bs_ring_radius_km + params.cell_radius_km);

  // Codebooks: the first M k-subsets of the N subcarriers in lexicographic
  // order, equal power proportions. N=8, degree 2 gives the usual M=28.
  CodebookStructure& cb = inst.codebooks;
  cb.incidence = Grid2(N, M);
  cb.proportion = Grid2(N, M);
  {
    std::vector<int> comb(params.codebook_degree);
    for (int i = 0; i < params.codebook_degree; ++i) comb[i] = i;
    const double eta = 1.0 / params.codebook_degree;
    int m = 0;
    while (m < M) {
      for (int i : comb) {
        cb.incidence(i, m) = 1.0;
        cb.proportion(i, m) = eta;
      }
      ++m;
      if (m >= M) break;
      // next combination
      int i = params.codebook_degree - 1;
      while (i >= 0 && comb[i] == N - params.codebook_degree + i) --i;
      require(i >= 0, "num_codebooks", "exceeds the number of distinct codebooks for this degree");
      ++comb[i];
      for (int j = i + 1; j < params.codebook_degree; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  ChannelSet& ch = inst.channels;
  ch.access_gain = Grid4(B, U, N, F);
  ch.eve_gain_est = Grid4(B, Q, N, F);
  ch.eve_uncertainty = Grid4(B, Q, N, F);
  ch.backhaul_gain = Grid3(B, N, F);
  ch.noise_user = Grid2(U, N);
  ch.noise_eve = Grid2(std::max(Q, 1), N);
  ch.noise_bs = Grid2(B, N);

  const double sigma2 = dbm_to_watt(params.noise_dbm);
  for (int u = 0; u < U; ++u)
    for (int n = 0; n < N; ++n) ch.noise_user(u, n) = sigma2;
  for (int q = 0; q < std::max(Q, 1); ++q)
    for (int n = 0; n < N; ++n) ch.noise_eve(q, n) = sigma2;
  for (int b = 0; b < B; ++b)
    for (int n = 0; n < N; ++n) ch.noise_bs(b, n) = sigma2;

  // Block fading: one shadowing draw per (bs, receiver), one Rayleigh draw
  // per (bs, receiver, subcarrier, frame).
  for (int b = 0; b < B; ++b) {
    for (int u = 0; u < U; ++u) {
      const double d = std::max(params.min_distance_km,
                                distance_km(topo.bs_pos_km[b], topo.user_pos_km[u]));
      const double pl = path_loss_db(topo.is_macro(b), d) + shadow_db(rng);
      const double g0 = db_to_linear(-pl);
      for (int t = 0; t < F; ++t)
        for (int n = 0; n < N; ++n) ch.access_gain(b, u, n, t) = g0 * rayleigh_power(rng);
    }
    for (int q = 0; q < Q; ++q) {
      const double d = std::max(params.min_distance_km,
                                distance_km(topo.bs_pos_km[b], topo.eve_pos_km[q]));
      const double pl = path_loss_db(topo.is_macro(b), d) + shadow_db(rng);
      const double g0 = db_to_linear(-pl);
      for (int t = 0; t < F; ++t)
        for (int n = 0; n < N; ++n) {
          const double h = g0 * rayleigh_power(rng);
          ch.eve_gain_est(b, q, n, t) = h;
          ch.eve_uncertainty(b, q, n, t) = params.eve_uncertainty_rel * h;
        }
    }
    {
      const double pl = path_loss_db(true, std::max(params.min_distance_km,
                                                    params.backhaul_distance_km)) +
                        shadow_db(rng);
      const double g0 = db_to_linear(-pl);
      for (int t = 0; t < F; ++t)
        for (int n = 0; n < N; ++n) ch.backhaul_gain(b, n, t) = g0 * rayleigh_power(rng);
    }
  }

  ContentCatalog& cat = inst.catalog;
  cat.num_files = params.num_files;
  cat.popularity = zipf_popularity(params.num_files, params.zipf_exponent);
  cat.sizes_mbits.resize(params.num_files);
  if (params.size_model == "fixed") {
    for (double& a : cat.sizes_mbits) a = params.alpha_fixed_mbits;
  } else if (params.size_model == "lognormal") {
    std::normal_distribution<double> ln(params.lognormal_mu, params.lognormal_kappa);
    const double mean = std::exp(params.lognormal_mu + 0.5 * params.lognormal_kappa *
                                                            params.lognormal_kappa);
    for (double& a : cat.sizes_mbits) {
      const double raw = params.alpha_mean_mbits * std::exp(ln(rng)) / mean;
      a = std::clamp(raw, params.alpha_clamp_lo_mbits, params.alpha_clamp_hi_mbits);
    }
  } else {
    throw InvalidInput("invalid params: size_model must be 'fixed' or 'lognormal'");
  }
  for (double a : cat.sizes_mbits) require(a > 0.0, "sizes_mbits", "must be > 0");

  cat.requests = Grid2(params.num_files, U);
  {
    std::vector<double> cdf(params.num_files);
    double acc = 0.0;
    for (int k = 0; k < params.num_files; ++k) {
      acc += cat.popularity[k];
      cdf[k] = acc;
    }
    for (int u = 0; u < U; ++u)
      for (int r = 0; r < params.requests_per_user; ++r) {
        const double x = unit(rng);
        const int k = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
        cat.requests(std::min(k, params.num_files - 1), u) = 1.0;
      }
  }

  EnergyModel& en = inst.energy;
  en.arrival_rate.assign(B, params.arrival_rate_per_s);
  en.unit_energy_j.assign(B, params.unit_energy_j);
  en.battery_cap_j.assign(B, params.battery_cap_j);
  en.initial_battery_j.assign(B, params.initial_battery_frac * params.battery_cap_j);
  en.harvested_j = Grid2(B, F);
  en.arrivals = Grid2(B, F);
  const double lambda = params.arrival_rate_per_s * params.frame_duration_s;
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t) {
      double draws = 0.0;
      if (lambda > 0.0) {
        std::poisson_distribution<int> pois(lambda);
        draws = pois(rng);
      }
      en.arrivals(b, t) = draws;
      en.harvested_j(b, t) = draws * params.unit_energy_j;
    }

  inst.cache_capacity_mbits.assign(B, params.cache_capacity_mbits);
  inst.backhaul_power_budget_w.assign(F, params.backhaul_power_budget_w);
  require(params.reuse_cap >= 1, "reuse_cap", "must be >= 1");
  inst.reuse_cap = params.reuse_cap;
  return inst;
}

}  // namespace scmaee
