#ifndef SCMAEE_MODEL_HPP
#define SCMAEE_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scmaee/common.hpp"

namespace scmaee {

enum class Scenario { SFCD, MFCD };

// Cell counts, frame structure and geometry. Users keep a fixed BS
// association for the whole run; `owner_bs[u]` maps a global user index to
// its serving BS.
struct NetworkTopology {
  int num_macro = 1;
  int num_small = 1;
  int users_per_bs = 4;
  int num_eves = 1;
  int num_subcarriers = 8;
  int num_codebooks = 28;
  int num_frames = 2;
  double frame_duration_s = 0.01;
  double subcarrier_bandwidth_hz = 180e3;
  double cell_radius_km = 1.0;

  std::vector<std::array<double, 2>> bs_pos_km;
  std::vector<std::array<double, 2>> user_pos_km;
  std::vector<std::array<double, 2>> eve_pos_km;
  std::vector<int> owner_bs;  // per global user

  int num_bs() const { return num_macro + num_small; }
  int num_users() const { return num_bs() * users_per_bs; }
  bool is_macro(int b) const { return b < num_macro; }
};

// SCMA incidence c[n][m] in {0,1} and per-subcarrier power proportions
// eta[n][m]; each codebook's proportions sum to one.
struct CodebookStructure {
  Grid2 incidence;   // [N][M]
  Grid2 proportion;  // [N][M]
};

struct ChannelSet {
  Grid4 access_gain;      // g[b][u][n][t], u global
  Grid4 eve_gain_est;     // h~[b][q][n][t]
  Grid4 eve_uncertainty;  // eps[b][q][n][t]
  Grid3 backhaul_gain;    // h~_b[b][n][t]
  Grid2 noise_user;       // [u][n], Watts
  Grid2 noise_eve;        // [q][n]
  Grid2 noise_bs;         // [b][n]
};

struct ContentCatalog {
  int num_files = 6;
  std::vector<double> sizes_mbits;   // alpha_k
  std::vector<double> popularity;    // sums to 1, descending
  Grid2 requests;                    // upsilon[k][u] in {0,1}
};

struct EnergyModel {
  std::vector<double> arrival_rate;     // Gamma_b, arrivals/s
  std::vector<double> unit_energy_j;    // rho_b
  std::vector<double> battery_cap_j;    // Emax_b
  std::vector<double> initial_battery_j;  // E^1_b
  Grid2 harvested_j;                    // E~[b][t]
  Grid2 arrivals;                       // varpi[b][t], integer-valued draws
};

struct NetworkInstance {
  NetworkTopology topology;
  CodebookStructure codebooks;
  ChannelSet channels;
  ContentCatalog catalog;
  EnergyModel energy;
  std::vector<double> cache_capacity_mbits;    // V_b
  std::vector<double> backhaul_power_budget_w; // P^Total per frame
  int reuse_cap = 2;                           // D
  std::uint64_t rng_seed = 0;

  // Mbits delivered per frame by one unit of spectral rate (bits/s/Hz);
  // the single unit bridge used by every traffic constraint.
  double mbits_per_unit_rate() const {
    return topology.frame_duration_s * topology.subcarrier_bandwidth_hz / 1e6;
  }
};

// Everything generate_instance needs; mirrors the JSON schema in
// configs/README. Distances in km, powers in Watts, energies in Joules,
// sizes in Mbits.
struct ScenarioParams {
  int num_macro = 1;
  int num_small = 1;
  int users_per_bs = 4;
  int num_eves = 1;
  int num_subcarriers = 8;
  int num_codebooks = 28;
  int codebook_degree = 2;  // subcarriers per codebook
  int num_frames = 2;
  double frame_duration_s = 0.01;
  double subcarrier_bandwidth_hz = 180e3;
  double cell_radius_km = 1.0;
  double bs_ring_radius_km = 0.5;
  double min_distance_km = 0.03;
  double shadowing_std_db = 8.0;
  double noise_dbm = -125.0;
  double backhaul_distance_km = 0.5;

  int num_files = 6;
  std::string size_model = "fixed";  // fixed | lognormal
  double alpha_fixed_mbits = 0.02;
  double alpha_mean_mbits = 0.02;
  double lognormal_mu = 0.0;
  double lognormal_kappa = 0.5;
  double alpha_clamp_lo_mbits = 0.002;
  double alpha_clamp_hi_mbits = 100.0;
  double zipf_exponent = 0.8;
  int requests_per_user = 1;

  double arrival_rate_per_s = 50.0;   // Gamma
  double unit_energy_j = 0.5;         // rho
  double battery_cap_j = 2.0;         // Emax
  double initial_battery_frac = 0.5;
  double cache_capacity_mbits = 0.05; // V_b
  double backhaul_power_budget_w = 0.1;
  double eve_uncertainty_rel = 0.5;   // eps = rel * h~
  int reuse_cap = 2;                  // D
};

// p_k proportional to k^(-exponent), k = 1..K, normalized.
std::vector<double> zipf_popularity(int num_files, double exponent);

// Deterministic part of the path loss in dB at distance d_km (shadowing
// excluded): 128.1 + 37.6*log10(d) for the macro tier, 38 + 30*log10(d)
// for small cells.
double path_loss_db(bool macro_tier, double d_km);

// Deterministic given (params, seed): path loss 128.1+37.6*log10(d)+X for
// macro tier and 38+30*log10(d)+X for small cells, X lognormal shadowing in
// dB; unit-mean Rayleigh power fading; Poisson energy arrivals; Zipf
// requests.
NetworkInstance generate_instance(const ScenarioParams& params, std::uint64_t seed);

}  // namespace scmaee

#endif  // SCMAEE_MODEL_HPP
