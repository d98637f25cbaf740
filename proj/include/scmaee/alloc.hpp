#ifndef SCMAEE_ALLOC_HPP
#define SCMAEE_ALLOC_HPP

#include "scmaee/common.hpp"
#include "scmaee/model.hpp"

namespace scmaee {

// Adversarial eavesdropper channels assembled by the worst-case module.
// `signal[b][q][n][t]` is the channel the adversary uses against BS b's own
// link (its wiretap signal role); `interference[b][q][n][t]` is the channel
// used when BS b interferes with some other BS's link. Keeping the two
// roles apart is what makes the per-link worst cases representable in one
// state object; both tensors always stay inside the uncertainty box.
struct WorstCaseChannels {
  Grid4 signal;
  Grid4 interference;
};

// All decision variables plus the epigraph auxiliaries. Users are indexed
// globally; the owning BS of user u is inst.topology.owner_bs[u], so p and s
// need no BS axis.
struct AllocationState {
  Grid3 access_power;     // p[u][m][t], Watts
  Grid3 backhaul_power;   // p~[b][n][t], Watts
  Grid3 codebook_assign;  // s[u][m][t]
  Grid2 cache_placement;  // theta[b][k]
  Grid2 backhaul_subcarrier;  // zeta[b][n]
  Grid2 split_sizes;      // beta[k][t], Mbits (MFCD)
  Grid3 aux_phi;          // phi[u][m][t]
  Grid3 aux_delta;        // delta[u][m][t]
  WorstCaseChannels worst_case;

  bool s_relaxed = false;
  bool theta_relaxed = false;
  bool zeta_relaxed = false;

  static AllocationState zeros(const NetworkInstance& inst) {
    const auto& topo = inst.topology;
    const int B = topo.num_bs(), U = topo.num_users(), Q = std::max(topo.num_eves, 1);
    const int N = topo.num_subcarriers, M = topo.num_codebooks, F = topo.num_frames;
    const int K = inst.catalog.num_files;
    AllocationState a;
    a.access_power = Grid3(U, M, F);
    a.backhaul_power = Grid3(B, N, F);
    a.codebook_assign = Grid3(U, M, F);
    a.cache_placement = Grid2(B, K);
    a.backhaul_subcarrier = Grid2(B, N);
    a.split_sizes = Grid2(K, F);
    a.aux_phi = Grid3(U, M, F);
    a.aux_delta = Grid3(U, M, F);
    a.worst_case.signal = Grid4(B, Q, N, F);
    a.worst_case.interference = Grid4(B, Q, N, F);
    for (int b = 0; b < B; ++b)
      for (int q = 0; q < topo.num_eves; ++q)
        for (int n = 0; n < N; ++n)
          for (int t = 0; t < F; ++t) {
            a.worst_case.signal(b, q, n, t) = inst.channels.eve_gain_est(b, q, n, t);
            a.worst_case.interference(b, q, n, t) = inst.channels.eve_gain_est(b, q, n, t);
          }
    return a;
  }
};

}  // namespace scmaee

#endif  // SCMAEE_ALLOC_HPP
