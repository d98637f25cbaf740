#ifndef SCMAEE_RATES_HPP
#define SCMAEE_RATES_HPP

#include <functional>

#include "scmaee/alloc.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace rates {

// Channel lookup for eavesdropper-rate evaluation: (b, q, n, t) -> gain.
using EveChannels = std::function<double(int, int, int, int)>;

// Noise seen by user u on codebook m: the mean over the codebook's active
// subcarriers (equals the scalar noise power in every shipped config).
double user_noise(const NetworkInstance& inst, int u, int m);
double eve_noise(const NetworkInstance& inst, int q, int m);

// Received own-signal and inter-cell interference (same codebook, other
// BSs' users) for user u of BS b on codebook m at frame t.
double access_signal(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                     int t);
double access_interference(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                           int m, int t);

double access_sinr(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                   int t);
double access_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                   int t);

// Eavesdropper rate at the supplied channel realization, which must lie in
// the uncertainty box.
double eve_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q, int m,
                int t, const EveChannels& channels);

// Eavesdropper rate at the allocation's stored worst-case channels.
double eve_rate_worst(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q,
                      int m, int t);

// [R^D - max_q R^E]^+ with the eavesdropper max over the stored worst-case
// channels; an empty eavesdropper set contributes zero.
double secrecy_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                    int t);

double backhaul_rate(const NetworkInstance& inst, const AllocationState& a, int b, int n, int t);

// Difference-of-logs split: first = log2(signal + interference + noise),
// second = log2(interference + noise), so first - second recovers the rate
// exactly.
struct RateSplit {
  double first = 0.0;
  double second = 0.0;
};
RateSplit dc_split_access(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                          int m, int t);
RateSplit dc_split_eve(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q,
                       int m, int t, const EveChannels& channels);
RateSplit dc_split_eve_worst(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                             int q, int m, int t);

// d(R^E_first)/d(p[u][m][t]) at the supplied channels.
double eve_rate_gradient(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                         int q, int m, int t, const EveChannels& channels);

}  // namespace rates
}  // namespace scmaee

#endif  // SCMAEE_RATES_HPP
