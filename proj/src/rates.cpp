#include "scmaee/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scmaee {
namespace rates {

namespace {

void check_link(const NetworkInstance& inst, int b, int u, int m, int t) {
  const auto& topo = inst.topology;
  if (b < 0 || b >= topo.num_bs() || u < 0 || u >= topo.num_users() || m < 0 ||
      m >= topo.num_codebooks || t < 0 || t >= topo.num_frames)
    throw std::out_of_range("rates: index out of range");
  if (topo.owner_bs[u] != b) throw std::out_of_range("rates: user not served by this BS");
}

double codebook_noise(const NetworkInstance& inst, const Grid2& noise, int row, int m) {
  const int N = inst.topology.num_subcarriers;
  double acc = 0.0;
  int cnt = 0;
  for (int n = 0; n < N; ++n)
    if (inst.codebooks.incidence(n, m) > 0.5) {
      acc += noise(row, n);
      ++cnt;
    }
  return cnt > 0 ? acc / cnt : 0.0;
}

}  // namespace

double user_noise(const NetworkInstance& inst, int u, int m) {
  return codebook_noise(inst, inst.channels.noise_user, u, m);
}

double eve_noise(const NetworkInstance& inst, int q, int m) {
  return codebook_noise(inst, inst.channels.noise_eve, q, m);
}

double access_signal(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                     int t) {
  check_link(inst, b, u, m, t);
  const int N = inst.topology.num_subcarriers;
  double gsum = 0.0;
  for (int n = 0; n < N; ++n)
    gsum += inst.codebooks.proportion(n, m) * inst.channels.access_gain(b, u, n, t);
  return a.codebook_assign(u, m, t) * a.access_power(u, m, t) * gsum;
}

double access_interference(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                           int m, int t) {
  check_link(inst, b, u, m, t);
  const auto& topo = inst.topology;
  const int N = topo.num_subcarriers;
  double acc = 0.0;
  for (int v = 0; v < topo.num_users(); ++v) {
    const int bv = topo.owner_bs[v];
    if (bv == b) continue;
    const double sp = a.codebook_assign(v, m, t) * a.access_power(v, m, t);
    if (sp == 0.0) continue;
    double gsum = 0.0;
    for (int n = 0; n < N; ++n)
      gsum += inst.codebooks.proportion(n, m) * inst.channels.access_gain(bv, u, n, t);
    acc += sp * gsum;
  }
  return acc;
}

double access_sinr(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                   int t) {
  const double sig = access_signal(inst, a, b, u, m, t);
  const double denom = access_interference(inst, a, b, u, m, t) + user_noise(inst, u, m);
  return sig / denom;
}

double access_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                   int t) {
  return log2_1p(access_sinr(inst, a, b, u, m, t));
}

namespace {

struct EveTerms {
  double signal = 0.0;
  double interference = 0.0;
};

EveTerms eve_terms(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q,
                   int m, int t, const EveChannels& channels, bool validate_box) {
  check_link(inst, b, u, m, t);
  const auto& topo = inst.topology;
  const int N = topo.num_subcarriers;
  if (q < 0 || q >= topo.num_eves) throw std::out_of_range("rates: eavesdropper index");

  if (validate_box) {
    for (int bb = 0; bb < topo.num_bs(); ++bb)
      for (int n = 0; n < N; ++n) {
        const double h = channels(bb, q, n, t);
        const double est = inst.channels.eve_gain_est(bb, q, n, t);
        const double eps = inst.channels.eve_uncertainty(bb, q, n, t);
        const double slack = 1e-9 * std::max(1.0, est);
        if (h < est - eps - slack || h > est + eps + slack)
          throw InvalidInput("eve channels outside the uncertainty box");
      }
  }

  EveTerms out;
  {
    double hsum = 0.0;
    for (int n = 0; n < N; ++n)
      hsum += inst.codebooks.proportion(n, m) * channels(b, q, n, t);
    out.signal = a.codebook_assign(u, m, t) * a.access_power(u, m, t) * hsum;
  }
  for (int v = 0; v < topo.num_users(); ++v) {
    const int bv = topo.owner_bs[v];
    if (bv == b) continue;
    const double sp = a.codebook_assign(v, m, t) * a.access_power(v, m, t);
    if (sp == 0.0) continue;
    double hsum = 0.0;
    for (int n = 0; n < N; ++n)
      hsum += inst.codebooks.proportion(n, m) * channels(bv, q, n, t);
    out.interference += sp * hsum;
  }
  return out;
}

EveChannels worst_case_view(const AllocationState& a, int b) {
  return [&a, b](int bb, int qq, int nn, int tt) {
    return bb == b ? a.worst_case.signal(bb, qq, nn, tt)
                   : a.worst_case.interference(bb, qq, nn, tt);
  };
}

}  // namespace

double eve_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q, int m,
                int t, const EveChannels& channels) {
  const EveTerms e = eve_terms(inst, a, b, u, q, m, t, channels, true);
  return log2_1p(e.signal / (e.interference + eve_noise(inst, q, m)));
}

double eve_rate_worst(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q,
                      int m, int t) {
  const EveTerms e = eve_terms(inst, a, b, u, q, m, t, worst_case_view(a, b), false);
  return log2_1p(e.signal / (e.interference + eve_noise(inst, q, m)));
}

double secrecy_rate(const NetworkInstance& inst, const AllocationState& a, int b, int u, int m,
                    int t) {
  const double rd = access_rate(inst, a, b, u, m, t);
  double best_eve = 0.0;
  for (int q = 0; q < inst.topology.num_eves; ++q)
    best_eve = std::max(best_eve, eve_rate_worst(inst, a, b, u, q, m, t));
  return std::max(rd - best_eve, 0.0);
}

double backhaul_rate(const NetworkInstance& inst, const AllocationState& a, int b, int n, int t) {
  const double snr = a.backhaul_power(b, n, t) * inst.channels.backhaul_gain(b, n, t) /
                     inst.channels.noise_bs(b, n);
  return log2_1p(snr);
}

RateSplit dc_split_access(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                          int m, int t) {
  const double sig = access_signal(inst, a, b, u, m, t);
  const double ifn = access_interference(inst, a, b, u, m, t) + user_noise(inst, u, m);
  return {std::log2(sig + ifn), std::log2(ifn)};
}

RateSplit dc_split_eve(const NetworkInstance& inst, const AllocationState& a, int b, int u, int q,
                       int m, int t, const EveChannels& channels) {
  const EveTerms e = eve_terms(inst, a, b, u, q, m, t, channels, true);
  const double ifn = e.interference + eve_noise(inst, q, m);
  return {std::log2(e.signal + ifn), std::log2(ifn)};
}

RateSplit dc_split_eve_worst(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                             int q, int m, int t) {
  const EveTerms e = eve_terms(inst, a, b, u, q, m, t, worst_case_view(a, b), false);
  const double ifn = e.interference + eve_noise(inst, q, m);
  return {std::log2(e.signal + ifn), std::log2(ifn)};
}

double eve_rate_gradient(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                         int q, int m, int t, const EveChannels& channels) {
  const EveTerms e = eve_terms(inst, a, b, u, q, m, t, channels, true);
  const double s = a.codebook_assign(u, m, t);
  if (s == 0.0) return 0.0;
  const int N = inst.topology.num_subcarriers;
  double hsum = 0.0;
  for (int n = 0; n < N; ++n)
    hsum += inst.codebooks.proportion(n, m) * channels(b, q, n, t);
  const double total = e.signal + e.interference + eve_noise(inst, q, m);
  return s / std::log(2.0) * hsum / total;
}

}  // namespace rates
}  // namespace scmaee
