#include "scmaee/worstcase.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scmaee/kernel.hpp"
#include "scmaee/rates.hpp"

namespace scmaee {
namespace worstcase {

namespace {

struct TupleCoeffs {
  Grid2 num;  // [b'][n]: objective weight on h[b'][n]
  Grid2 den;  // [b'][n]: denominator weight
  double noise = 0.0;
  bool degenerate = false;
};

TupleCoeffs tuple_coeffs(const NetworkInstance& inst, const AllocationState& a, int b, int u,
                         int q, int m, int t) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), N = topo.num_subcarriers;
  TupleCoeffs c;
  c.num = Grid2(B, N);
  c.den = Grid2(B, N);
  c.noise = rates::eve_noise(inst, q, m);

  const double own = a.codebook_assign(u, m, t) * a.access_power(u, m, t);
  double num_norm = 0.0;
  for (int n = 0; n < N; ++n) {
    c.num(b, n) = inst.codebooks.proportion(n, m) * own;
    num_norm += c.num(b, n);
  }
  for (int v = 0; v < topo.num_users(); ++v) {
    const int bv = topo.owner_bs[v];
    if (bv == b) continue;
    const double sp = a.codebook_assign(v, m, t) * a.access_power(v, m, t);
    if (sp == 0.0) continue;
    for (int n = 0; n < N; ++n) c.den(bv, n) += inst.codebooks.proportion(n, m) * sp;
  }
  c.degenerate = num_norm <= 0.0;
  return c;
}

}  // namespace

Grid2 worst_case_lp(const NetworkInstance& inst, const AllocationState& alloc, int b, int u,
                    int q, int m, int t, double tol) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), N = topo.num_subcarriers;

  Grid2 h(B, N);
  for (int bb = 0; bb < B; ++bb)
    for (int n = 0; n < N; ++n) h(bb, n) = inst.channels.eve_gain_est(bb, q, n, t);

  const TupleCoeffs coeffs = tuple_coeffs(inst, alloc, b, u, q, m, t);
  if (coeffs.degenerate) return h;  // zero power: any box point ties, keep nominal

  // Variables: hbar[b'][n] flattened row-major, then mu.
  const int nv = B * N + 1;
  const int imu = B * N;
  auto ix = [N](int bb, int n) { return bb * N + n; };

  kernel::LinearProgram lp = kernel::LinearProgram::sized(nv);
  for (int bb = 0; bb < B; ++bb)
    for (int n = 0; n < N; ++n) {
      lp.c[ix(bb, n)] = coeffs.num(bb, n);
      lp.lo[ix(bb, n)] = 0.0;
    }
  lp.lo[imu] = 0.0;

  lp.Aeq = kernel::MatrixXd::Zero(1, nv);
  lp.beq = kernel::VectorXd::Zero(1);
  for (int bb = 0; bb < B; ++bb)
    for (int n = 0; n < N; ++n) lp.Aeq(0, ix(bb, n)) = coeffs.den(bb, n);
  lp.Aeq(0, imu) = coeffs.noise;
  lp.beq[0] = 1.0;

  // hbar - mu*(h~+eps) <= 0 and mu*(h~-eps) - hbar <= 0
  lp.Ain = kernel::MatrixXd::Zero(2 * B * N, nv);
  lp.bin = kernel::VectorXd::Zero(2 * B * N);
  for (int bb = 0; bb < B; ++bb)
    for (int n = 0; n < N; ++n) {
      const double est = inst.channels.eve_gain_est(bb, q, n, t);
      const double eps = inst.channels.eve_uncertainty(bb, q, n, t);
      const int r = 2 * ix(bb, n);
      lp.Ain(r, ix(bb, n)) = 1.0;
      lp.Ain(r, imu) = -(est + eps);
      lp.Ain(r + 1, ix(bb, n)) = -1.0;
      lp.Ain(r + 1, imu) = est - eps;
    }

  const kernel::LpResult res = kernel::solve_lp(lp, std::min(tol, 1e-10));
  if (res.status != kernel::SolveStatus::Optimal)
    throw std::runtime_error("worst_case_lp: Charnes-Cooper LP did not solve");
  const double mu = res.x[imu];
  if (mu <= tol)
    throw std::runtime_error("worst_case_lp: degenerate denominator (check noise power)");

  for (int bb = 0; bb < B; ++bb)
    for (int n = 0; n < N; ++n) {
      if (coeffs.num(bb, n) <= 0.0 && coeffs.den(bb, n) <= 0.0) continue;  // tie: keep nominal
      const double est = inst.channels.eve_gain_est(bb, q, n, t);
      const double eps = inst.channels.eve_uncertainty(bb, q, n, t);
      h(bb, n) = std::clamp(res.x[ix(bb, n)] / mu, est - eps, est + eps);
    }
  return h;
}

void assemble_worst_case(const NetworkInstance& inst, AllocationState& alloc, ParMode mode) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), U = topo.num_users(), Q = topo.num_eves;
  const int N = topo.num_subcarriers, M = topo.num_codebooks, F = topo.num_frames;

  for (int b = 0; b < B; ++b)
    for (int q = 0; q < Q; ++q)
      for (int n = 0; n < N; ++n)
        for (int t = 0; t < F; ++t) {
          alloc.worst_case.signal(b, q, n, t) = inst.channels.eve_gain_est(b, q, n, t);
          alloc.worst_case.interference(b, q, n, t) = inst.channels.eve_gain_est(b, q, n, t);
        }
  if (Q == 0) return;

  struct Tuple {
    int b, u, m, t, q;
  };
  std::vector<Tuple> tuples;
  for (int u = 0; u < U; ++u)
    for (int m = 0; m < M; ++m)
      for (int t = 0; t < F; ++t) {
        if (alloc.codebook_assign(u, m, t) <= 1e-9) continue;
        if (alloc.access_power(u, m, t) <= 0.0) continue;
        for (int q = 0; q < Q; ++q) tuples.push_back({topo.owner_bs[u], u, m, t, q});
      }

  std::vector<Grid2> results(tuples.size());
  if (mode == ParMode::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(tuples.size()); ++i) {
      const Tuple& tp = tuples[i];
      results[i] = worst_case_lp(inst, alloc, tp.b, tp.u, tp.q, tp.m, tp.t);
    }
  } else {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const Tuple& tp = tuples[i];
      results[i] = worst_case_lp(inst, alloc, tp.b, tp.u, tp.q, tp.m, tp.t);
    }
  }

  // Deterministic merge: a link's own-BS channels land in the signal role,
  // every other BS's channels in the interference role.
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const Tuple& tp = tuples[i];
    const Grid2& h = results[i];
    for (int n = 0; n < N; ++n) {
      if (inst.codebooks.incidence(n, tp.m) <= 0.5) continue;
      alloc.worst_case.signal(tp.b, tp.q, n, tp.t) = h(tp.b, n);
      for (int bb = 0; bb < B; ++bb)
        if (bb != tp.b) alloc.worst_case.interference(bb, tp.q, n, tp.t) = h(bb, n);
    }
  }
}

}  // namespace worstcase
}  // namespace scmaee
