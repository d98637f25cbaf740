#include "scmaee/backhaul.hpp"

#include <algorithm>
#include <cmath>

#include "scmaee/constraints.hpp"

namespace scmaee {
namespace backhaul {

namespace {

constexpr double kZetaEps = 1e-12;
constexpr double kLn2 = 0.6931471805599453;

// Perspective term zeta * log2(1 + x*h / (zeta*sigma2)) with a vanishing
// regularizer that keeps gradients finite at zeta = 0.
double perspective(double x, double zeta, double a /* h/sigma2 */, double* dx, double* dz) {
  const double ze = zeta + kZetaEps;
  const double arg = 1.0 + x * a / ze;
  const double L = std::log(arg) / kLn2;
  if (dx) *dx = zeta * a / (ze + x * a) / kLn2;
  if (dz) *dz = L - zeta * x * a / (ze * (ze + x * a)) / kLn2;
  return zeta * L;
}

struct Problem {
  const NetworkInstance* inst;
  int B, N, F;
  bool zeta_free;          // false: zeta fixed to `fixed_zeta`
  Grid2 fixed_zeta;
  std::vector<double> demand_units;  // [b*F+t], demand in rate units

  int nx() const { return B * N * F; }
  int nvars() const { return nx() + (zeta_free ? B * N : 0); }
  int xi(int b, int n, int t) const { return (b * N + n) * F + t; }
  int zi(int b, int n) const { return nx() + b * N + n; }

  double zeta_at(const kernel::VectorXd& v, int b, int n) const {
    return zeta_free ? v[zi(b, n)] : fixed_zeta(b, n);
  }

  double cap(const kernel::VectorXd& v, int b, int t, kernel::VectorXd* grad) const {
    double acc = 0.0;
    for (int n = 0; n < N; ++n) {
      const double a =
          inst->channels.backhaul_gain(b, n, t) / inst->channels.noise_bs(b, n);
      double dx, dz;
      acc += perspective(v[xi(b, n, t)], zeta_at(v, b, n), a, &dx, &dz);
      if (grad) {
        (*grad)[xi(b, n, t)] += dx;
        if (zeta_free) (*grad)[zi(b, n)] += dz;
      }
    }
    return acc;
  }
};

Result run(const NetworkInstance& inst, Problem& pb, const std::vector<double>& budget) {
  const int B = pb.B, N = pb.N, F = pb.F;
  kernel::ConvexProgram cp = kernel::ConvexProgram::sized(pb.nvars());
  for (int i = 0; i < pb.nx(); ++i) {
    cp.lo[i] = 0.0;
    cp.hi[i] = budget.empty() ? kernel::kInf : *std::max_element(budget.begin(), budget.end());
  }
  if (pb.zeta_free)
    for (int b = 0; b < B; ++b)
      for (int n = 0; n < N; ++n) {
        cp.lo[pb.zi(b, n)] = 0.0;
        cp.hi[pb.zi(b, n)] = 1.0;
      }

  cp.Ain = kernel::MatrixXd::Zero(F, pb.nvars());
  cp.bin = kernel::VectorXd::Zero(F);
  for (int t = 0; t < F; ++t) {
    for (int b = 0; b < B; ++b)
      for (int n = 0; n < N; ++n) cp.Ain(t, pb.xi(b, n, t)) = 1.0;
    cp.bin[t] = budget[t];
  }

  cp.objective = [&pb](const kernel::VectorXd& v, kernel::VectorXd* grad) {
    kernel::VectorXd g;
    if (grad) g = kernel::VectorXd::Zero(pb.nvars());
    double total = 0.0;
    for (int b = 0; b < pb.B; ++b)
      for (int t = 0; t < pb.F; ++t) total += pb.cap(v, b, t, grad ? &g : nullptr);
    if (grad) *grad = -g;
    return -total;
  };

  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t) {
      const double need = pb.demand_units[b * F + t];
      if (need <= 0.0) continue;
      cp.smooth_ineq.push_back([&pb, b, t, need](const kernel::VectorXd& v,
                                                 kernel::VectorXd* grad) {
        if (!grad) return need - pb.cap(v, b, t, nullptr);
        kernel::VectorXd g = kernel::VectorXd::Zero(pb.nvars());
        const double c = pb.cap(v, b, t, &g);
        *grad = -g;
        return need - c;
      });
    }

  kernel::VectorXd start = kernel::VectorXd::Zero(pb.nvars());
  for (int t = 0; t < F; ++t) {
    const double share = budget[t] / (B * N);
    for (int b = 0; b < B; ++b)
      for (int n = 0; n < N; ++n) start[pb.xi(b, n, t)] = share;
  }
  if (pb.zeta_free)
    for (int i = pb.nx(); i < pb.nvars(); ++i) start[i] = 1.0;

  kernel::CvxOptions opt;
  opt.tol = 1e-7;
  opt.feas_tol = 1e-8;
  kernel::CvxResult sol;
  try {
    sol = kernel::solve_convex(cp, start, opt);
  } catch (const kernel::IterationLimitFault& f) {
    sol = f.best_iterate;
    sol.status = sol.feasibility <= 1e-6 ? kernel::SolveStatus::Optimal
                                         : kernel::SolveStatus::Infeasible;
  }

  Result out;
  out.power = Grid3(B, N, F);
  out.zeta = Grid2(B, N);
  for (int b = 0; b < B; ++b)
    for (int n = 0; n < N; ++n) {
      const double z = std::clamp(pb.zeta_at(sol.x, b, n), 0.0, 1.0);
      out.zeta(b, n) = z;
      for (int t = 0; t < F; ++t) {
        const double x = std::max(sol.x[pb.xi(b, n, t)], 0.0);
        out.power(b, n, t) = z > 1e-6 ? x / z : 0.0;
      }
    }
  if (sol.status == kernel::SolveStatus::Infeasible) {
    out.status = kernel::SolveStatus::Infeasible;
    double worst = 0.0;
    for (int b = 0; b < B; ++b)
      for (int t = 0; t < F; ++t) {
        const double gap = pb.demand_units[b * F + t] - pb.cap(sol.x, b, t, nullptr);
        if (gap > worst) {
          worst = gap;
          out.binding_b = b;
          out.binding_t = t;
        }
      }
  }
  return out;
}

Problem make_problem(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                     Scenario scenario, bool zeta_free, const Grid2* fixed_zeta) {
  Problem pb;
  pb.inst = &inst;
  pb.B = inst.topology.num_bs();
  pb.N = inst.topology.num_subcarriers;
  pb.F = inst.topology.num_frames;
  pb.zeta_free = zeta_free;
  if (fixed_zeta) pb.fixed_zeta = *fixed_zeta;
  const double conv = inst.mbits_per_unit_rate();
  pb.demand_units.resize(pb.B * pb.F);
  for (int b = 0; b < pb.B; ++b)
    for (int t = 0; t < pb.F; ++t)
      pb.demand_units[b * pb.F + t] =
          constraints::backhaul_demand_mbits(inst, alloc_fixed, scenario, b, t) / conv;
  return pb;
}

}  // namespace

double capacity(const NetworkInstance& inst, const Grid2& zeta, const Grid3& power, int b,
                int t) {
  double acc = 0.0;
  for (int n = 0; n < inst.topology.num_subcarriers; ++n) {
    const double snr = power(b, n, t) * inst.channels.backhaul_gain(b, n, t) /
                       inst.channels.noise_bs(b, n);
    acc += zeta(b, n) * log2_1p(snr);
  }
  return acc;
}

Result solve_backhaul(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                      Scenario scenario) {
  Problem pb = make_problem(inst, alloc_fixed, scenario, true, nullptr);
  return run(inst, pb, inst.backhaul_power_budget_w);
}

Result round_subcarriers(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                         Scenario scenario, const Grid2& zeta_relaxed) {
  Grid2 zeta(zeta_relaxed.extent(0), zeta_relaxed.extent(1));
  for (int b = 0; b < zeta.extent(0); ++b)
    for (int n = 0; n < zeta.extent(1); ++n)
      zeta(b, n) = zeta_relaxed(b, n) >= 0.5 ? 1.0 : 0.0;
  Problem pb = make_problem(inst, alloc_fixed, scenario, false, &zeta);
  Result out = run(inst, pb, inst.backhaul_power_budget_w);
  out.zeta = zeta;
  return out;
}

}  // namespace backhaul
}  // namespace scmaee
