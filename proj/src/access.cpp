#include "scmaee/access.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scmaee/constraints.hpp"
#include "scmaee/rates.hpp"

namespace scmaee {
namespace access {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Link {
  int b, u, m, t;
};

std::vector<Link> active_links(const NetworkInstance& inst, const AllocationState& alloc) {
  const auto& topo = inst.topology;
  std::vector<Link> links;
  for (int u = 0; u < topo.num_users(); ++u)
    for (int m = 0; m < topo.num_codebooks; ++m)
      for (int t = 0; t < topo.num_frames; ++t)
        if (alloc.codebook_assign(u, m, t) > 0.5)
          links.push_back({topo.owner_bs[u], u, m, t});
  return links;
}

double codebook_gain(const NetworkInstance& inst, const Grid4& gains, int b_src, int rx, int m,
                     int t) {
  double acc = 0.0;
  for (int n = 0; n < inst.topology.num_subcarriers; ++n)
    acc += inst.codebooks.proportion(n, m) * gains(b_src, rx, n, t);
  return acc;
}

// The fractional subproblem shared by the power step, the codebook step and
// the outage probe. Decision variables are power-like y (the codebook step
// substitutes y = s * p_hyp), per-link epigraph auxiliaries phi and nu, and
// optional blocks for traffic slack tau, MFCD splits beta and battery waste.
//
//   maximize  sum(nu) - chi * sum(y)     (or tau for the slack probe)
//   s.t.      nu_a <= R1_a(y) - R2hat_a(y) - phi_a          [callback]
//             R1Ehat_aq(y) - R2E_aq(y) <= phi_a             [callback]
//             demand(y,beta) + tau <= conv * sum(nu group)  [linear]
//             energy causality / overflow rows              [linear]
//             extra linear rows (exclusivity, reuse, ...)   [linear]
//
// R2hat and R1Ehat are tangents at the linearization point y_lin, so every
// callback is convex and overestimates its exact counterpart.
struct Fpp {
  const NetworkInstance* inst = nullptr;
  Scenario scenario = Scenario::SFCD;

  std::vector<Link> links;
  int L = 0;

  // rate tables in natural (Watt) units
  std::vector<double> own, noise_u, ycap;
  kernel::MatrixXd cross;
  struct EveRow {
    int link, q;
    double sig, noise;
    kernel::VectorXd cross;
  };
  std::vector<EveRow> eves;

  struct TrafficGroup {
    double d0 = 0.0;                 // constant demand, Mbits
    kernel::VectorXd dlin;           // per-y demand weights, Mbits/W
    std::vector<int> members;        // links whose nu terms form the capacity
    std::vector<std::pair<int, double>> dbeta;  // (beta var, weight)
  };
  std::vector<TrafficGroup> traffic;

  kernel::MatrixXd extra_A;  // rows over y in natural units
  kernel::VectorXd extra_b;

  std::vector<double> nu_cap;  // optional per-link numerator cap (rate units)

  bool with_tau = false;
  bool allow_waste = false;
  int n_beta = 0;
  std::vector<int> beta_file;   // file id per beta group
  std::vector<double> beta_total;  // alpha_k per beta group (beta vars are fractions)

  // linearization point
  std::vector<double> y_lin;

  // derived layout
  int oy() const { return 0; }
  int ophi() const { return L; }
  int onu() const { return 2 * L; }
  int otau() const { return 3 * L; }
  int obeta() const { return 3 * L + (with_tau ? 1 : 0); }
  int ow() const { return obeta() + n_beta * inst->topology.num_frames; }
  int nvars() const {
    const int B = inst->topology.num_bs(), F = inst->topology.num_frames;
    return ow() + (allow_waste ? B * F : 0);
  }
};

Fpp make_power_fpp(const NetworkInstance& inst, const AllocationState& alloc, Scenario scenario,
                   const Grid2* numerator_cap_units) {
  const auto& topo = inst.topology;
  Fpp f;
  f.inst = &inst;
  f.scenario = scenario;
  f.links = active_links(inst, alloc);
  f.L = static_cast<int>(f.links.size());
  const int L = f.L;

  f.own.resize(L);
  f.noise_u.resize(L);
  f.ycap.resize(L);
  f.cross = kernel::MatrixXd::Zero(L, L);
  for (int a = 0; a < L; ++a) {
    const Link& la = f.links[a];
    f.own[a] = codebook_gain(inst, inst.channels.access_gain, la.b, la.u, la.m, la.t);
    f.noise_u[a] = rates::user_noise(inst, la.u, la.m);
    f.ycap[a] = inst.energy.battery_cap_j[la.b] / topo.frame_duration_s;
    for (int j = 0; j < L; ++j) {
      const Link& lj = f.links[j];
      if (j == a || lj.b == la.b || lj.m != la.m || lj.t != la.t) continue;
      f.cross(a, j) = codebook_gain(inst, inst.channels.access_gain, lj.b, la.u, la.m, la.t);
    }
  }

  for (int a = 0; a < L; ++a) {
    const Link& la = f.links[a];
    for (int q = 0; q < topo.num_eves; ++q) {
      Fpp::EveRow row;
      row.link = a;
      row.q = q;
      row.noise = rates::eve_noise(inst, q, la.m);
      double sig = 0.0;
      for (int n = 0; n < topo.num_subcarriers; ++n)
        sig += inst.codebooks.proportion(n, la.m) * alloc.worst_case.signal(la.b, q, n, la.t);
      row.sig = sig;
      row.cross = kernel::VectorXd::Zero(L);
      for (int j = 0; j < L; ++j) {
        const Link& lj = f.links[j];
        if (lj.b == la.b || lj.m != la.m || lj.t != la.t) continue;
        double acc = 0.0;
        for (int n = 0; n < topo.num_subcarriers; ++n)
          acc += inst.codebooks.proportion(n, la.m) *
                 alloc.worst_case.interference(lj.b, q, n, la.t);
        row.cross[j] = acc;
      }
      f.eves.push_back(std::move(row));
    }
  }

  for (int a = 0; a < L; ++a) {
    const Link& la = f.links[a];
    Fpp::TrafficGroup g;
    g.dlin = kernel::VectorXd::Zero(L);
    g.members = {a};
    double d = 0.0;
    for (int k = 0; k < inst.catalog.num_files; ++k) {
      if (inst.catalog.requests(k, la.u) == 0.0) continue;
      d += scenario == Scenario::SFCD ? inst.catalog.sizes_mbits[k]
                                      : alloc.split_sizes(k, la.t);
    }
    g.d0 = d;
    if (g.d0 > 0.0) f.traffic.push_back(std::move(g));
  }

  if (numerator_cap_units) {
    f.nu_cap.assign(L, kernel::kInf);
    for (int a = 0; a < L; ++a)
      f.nu_cap[a] = (*numerator_cap_units)(f.links[a].b, f.links[a].t);
  }

  f.extra_A = kernel::MatrixXd::Zero(0, L);
  f.extra_b = kernel::VectorXd::Zero(0);

  f.y_lin.resize(L);
  for (int a = 0; a < L; ++a) {
    const Link& la = f.links[a];
    f.y_lin[a] = std::min(alloc.access_power(la.u, la.m, la.t), f.ycap[a]);
  }
  return f;
}

// Builds the scaled convex program for a given chi.
struct BuiltProgram {
  kernel::ConvexProgram cp;
  std::vector<double> scale;  // per var, natural = scale * internal
};

BuiltProgram build_program(const Fpp& f, double chi, bool slack_objective) {
  const NetworkInstance& inst = *f.inst;
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), F = topo.num_frames, L = f.L;
  const double T = topo.frame_duration_s;
  const double conv = inst.mbits_per_unit_rate();
  const int n = f.nvars();

  BuiltProgram bp;
  bp.scale.assign(n, 1.0);
  for (int a = 0; a < L; ++a) bp.scale[f.oy() + a] = std::max(f.ycap[a], 1e-30);
  if (f.with_tau) bp.scale[f.otau()] = conv;
  for (int g = 0; g < f.n_beta; ++g)
    for (int t = 0; t < F; ++t) bp.scale[f.obeta() + g * F + t] = f.beta_total[g];

  kernel::ConvexProgram& cp = bp.cp;
  cp = kernel::ConvexProgram::sized(n);
  for (int a = 0; a < L; ++a) {
    cp.lo[f.oy() + a] = 0.0;
    cp.hi[f.oy() + a] = 1.0;  // scaled by ycap
    cp.lo[f.ophi() + a] = 0.0;
    cp.hi[f.onu() + a] =
        f.nu_cap.empty() ? kernel::kInf : std::max(f.nu_cap[a], 0.0);
  }
  if (f.with_tau) {
    cp.lo[f.otau()] = -kernel::kInf;
    cp.hi[f.otau()] = kernel::kInf;
  }
  for (int g = 0; g < f.n_beta; ++g)
    for (int t = 0; t < F; ++t) {
      cp.lo[f.obeta() + g * F + t] = 0.0;
      cp.hi[f.obeta() + g * F + t] = 1.0;  // fraction of alpha_k
    }
  if (f.allow_waste)
    for (int i = f.ow(); i < n; ++i) cp.lo[i] = 0.0;

  // objective
  const std::vector<double> scale = bp.scale;
  if (slack_objective) {
    const int it = f.otau();
    cp.objective = [it, scale](const kernel::VectorXd& v, kernel::VectorXd* grad) {
      if (grad) {
        grad->setZero();
        (*grad)[it] = -scale[it];
      }
      return -scale[it] * v[it];
    };
  } else {
    const int L_ = L;
    const int oy = f.oy(), onu = f.onu();
    cp.objective = [L_, oy, onu, chi, scale](const kernel::VectorXd& v,
                                             kernel::VectorXd* grad) {
      if (grad) grad->setZero();
      double val = 0.0;
      for (int a = 0; a < L_; ++a) {
        val += chi * scale[oy + a] * v[oy + a] - v[onu + a];
        if (grad) {
          (*grad)[oy + a] = chi * scale[oy + a];
          (*grad)[onu + a] = -1.0;
        }
      }
      return val;
    };
  }

  // nu epigraph callbacks: nu_a - R1_a(y) + R2hat_a(y) + phi_a <= 0
  for (int a = 0; a < L; ++a) {
    // tangent of R2 at y_lin
    double i_lin = f.noise_u[a];
    for (int j = 0; j < L; ++j) i_lin += f.cross(a, j) * f.y_lin[j];
    const double r2_lin = std::log2(i_lin);
    kernel::VectorXd gr2 = kernel::VectorXd::Zero(L);
    for (int j = 0; j < L; ++j) gr2[j] = f.cross(a, j) / (kLn2 * i_lin);

    const Fpp* fp = &f;
    cp.smooth_ineq.push_back([fp, a, r2_lin, gr2, scale](const kernel::VectorXd& v,
                                                         kernel::VectorXd* grad) {
      const int L = fp->L, oy = fp->oy();
      double s_arg = fp->noise_u[a];
      double r2hat = r2_lin;
      for (int j = 0; j < L; ++j) {
        const double yj = scale[oy + j] * v[oy + j];
        s_arg += fp->cross(a, j) * yj;
        r2hat += gr2[j] * (yj - fp->y_lin[j]);
      }
      s_arg += fp->own[a] * scale[oy + a] * v[oy + a];
      const double r1 = std::log2(s_arg);
      if (grad) {
        grad->setZero();
        for (int j = 0; j < L; ++j) {
          double d = -fp->cross(a, j) / (kLn2 * s_arg) + gr2[j];
          if (j == a) d -= fp->own[a] / (kLn2 * s_arg);
          (*grad)[oy + j] = d * scale[oy + j];
        }
        (*grad)[fp->ophi() + a] = 1.0;
        (*grad)[fp->onu() + a] = 1.0;
      }
      return v[fp->onu() + a] - r1 + r2hat + v[fp->ophi() + a];
    });
  }

  // eavesdropper callbacks: R1Ehat(y) - R2E(y) - phi_a <= 0
  for (const auto& row : f.eves) {
    double tot_lin = row.noise + row.sig * f.y_lin[row.link];
    for (int j = 0; j < L; ++j) tot_lin += row.cross[j] * f.y_lin[j];
    const double r1e_lin = std::log2(tot_lin);
    kernel::VectorXd ge1 = kernel::VectorXd::Zero(L);
    for (int j = 0; j < L; ++j) ge1[j] = row.cross[j] / (kLn2 * tot_lin);
    ge1[row.link] += row.sig / (kLn2 * tot_lin);

    const Fpp* fp = &f;
    const Fpp::EveRow* rp = &row;
    cp.smooth_ineq.push_back([fp, rp, r1e_lin, ge1, scale](const kernel::VectorXd& v,
                                                           kernel::VectorXd* grad) {
      const int L = fp->L, oy = fp->oy();
      double i_arg = rp->noise;
      double r1ehat = r1e_lin;
      for (int j = 0; j < L; ++j) {
        const double yj = scale[oy + j] * v[oy + j];
        i_arg += rp->cross[j] * yj;
        r1ehat += ge1[j] * (yj - fp->y_lin[j]);
      }
      const double r2e = std::log2(i_arg);
      if (grad) {
        grad->setZero();
        for (int j = 0; j < L; ++j) {
          const double d = ge1[j] - rp->cross[j] / (kLn2 * i_arg);
          (*grad)[oy + j] = d * scale[oy + j];
        }
        (*grad)[fp->ophi() + rp->link] = -1.0;
      }
      return r1ehat - r2e - v[fp->ophi() + rp->link];
    });
  }

  // linear rows: traffic, energy, extras
  struct Entry {
    int row, col;
    double v;
  };
  std::vector<Entry> trip;
  std::vector<double> rhs;
  auto row_count = [&rhs]() { return static_cast<int>(rhs.size()); };
  auto emplace = [&trip](int r, int c, double v) { trip.push_back({r, c, v}); };

  for (const auto& g : f.traffic) {
    const int r = row_count();
    for (int j = 0; j < L; ++j)
      if (g.dlin.size() && g.dlin[j] != 0.0)
        emplace(r, f.oy() + j, g.dlin[j] * scale[f.oy() + j]);
    for (const auto& [bv, w] : g.dbeta) emplace(r, bv, w * scale[bv]);
    if (f.with_tau) emplace(r, f.otau(), scale[f.otau()]);
    for (int a : g.members) emplace(r, f.onu() + a, -conv);
    rhs.push_back(-g.d0);
  }

  // energy rows per (b,t): causality and overflow over cumulative spending
  const auto& en = inst.energy;
  std::vector<std::vector<int>> links_at(B * F);
  for (int a = 0; a < L; ++a) links_at[f.links[a].b * F + f.links[a].t].push_back(a);
  for (int b = 0; b < B; ++b) {
    double harvest_before = 0.0;
    for (int t = 0; t < F; ++t) {
      // causality: T * sum_{tau<=t} W_tau + sum_{tau<t} w_tau <= E1 + sum_{tau<t} E~
      int r = row_count();
      for (int tau = 0; tau <= t; ++tau)
        for (int a : links_at[b * F + tau])
          emplace(r, f.oy() + a, T * scale[f.oy() + a]);
      if (f.allow_waste)
        for (int tau = 0; tau < t; ++tau) emplace(r, f.ow() + b * F + tau, 1.0);
      rhs.push_back(en.initial_battery_j[b] + harvest_before);

      // overflow: -T * sum_{tau<=t} W - sum_{tau<=t} w <= Emax - E1 - sum_{tau<=t} E~
      const double harvest_incl = harvest_before + en.harvested_j(b, t);
      r = row_count();
      for (int tau = 0; tau <= t; ++tau) {
        for (int a : links_at[b * F + tau])
          emplace(r, f.oy() + a, -T * scale[f.oy() + a]);
        if (f.allow_waste) emplace(r, f.ow() + b * F + tau, -1.0);
      }
      rhs.push_back(en.battery_cap_j[b] - en.initial_battery_j[b] - harvest_incl);

      if (f.allow_waste) {
        // battery never below zero: T*sum_{tau<=t} W + sum_{tau<=t} w <= E1 + sum_{tau<=t} E~
        r = row_count();
        for (int tau = 0; tau <= t; ++tau) {
          for (int a : links_at[b * F + tau])
            emplace(r, f.oy() + a, T * scale[f.oy() + a]);
          emplace(r, f.ow() + b * F + tau, 1.0);
        }
        rhs.push_back(en.initial_battery_j[b] + harvest_incl);
      }
      harvest_before = harvest_incl;
    }
  }

  for (int i = 0; i < f.extra_A.rows(); ++i) {
    const int r = row_count();
    for (int j = 0; j < L; ++j)
      if (f.extra_A(i, j) != 0.0)
        emplace(r, f.oy() + j, f.extra_A(i, j) * scale[f.oy() + j]);
    rhs.push_back(f.extra_b[i]);
  }

  cp.Ain = kernel::MatrixXd::Zero(row_count(), n);
  for (const auto& tr : trip) cp.Ain(tr.row, tr.col) += tr.v;
  cp.bin = kernel::VectorXd::Zero(row_count());
  for (int i = 0; i < row_count(); ++i) cp.bin[i] = rhs[i];

  // beta completeness: sum_t beta_frac = 1 per group
  if (f.n_beta) {
    cp.Aeq = kernel::MatrixXd::Zero(f.n_beta, n);
    cp.beq = kernel::VectorXd::Ones(f.n_beta);
    for (int g = 0; g < f.n_beta; ++g)
      for (int t = 0; t < F; ++t) cp.Aeq(g, f.obeta() + g * F + t) = 1.0;
  }
  return bp;
}

struct FppSolution {
  kernel::SolveStatus status = kernel::SolveStatus::Optimal;
  std::vector<double> y, phi, nu;
  double tau = 0.0;
  Grid2 beta;
  double numerator = 0.0;    // sum(nu)
  double denominator = 0.0;  // sum(y)
};

FppSolution solve_parametric(const Fpp& f, double chi, bool slack_objective,
                             const std::vector<double>& y0, const SolverConfig& cfg) {
  BuiltProgram bp = build_program(f, chi, slack_objective);
  const int n = f.nvars();
  const int F = f.inst->topology.num_frames;

  kernel::VectorXd start = kernel::VectorXd::Zero(n);
  for (int a = 0; a < f.L; ++a) {
    start[f.oy() + a] = std::clamp(y0[a] / bp.scale[f.oy() + a], 0.0, 1.0);
    start[f.ophi() + a] = 1.0;
    start[f.onu() + a] = 0.0;
  }
  for (int g = 0; g < f.n_beta; ++g)
    for (int t = 0; t < F; ++t) start[f.obeta() + g * F + t] = 1.0 / F;

  kernel::CvxOptions opt;
  opt.tol = cfg.inner_tol;
  opt.feas_tol = 1e-9;
  opt.max_inner = cfg.inner_iters;

  kernel::CvxResult sol;
  try {
    sol = kernel::solve_convex(bp.cp, start, opt);
  } catch (const kernel::IterationLimitFault& fault) {
    sol = fault.best_iterate;
    sol.status = sol.feasibility <= cfg.constraint_tol ? kernel::SolveStatus::Optimal
                                                       : kernel::SolveStatus::Infeasible;
  }

  FppSolution out;
  out.status = sol.status;
  out.y.resize(f.L);
  out.phi.resize(f.L);
  out.nu.resize(f.L);
  for (int a = 0; a < f.L; ++a) {
    out.y[a] = std::max(0.0, sol.x[f.oy() + a]) * bp.scale[f.oy() + a];
    out.phi[a] = sol.x[f.ophi() + a];
    out.nu[a] = sol.x[f.onu() + a];
    out.numerator += out.nu[a];
    out.denominator += out.y[a];
  }
  if (f.with_tau) out.tau = sol.x[f.otau()] * bp.scale[f.otau()];
  if (f.n_beta) {
    out.beta = Grid2(f.inst->catalog.num_files, F);
    for (int g = 0; g < f.n_beta; ++g)
      for (int t = 0; t < F; ++t)
        out.beta(f.beta_file[g], t) =
            std::max(0.0, sol.x[f.obeta() + g * F + t]) * f.beta_total[g];
  }
  return out;
}

// Dinkelbach iteration on a prepared subproblem; chi trace recorded.
struct FractionalOutcome {
  kernel::SolveStatus status = kernel::SolveStatus::Optimal;
  FppSolution last;
  double chi = 0.0;
  std::vector<double> chi_trace;
  double gap = 0.0;
  bool zero_power = false;
  bool waste_relaxed = false;
  int iterations = 0;
};

FractionalOutcome run_dinkelbach(Fpp& f, double chi0, const SolverConfig& cfg) {
  FractionalOutcome out;
  double chi = std::max(chi0, 0.0);
  out.chi_trace.push_back(chi);
  std::vector<double> y0 = f.y_lin;

  for (int it = 0; it < cfg.psi3; ++it) {
    FppSolution sol = solve_parametric(f, chi, false, y0, cfg);
    if (sol.status == kernel::SolveStatus::Infeasible && !f.allow_waste &&
        cfg.allow_waste_relaxation) {
      f.allow_waste = true;
      out.waste_relaxed = true;
      sol = solve_parametric(f, chi, false, y0, cfg);
    }
    if (sol.status != kernel::SolveStatus::Optimal) {
      out.status = sol.status;
      out.last = std::move(sol);
      return out;
    }
    out.iterations = it + 1;
    out.last = sol;
    y0 = sol.y;

    if (sol.denominator <= cfg.denom_tol) {
      out.zero_power = true;
      out.chi = 0.0;
      out.gap = 0.0;
      return out;
    }
    const double gap = sol.numerator - chi * sol.denominator;
    out.gap = std::abs(gap);
    const double chi_next = sol.numerator / sol.denominator;
    if (out.gap <= cfg.eps3 || chi_next <= chi) {
      out.chi = std::max(chi, chi_next);
      if (chi_next > chi) out.chi_trace.push_back(chi_next);
      return out;
    }
    chi = chi_next;
    out.chi_trace.push_back(chi);
  }
  out.chi = chi;
  return out;
}

double max_true_eve_rate(const NetworkInstance& inst, const AllocationState& alloc,
                         const std::vector<Link>& links) {
  double worst = 0.0;
  for (const auto& l : links)
    for (int q = 0; q < inst.topology.num_eves; ++q)
      worst = std::max(worst, rates::eve_rate_worst(inst, alloc, l.b, l.u, q, l.m, l.t));
  return worst;
}

void write_back(const Fpp& f, const FppSolution& sol, AllocationState& alloc) {
  for (int a = 0; a < f.L; ++a) {
    const Link& l = f.links[a];
    alloc.access_power(l.u, l.m, l.t) = sol.y[a];
  }
}

}  // namespace

double initial_power_w(const NetworkInstance& inst, int b) {
  const auto& en = inst.energy;
  double harvest = 0.0;
  for (int t = 0; t < inst.topology.num_frames; ++t) harvest += en.harvested_j(b, t);
  const double budget = std::min(en.battery_cap_j[b], en.initial_battery_j[b] + harvest);
  return budget / (inst.topology.frame_duration_s * inst.topology.num_frames);
}

void epigraph_transform(const NetworkInstance& inst, AllocationState& alloc) {
  const auto& topo = inst.topology;
  alloc.aux_phi.fill(0.0);
  alloc.aux_delta.fill(0.0);
  for (const auto& l : active_links(inst, alloc)) {
    double phi = 0.0;
    for (int q = 0; q < topo.num_eves; ++q)
      phi = std::max(phi, rates::eve_rate_worst(inst, alloc, l.b, l.u, q, l.m, l.t));
    const rates::RateSplit sp = rates::dc_split_access(inst, alloc, l.b, l.u, l.m, l.t);
    alloc.aux_phi(l.u, l.m, l.t) = phi;
    alloc.aux_delta(l.u, l.m, l.t) = std::max(-sp.second - phi, -sp.first);
  }
}

double transformed_numerator(const NetworkInstance& inst, const AllocationState& alloc) {
  double acc = 0.0;
  for (const auto& l : active_links(inst, alloc)) {
    const rates::RateSplit sp = rates::dc_split_access(inst, alloc, l.b, l.u, l.m, l.t);
    acc += alloc.aux_delta(l.u, l.m, l.t) + sp.first;
  }
  return acc;
}

double power_denominator(const NetworkInstance& inst, const AllocationState& alloc) {
  const auto& topo = inst.topology;
  double acc = 0.0;
  for (int u = 0; u < topo.num_users(); ++u)
    for (int m = 0; m < topo.num_codebooks; ++m)
      for (int t = 0; t < topo.num_frames; ++t)
        acc += alloc.codebook_assign(u, m, t) * alloc.access_power(u, m, t);
  return acc;
}

DinkelbachResult dinkelbach_access(const NetworkInstance& inst, AllocationState& alloc,
                                   Scenario scenario, double chi0, const SolverConfig& cfg,
                                   const Grid2* numerator_cap_units) {
  DinkelbachResult res;
  Fpp f = make_power_fpp(inst, alloc, scenario, numerator_cap_units);
  if (f.L == 0) {
    res.zero_power = true;
    epigraph_transform(inst, alloc);
    return res;
  }

  FractionalOutcome out = run_dinkelbach(f, chi0, cfg);
  res.status = out.status;
  res.chi = out.chi;
  res.chi_trace = out.chi_trace;
  res.termination_gap = out.gap;
  res.zero_power = out.zero_power;
  res.waste_relaxed = out.waste_relaxed;
  res.iterations = out.iterations;
  if (out.status == kernel::SolveStatus::Optimal) {
    write_back(f, out.last, alloc);
    epigraph_transform(inst, alloc);
  }
  return res;
}

DcResult dc_outer_loop(const NetworkInstance& inst, AllocationState& alloc, Scenario scenario,
                       const SolverConfig& cfg, const Grid2* numerator_cap_units) {
  DcResult res;
  const std::vector<Link> links = active_links(inst, alloc);
  res.surrogate_trace.push_back(max_true_eve_rate(inst, alloc, links));

  double chi = 0.0;
  for (int it = 0; it < cfg.psi2; ++it) {
    std::vector<double> p_before(links.size());
    for (std::size_t a = 0; a < links.size(); ++a)
      p_before[a] = alloc.access_power(links[a].u, links[a].m, links[a].t);

    AllocationState trial = alloc;
    DinkelbachResult din =
        dinkelbach_access(inst, trial, scenario, chi, cfg, numerator_cap_units);
    res.status = din.status;
    res.chi_trace = din.chi_trace;
    res.iterations = it + 1;
    res.waste_relaxed = res.waste_relaxed || din.waste_relaxed;
    if (din.status != kernel::SolveStatus::Optimal) return res;

    const double eve_after = max_true_eve_rate(inst, trial, links);
    if (eve_after > res.surrogate_trace.back() + 1e-12) break;  // keep Theorem-2 direction

    alloc = std::move(trial);
    res.chi = din.chi;
    res.surrogate_trace.push_back(eve_after);
    chi = din.chi;

    double delta = 0.0;
    for (std::size_t a = 0; a < links.size(); ++a) {
      const double now = alloc.access_power(links[a].u, links[a].m, links[a].t);
      delta = std::max(delta, std::abs(now - p_before[a]) / std::max(1.0, std::abs(now)));
    }
    if (delta <= cfg.eps2 || din.zero_power) break;
  }
  return res;
}

void codebook_assign(const NetworkInstance& inst, AllocationState& alloc, Scenario scenario,
                     const SolverConfig& cfg) {
  const auto& topo = inst.topology;
  const int B = topo.num_bs(), U = topo.num_users(), N = topo.num_subcarriers;
  const int M = topo.num_codebooks, F = topo.num_frames;
  const double conv = inst.mbits_per_unit_rate();

  // power hypothesis per (b,t): current spend, else the uniform start
  Grid2 p_hyp(B, F);
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t) {
      double spend = 0.0;
      for (int u = 0; u < U; ++u) {
        if (topo.owner_bs[u] != b) continue;
        for (int m = 0; m < M; ++m)
          spend += alloc.codebook_assign(u, m, t) * alloc.access_power(u, m, t);
      }
      p_hyp(b, t) = spend > 0.0 ? spend : initial_power_w(inst, b);
      if (p_hyp(b, t) <= 0.0) p_hyp(b, t) = 1e-6;
    }

  // candidate links: requesting users, strongest codebooks first
  Fpp f;
  f.inst = &inst;
  f.scenario = scenario;
  for (int u = 0; u < U; ++u) {
    bool has_request = false;
    for (int k = 0; k < inst.catalog.num_files; ++k)
      if (inst.catalog.requests(k, u) > 0.0) has_request = true;
    if (!has_request) continue;
    const int b = topo.owner_bs[u];
    for (int t = 0; t < F; ++t) {
      std::vector<int> order(M);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return codebook_gain(inst, inst.channels.access_gain, b, u, i, t) >
               codebook_gain(inst, inst.channels.access_gain, b, u, j, t);
      });
      const int take = cfg.candidate_codebooks > 0
                           ? std::min(cfg.candidate_codebooks, M)
                           : M;
      for (int i = 0; i < take; ++i) f.links.push_back({b, u, order[i], t});
    }
  }
  f.L = static_cast<int>(f.links.size());
  if (f.L == 0) return;

  f.own.resize(f.L);
  f.noise_u.resize(f.L);
  f.ycap.resize(f.L);
  f.cross = kernel::MatrixXd::Zero(f.L, f.L);
  f.y_lin.assign(f.L, 0.0);
  for (int a = 0; a < f.L; ++a) {
    const Link& la = f.links[a];
    f.own[a] = codebook_gain(inst, inst.channels.access_gain, la.b, la.u, la.m, la.t);
    f.noise_u[a] = rates::user_noise(inst, la.u, la.m);
    f.ycap[a] = p_hyp(la.b, la.t);
    f.y_lin[a] = alloc.codebook_assign(la.u, la.m, la.t) > 0.5 ? p_hyp(la.b, la.t) : 0.0;
    for (int j = 0; j < f.L; ++j) {
      const Link& lj = f.links[j];
      if (j == a || lj.b == la.b || lj.m != la.m || lj.t != la.t) continue;
      f.cross(a, j) = codebook_gain(inst, inst.channels.access_gain, lj.b, la.u, la.m, la.t);
    }
  }

  for (int a = 0; a < f.L; ++a) {
    const Link& la = f.links[a];
    for (int q = 0; q < topo.num_eves; ++q) {
      Fpp::EveRow row;
      row.link = a;
      row.q = q;
      row.noise = rates::eve_noise(inst, q, la.m);
      double sig = 0.0;
      for (int n = 0; n < N; ++n)
        sig += inst.codebooks.proportion(n, la.m) * alloc.worst_case.signal(la.b, q, n, la.t);
      row.sig = sig;
      row.cross = kernel::VectorXd::Zero(f.L);
      for (int j = 0; j < f.L; ++j) {
        const Link& lj = f.links[j];
        if (lj.b == la.b || lj.m != la.m || lj.t != la.t) continue;
        double acc = 0.0;
        for (int n = 0; n < N; ++n)
          acc += inst.codebooks.proportion(n, la.m) *
                 alloc.worst_case.interference(lj.b, q, n, la.t);
        row.cross[j] = acc;
      }
      f.eves.push_back(std::move(row));
    }
  }

  // downlink traffic per (u,t): demand scales with the chosen s = y/p_hyp
  for (int u = 0; u < U; ++u)
    for (int t = 0; t < F; ++t) {
      Fpp::TrafficGroup g;
      g.dlin = kernel::VectorXd::Zero(f.L);
      double demand = 0.0;
      for (int k = 0; k < inst.catalog.num_files; ++k) {
        if (inst.catalog.requests(k, u) == 0.0) continue;
        demand += scenario == Scenario::SFCD ? inst.catalog.sizes_mbits[k]
                                             : alloc.split_sizes(k, t);
      }
      if (demand <= 0.0) continue;
      bool any = false;
      for (int a = 0; a < f.L; ++a)
        if (f.links[a].u == u && f.links[a].t == t) {
          g.dlin[a] = demand / f.ycap[a];
          g.members.push_back(a);
          any = true;
        }
      if (any) f.traffic.push_back(std::move(g));
    }

  // extra rows: exclusivity, reuse cap, backhaul traffic
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto new_row = [&]() -> std::vector<double>& {
    rows.emplace_back(f.L, 0.0);
    return rows.back();
  };

  if (scenario == Scenario::SFCD) {
    for (int b = 0; b < B; ++b) {
      auto& r = new_row();
      for (int a = 0; a < f.L; ++a)
        if (f.links[a].b == b) r[a] = 1.0 / f.ycap[a];
      rhs.push_back(1.0);
    }
  } else {
    for (int b = 0; b < B; ++b)
      for (int t = 0; t < F; ++t) {
        auto& r = new_row();
        for (int a = 0; a < f.L; ++a)
          if (f.links[a].b == b && f.links[a].t == t) r[a] = 1.0 / f.ycap[a];
        rhs.push_back(1.0);
      }
  }
  for (int n = 0; n < N; ++n)
    for (int t = 0; t < F; ++t) {
      auto& r = new_row();
      bool any = false;
      for (int a = 0; a < f.L; ++a)
        if (f.links[a].t == t && inst.codebooks.incidence(n, f.links[a].m) > 0.5) {
          r[a] = 1.0 / f.ycap[a];
          any = true;
        }
      if (any)
        rhs.push_back(static_cast<double>(inst.reuse_cap));
      else
        rows.pop_back();
    }
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < F; ++t) {
      double cap = 0.0;
      for (int n = 0; n < N; ++n)
        cap += alloc.backhaul_subcarrier(b, n) * rates::backhaul_rate(inst, alloc, b, n, t);
      auto& r = new_row();
      bool any = false;
      for (int a = 0; a < f.L; ++a) {
        const Link& la = f.links[a];
        if (la.b != b || la.t != t) continue;
        double w = 0.0;
        for (int k = 0; k < inst.catalog.num_files; ++k) {
          double requested = 0.0;
          for (int uu = 0; uu < U; ++uu)
            if (topo.owner_bs[uu] == b) requested += inst.catalog.requests(k, uu);
          if (requested == 0.0) continue;
          const double size = scenario == Scenario::SFCD ? inst.catalog.sizes_mbits[k]
                                                         : alloc.split_sizes(k, la.t);
          w += (1.0 - alloc.cache_placement(b, k)) * size;
        }
        r[a] = w / f.ycap[a];
        any = any || w != 0.0;
      }
      if (any)
        rhs.push_back(conv * cap);
      else
        rows.pop_back();
    }

  f.extra_A = kernel::MatrixXd::Zero(static_cast<int>(rows.size()), f.L);
  f.extra_b = kernel::VectorXd::Zero(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < f.L; ++j) f.extra_A(i, j) = rows[i][j];
    f.extra_b[i] = rhs[i];
  }

  SolverConfig scfg = cfg;
  scfg.psi3 = std::min(cfg.psi3, 3);
  scfg.inner_iters = std::min(cfg.inner_iters, 1200);
  FractionalOutcome out = run_dinkelbach(f, 0.0, scfg);
  if (out.status != kernel::SolveStatus::Optimal) return;  // keep the previous assignment

  // exclusive rounding: best candidate per scope, then greedy reuse repair
  std::vector<double> value(f.L);
  for (int a = 0; a < f.L; ++a) value[a] = out.last.y[a] / f.ycap[a];

  alloc.codebook_assign.fill(0.0);
  alloc.access_power.fill(0.0);

  auto pick_best = [&](const std::vector<int>& scope) {
    int best = -1;
    for (int a : scope)
      if (value[a] > 1e-9 && (best < 0 || value[a] > value[best])) best = a;
    return best;
  };

  std::vector<int> chosen;
  if (scenario == Scenario::SFCD) {
    for (int b = 0; b < B; ++b) {
      std::vector<int> scope;
      for (int a = 0; a < f.L; ++a)
        if (f.links[a].b == b) scope.push_back(a);
      const int best = pick_best(scope);
      if (best >= 0) chosen.push_back(best);
    }
  } else {
    for (int b = 0; b < B; ++b)
      for (int t = 0; t < F; ++t) {
        std::vector<int> scope;
        for (int a = 0; a < f.L; ++a)
          if (f.links[a].b == b && f.links[a].t == t) scope.push_back(a);
        const int best = pick_best(scope);
        if (best >= 0) chosen.push_back(best);
      }
  }

  // reuse-cap repair: drop the weakest offender until every (n,t) fits
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n < N && !changed; ++n)
      for (int t = 0; t < F && !changed; ++t) {
        std::vector<int> users_of_n;
        for (int idx = 0; idx < static_cast<int>(chosen.size()); ++idx) {
          const Link& l = f.links[chosen[idx]];
          if (l.t == t && inst.codebooks.incidence(n, l.m) > 0.5) users_of_n.push_back(idx);
        }
        if (static_cast<int>(users_of_n.size()) <= inst.reuse_cap) continue;
        int weakest = users_of_n[0];
        for (int idx : users_of_n)
          if (value[chosen[idx]] < value[chosen[weakest]]) weakest = idx;
        chosen.erase(chosen.begin() + weakest);
        changed = true;
      }
  }

  for (int a : chosen) {
    const Link& l = f.links[a];
    alloc.codebook_assign(l.u, l.m, l.t) = 1.0;
    alloc.access_power(l.u, l.m, l.t) = std::max(out.last.y[a], 1e-9);
  }
  epigraph_transform(inst, alloc);
}

Grid2 split_files(const NetworkInstance& inst, const AllocationState& alloc,
                  const SolverConfig& cfg) {
  (void)cfg;
  const auto& topo = inst.topology;
  const auto& cat = inst.catalog;
  const int B = topo.num_bs(), U = topo.num_users(), F = topo.num_frames;
  const int K = cat.num_files;
  const double conv = inst.mbits_per_unit_rate();

  Grid2 beta(K, F);
  for (int k = 0; k < K; ++k)
    for (int t = 0; t < F; ++t) beta(k, t) = cat.sizes_mbits[k] / F;

  std::vector<int> requested;
  for (int k = 0; k < K; ++k) {
    double r = 0.0;
    for (int u = 0; u < U; ++u) r += cat.requests(k, u);
    if (r > 0.0) requested.push_back(k);
  }
  if (requested.empty()) return beta;

  // vars: beta[k][t] for requested k, then tau
  const int nk = static_cast<int>(requested.size());
  const int nv = nk * F + 1;
  const int itau = nk * F;
  kernel::LinearProgram lp = kernel::LinearProgram::sized(nv);
  lp.c[itau] = 1.0;
  for (int i = 0; i < nk * F; ++i) lp.lo[i] = 0.0;
  lp.lo[itau] = -kernel::kInf;

  lp.Aeq = kernel::MatrixXd::Zero(nk, nv);
  lp.beq = kernel::VectorXd::Zero(nk);
  for (int i = 0; i < nk; ++i) {
    for (int t = 0; t < F; ++t) lp.Aeq(i, i * F + t) = 1.0;
    lp.beq[i] = cat.sizes_mbits[requested[i]];
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  // backhaul slack rows per (b,t)
  for (int b = 0; b < B; ++b) {
    std::vector<double> activity_bt(F, 0.0);
    for (int t = 0; t < F; ++t) {
      double act = 0.0;
      for (int u = 0; u < U; ++u) {
        if (topo.owner_bs[u] != b) continue;
        for (int m = 0; m < topo.num_codebooks; ++m) act += alloc.codebook_assign(u, m, t);
      }
      activity_bt[t] = act;
    }
    for (int t = 0; t < F; ++t) {
      double cap = 0.0;
      for (int n = 0; n < topo.num_subcarriers; ++n)
        cap += alloc.backhaul_subcarrier(b, n) * rates::backhaul_rate(inst, alloc, b, n, t);
      std::vector<double> row(nv, 0.0);
      for (int i = 0; i < nk; ++i) {
        const int k = requested[i];
        double req_b = 0.0;
        for (int u = 0; u < U; ++u)
          if (topo.owner_bs[u] == b) req_b += cat.requests(k, u);
        if (req_b == 0.0) continue;
        row[i * F + t] = activity_bt[t] * (1.0 - alloc.cache_placement(b, k));
      }
      row[itau] = 1.0;
      rows.push_back(std::move(row));
      rhs.push_back(conv * cap);
    }
  }

  // downlink slack rows per (u,t)
  for (int u = 0; u < U; ++u) {
    const int b = topo.owner_bs[u];
    for (int t = 0; t < F; ++t) {
      double activity = 0.0;
      for (int m = 0; m < topo.num_codebooks; ++m) activity += alloc.codebook_assign(u, m, t);
      double cap = 0.0;
      for (int m = 0; m < topo.num_codebooks; ++m)
        cap += rates::secrecy_rate(inst, alloc, b, u, m, t);
      std::vector<double> row(nv, 0.0);
      bool any = false;
      for (int i = 0; i < nk; ++i) {
        const int k = requested[i];
        if (cat.requests(k, u) == 0.0) continue;
        row[i * F + t] = activity;
        any = true;
      }
      if (!any) continue;
      row[itau] = 1.0;
      rows.push_back(std::move(row));
      rhs.push_back(conv * cap);
    }
  }

  lp.Ain = kernel::MatrixXd::Zero(static_cast<int>(rows.size()), nv);
  lp.bin = kernel::VectorXd::Zero(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < nv; ++j) lp.Ain(i, j) = rows[i][j];
    lp.bin[i] = rhs[i];
  }

  const kernel::LpResult res = kernel::solve_lp(lp, 1e-9);
  if (res.status != kernel::SolveStatus::Optimal) return beta;  // uniform fallback
  for (int i = 0; i < nk; ++i)
    for (int t = 0; t < F; ++t) beta(requested[i], t) = std::max(0.0, res.x[i * F + t]);
  return beta;
}

FeasibilityProbe traffic_feasible(const NetworkInstance& inst, const AllocationState& alloc,
                                  Scenario scenario, bool beta_free, const SolverConfig& cfg) {
  FeasibilityProbe probe;
  probe.beta = alloc.split_sizes;

  Fpp f = make_power_fpp(inst, alloc, scenario, nullptr);
  if (f.L == 0) {
    bool any_demand = false;
    for (const auto& g : f.traffic) any_demand = any_demand || g.d0 > 0.0;
    probe.feasible = !any_demand;
    return probe;
  }
  f.with_tau = true;
  f.allow_waste = true;  // physical battery may discard energy

  if (beta_free && scenario == Scenario::MFCD) {
    // replace fixed split demands by free per-file splits
    const auto& cat = inst.catalog;
    f.traffic.clear();
    std::vector<int> requested;
    for (int k = 0; k < cat.num_files; ++k) {
      double r = 0.0;
      for (int u = 0; u < inst.topology.num_users(); ++u) r += cat.requests(k, u);
      if (r > 0.0) requested.push_back(k);
    }
    f.n_beta = static_cast<int>(requested.size());
    f.beta_file = requested;
    f.beta_total.resize(f.n_beta);
    for (int g = 0; g < f.n_beta; ++g) f.beta_total[g] = cat.sizes_mbits[requested[g]];

    const int F = inst.topology.num_frames;
    for (int a = 0; a < f.L; ++a) {
      const Link& la = f.links[a];
      Fpp::TrafficGroup g;
      g.dlin = kernel::VectorXd::Zero(f.L);
      g.members = {a};
      bool any = false;
      for (int gi = 0; gi < f.n_beta; ++gi)
        if (cat.requests(f.beta_file[gi], la.u) > 0.0) {
          g.dbeta.emplace_back(f.obeta() + gi * F + la.t, 1.0);
          any = true;
        }
      if (any) f.traffic.push_back(std::move(g));
    }
  }

  if (f.traffic.empty()) {
    probe.feasible = true;
    return probe;
  }

  FppSolution sol = solve_parametric(f, 0.0, true, f.y_lin, cfg);
  probe.min_slack_mbits = sol.tau;
  probe.feasible =
      sol.status == kernel::SolveStatus::Optimal && sol.tau >= -cfg.constraint_tol;
  if (f.n_beta && sol.beta.size()) probe.beta = sol.beta;
  return probe;
}

}  // namespace access
}  // namespace scmaee
