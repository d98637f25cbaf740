#include <algorithm>
#include <cmath>

#include "scmaee/kernel.hpp"

namespace scmaee {
namespace kernel {

namespace {

VectorXd clamp_box(const ConvexProgram& cp, VectorXd x) {
  for (int i = 0; i < cp.n; ++i) x[i] = std::min(std::max(x[i], cp.lo[i]), cp.hi[i]);
  return x;
}

struct Multipliers {
  VectorXd ineq;                 // linear rows
  VectorXd eq;                   // equality rows
  std::vector<double> smooth;    // callbacks
};

// Powell-Hestenes-Rockafellar term for one inequality c <= 0.
inline double phr(double c, double lam, double rho, double* dcoef) {
  const double t = lam + rho * c;
  if (t > 0.0) {
    if (dcoef) *dcoef = t;
    return (t * t - lam * lam) / (2.0 * rho);
  }
  if (dcoef) *dcoef = 0.0;
  return -lam * lam / (2.0 * rho);
}

}  // namespace

CvxResult solve_convex(const ConvexProgram& cp, VectorXd start, const CvxOptions& opt_in) {
  CvxOptions opt = opt_in;
  opt.tol = std::max(opt.tol, 1e-9);  // dense double-precision floor
  opt.feas_tol = std::max(opt.feas_tol, 1e-10);
  const int n = cp.n;
  const int mi = static_cast<int>(cp.bin.size());
  const int me = static_cast<int>(cp.beq.size());
  const int ms = static_cast<int>(cp.smooth_ineq.size());

  VectorXd x = clamp_box(cp, std::move(start));
  Multipliers mult;
  mult.ineq = VectorXd::Zero(mi);
  mult.eq = VectorXd::Zero(me);
  mult.smooth.assign(ms, 0.0);
  double rho = opt.rho0;

  VectorXd gscratch(n);
  auto merit = [&](const VectorXd& y, VectorXd* grad) {
    double L = cp.objective(y, grad);
    if (mi) {
      VectorXd c = cp.Ain * y - cp.bin;
      for (int i = 0; i < mi; ++i) {
        double coef;
        L += phr(c[i], mult.ineq[i], rho, &coef);
        if (grad && coef != 0.0) grad->noalias() += coef * cp.Ain.row(i).transpose();
      }
    }
    if (me) {
      VectorXd r = cp.Aeq * y - cp.beq;
      L += mult.eq.dot(r) + 0.5 * rho * r.squaredNorm();
      if (grad) grad->noalias() += cp.Aeq.transpose() * (mult.eq + rho * r);
    }
    for (int i = 0; i < ms; ++i) {
      const double gi = cp.smooth_ineq[i](y, grad ? &gscratch : nullptr);
      double coef;
      L += phr(gi, mult.smooth[i], rho, &coef);
      if (grad && coef != 0.0) grad->noalias() += coef * gscratch;
    }
    return L;
  };

  auto violation = [&](const VectorXd& y) {
    double v = 0.0;
    if (mi) v = std::max(v, (cp.Ain * y - cp.bin).maxCoeff());
    if (me) v = std::max(v, (cp.Aeq * y - cp.beq).cwiseAbs().maxCoeff());
    for (int i = 0; i < ms; ++i) v = std::max(v, cp.smooth_ineq[i](y, nullptr));
    return std::max(v, 0.0);
  };

  CvxResult res;
  res.x = x;
  res.objective = cp.objective(x, nullptr);
  double best_feasible_obj = kInf;
  VectorXd best_feasible_x;
  const double loose_feas = 10.0 * opt.feas_tol;
  if (violation(x) <= loose_feas) {
    best_feasible_obj = res.objective;
    best_feasible_x = x;
  }

  double prev_viol = kInf;
  int stalled = 0;
  int total_inner = 0;

  for (int outer = 0; outer < opt.max_outer; ++outer) {
    VectorXd grad(n);
    double L = merit(x, &grad);
    res.merit_trace.clear();
    res.merit_trace.push_back(L);

    double alpha = 1.0 / std::max(1.0, grad.lpNorm<Eigen::Infinity>());
    VectorXd x_prev = x, g_prev = grad;
    double stat = kInf;

    for (int it = 0; it < opt.max_inner; ++it, ++total_inner) {
      // stationarity of the projected gradient map at unit step
      stat = (x - clamp_box(cp, x - grad)).lpNorm<Eigen::Infinity>() /
             (1.0 + x.lpNorm<Eigen::Infinity>());
      if (stat <= 0.2 * opt.tol) break;

      // Barzilai-Borwein seed, safeguarded by Armijo backtracking
      if (it > 0) {
        const VectorXd s = x - x_prev;
        const VectorXd yv = grad - g_prev;
        const double sy = s.dot(yv);
        if (sy > 1e-300) alpha = std::clamp(s.squaredNorm() / sy, 1e-14, 1e14);
      }
      x_prev = x;
      g_prev = grad;

      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        VectorXd cand = clamp_box(cp, x - alpha * grad);
        const VectorXd d = cand - x;
        if (d.lpNorm<Eigen::Infinity>() == 0.0) break;
        const double Lc = merit(cand, nullptr);
        if (Lc <= L + 1e-4 * grad.dot(d)) {
          x = std::move(cand);
          L = Lc;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
      res.merit_trace.push_back(L);
      merit(x, &grad);
    }

    const double viol = violation(x);
    const double fx = cp.objective(x, nullptr);
    if (viol <= loose_feas && fx < best_feasible_obj) {
      best_feasible_obj = fx;
      best_feasible_x = x;
    }

    if (viol <= opt.feas_tol && stat <= opt.tol) {
      res.status = SolveStatus::Optimal;
      res.x = (best_feasible_obj < fx && best_feasible_x.size()) ? best_feasible_x : x;
      res.objective = cp.objective(res.x, nullptr);
      res.stationarity = stat;
      res.feasibility = violation(res.x);
      res.iterations = total_inner;
      return res;
    }

    // multiplier updates
    if (mi) {
      VectorXd c = cp.Ain * x - cp.bin;
      for (int i = 0; i < mi; ++i) mult.ineq[i] = std::max(0.0, mult.ineq[i] + rho * c[i]);
    }
    if (me) mult.eq += rho * (cp.Aeq * x - cp.beq);
    for (int i = 0; i < ms; ++i)
      mult.smooth[i] = std::max(0.0, mult.smooth[i] + rho * cp.smooth_ineq[i](x, nullptr));

    if (viol > 0.25 * prev_viol) {
      rho = std::min(rho * 8.0, opt.rho_max);
      if (rho >= opt.rho_max && viol > opt.feas_tol &&
          viol > 0.9 * prev_viol) {
        if (++stalled >= 3) {
          res.status = SolveStatus::Infeasible;
          res.x = x;
          res.objective = fx;
          res.stationarity = stat;
          res.feasibility = viol;
          res.iterations = total_inner;
          return res;
        }
      }
    } else {
      stalled = 0;
    }
    prev_viol = std::min(prev_viol, std::max(viol, opt.feas_tol));
  }

  CvxResult best;
  best.status = SolveStatus::IterationLimit;
  best.x = best_feasible_x.size() ? best_feasible_x : x;
  best.objective = cp.objective(best.x, nullptr);
  best.feasibility = violation(best.x);
  best.iterations = total_inner;
  throw IterationLimitFault("solve_convex: iteration limit", std::move(best));
}

}  // namespace kernel
}  // namespace scmaee
