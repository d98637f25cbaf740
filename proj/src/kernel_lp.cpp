#include <algorithm>
#include <cmath>

#include "scmaee/kernel.hpp"

namespace scmaee {
namespace kernel {

namespace {

// Standard form min q'y s.t. Gy = g, y >= 0, produced from the user's
// maximize-with-bounds form. `vars` maps y back to the original x.
struct StandardForm {
  VectorXd q;
  MatrixXd G;
  VectorXd g;
  struct VarMap {
    int pos = -1;
    int neg = -1;
    double shift = 0.0;
    double sign = 1.0;
  };
  std::vector<VarMap> vars;
  int n_std = 0;
};

StandardForm to_standard(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int me = static_cast<int>(lp.beq.size());
  const int mi = static_cast<int>(lp.bin.size());

  StandardForm sf;
  sf.vars.resize(n);
  int cols = 0;
  int extra_rows = 0;  // upper-bound rows for doubly bounded vars
  for (int j = 0; j < n; ++j) {
    const bool finlo = std::isfinite(lp.lo[j]);
    const bool finhi = std::isfinite(lp.hi[j]);
    auto& vm = sf.vars[j];
    if (finlo) {
      vm.pos = cols++;
      vm.shift = lp.lo[j];
      vm.sign = 1.0;
      if (finhi) ++extra_rows;
    } else if (finhi) {
      vm.pos = cols++;
      vm.shift = lp.hi[j];
      vm.sign = -1.0;
    } else {
      vm.pos = cols++;
      vm.neg = cols++;
      vm.shift = 0.0;
      vm.sign = 1.0;
    }
  }
  const int slack0 = cols;
  cols += mi + extra_rows;

  const int rows = me + mi + extra_rows;
  sf.q = VectorXd::Zero(cols);
  sf.G = MatrixXd::Zero(rows, cols);
  sf.g = VectorXd::Zero(rows);
  sf.n_std = cols;

  for (int j = 0; j < n; ++j) {
    const auto& vm = sf.vars[j];
    sf.q[vm.pos] += -lp.c[j] * vm.sign;
    if (vm.neg >= 0) sf.q[vm.neg] += lp.c[j];
  }

  auto emit_row = [&](int r, const auto& coeffs, double rhs) {
    double adj = rhs;
    for (int j = 0; j < n; ++j) {
      const double a = coeffs(j);
      if (a == 0.0) continue;
      const auto& vm = sf.vars[j];
      sf.G(r, vm.pos) += a * vm.sign;
      if (vm.neg >= 0) sf.G(r, vm.neg) -= a;
      adj -= a * vm.shift;
    }
    sf.g[r] = adj;
  };

  for (int i = 0; i < me; ++i) emit_row(i, lp.Aeq.row(i), lp.beq[i]);
  int slack = slack0;
  for (int i = 0; i < mi; ++i) {
    emit_row(me + i, lp.Ain.row(i), lp.bin[i]);
    sf.G(me + i, slack++) = 1.0;
  }
  int r = me + mi;
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lo[j]) && std::isfinite(lp.hi[j])) {
      sf.G(r, sf.vars[j].pos) = 1.0;
      sf.G(r, slack++) = 1.0;
      sf.g[r] = lp.hi[j] - lp.lo[j];
      ++r;
    }
  }
  return sf;
}

struct IpmOutcome {
  bool converged = false;
  bool diverged = false;
  VectorXd y;
  int iterations = 0;
  double kkt = kInf;
  double objective = 0.0;
};

// Mehrotra predictor-corrector on min q'y, Gy=g, y>=0, with best-iterate
// tracking; returns the best point found whether or not it converged.
IpmOutcome ipm(const VectorXd& q, const MatrixXd& G, const VectorXd& g, double tol,
               int max_iters) {
  const int m = static_cast<int>(G.rows());
  const int nn = static_cast<int>(G.cols());
  IpmOutcome out;

  if (nn == 0) {
    out.converged = m == 0 || g.lpNorm<Eigen::Infinity>() <= tol;
    out.y = VectorXd::Zero(0);
    out.kkt = 0.0;
    return out;
  }
  if (m == 0) {
    // min q'y over y >= 0: zero unless some cost is negative
    out.converged = q.minCoeff() >= -tol;
    out.diverged = !out.converged;
    out.y = VectorXd::Zero(nn);
    out.kkt = 0.0;
    return out;
  }

  MatrixXd GGt = G * G.transpose();
  GGt.diagonal().array() += 1e-10 * (1.0 + GGt.diagonal().cwiseAbs().maxCoeff());
  Eigen::LDLT<MatrixXd> ggt(GGt);
  VectorXd y = G.transpose() * ggt.solve(g);
  VectorXd lam = ggt.solve(G * q);
  VectorXd z = q - G.transpose() * lam;
  {
    const double dy = std::max(-1.5 * y.minCoeff(), 0.0);
    const double dz = std::max(-1.5 * z.minCoeff(), 0.0);
    y.array() += dy + 0.1;
    z.array() += dz + 0.1;
    const double yz = y.dot(z);
    y.array() += 0.5 * yz / z.sum();
    z.array() += 0.5 * yz / y.sum();
  }

  const double bnorm = 1.0 + g.lpNorm<Eigen::Infinity>();
  const double qnorm = 1.0 + q.lpNorm<Eigen::Infinity>();
  double best_kkt = kInf;
  VectorXd best_y = y;
  int stall = 0;

  for (int it = 0; it < max_iters; ++it) {
    const VectorXd rp = g - G * y;
    const VectorXd rd = q - G.transpose() * lam - z;
    const double mu = y.dot(z) / nn;
    const double obj = q.dot(y);
    const double kkt = std::max({rp.lpNorm<Eigen::Infinity>() / bnorm,
                                 rd.lpNorm<Eigen::Infinity>() / qnorm,
                                 y.dot(z) / (1.0 + std::abs(obj))});
    out.iterations = it;
    if (kkt < best_kkt) {
      best_kkt = kkt;
      best_y = y;
      stall = 0;
    } else if (++stall > 12) {
      break;
    }
    if (kkt <= tol) break;
    if (mu < 1e-16 && stall > 2) break;  // the central path is exhausted
    if (!std::isfinite(kkt) || y.lpNorm<Eigen::Infinity>() > 1e16) {
      out.diverged = true;
      break;
    }

    VectorXd d = y.cwiseQuotient(z.cwiseMax(1e-300)).cwiseMax(1e-16).cwiseMin(1e16);
    MatrixXd K = G * d.asDiagonal() * G.transpose();
    K.diagonal().array() += 1e-12 * (1.0 + K.diagonal().cwiseAbs().maxCoeff());
    Eigen::LDLT<MatrixXd> chol(K);

    auto solve_once = [&](const VectorXd& rhs_rp, const VectorXd& rhs_rd,
                          const VectorXd& rhs_mu, VectorXd& dy, VectorXd& dlam, VectorXd& dz) {
      const VectorXd tmp = rhs_rd - rhs_mu.cwiseQuotient(y.cwiseMax(1e-300));
      dlam = chol.solve(rhs_rp + G * d.asDiagonal() * tmp);
      dz = rhs_rd - G.transpose() * dlam;
      dy = (rhs_mu - y.cwiseProduct(dz)).cwiseQuotient(z.cwiseMax(1e-300));
    };
    // one step of iterative refinement keeps the primal residual floor well
    // below the convergence tolerance
    auto solve_dir = [&](const VectorXd& rhs_rp, const VectorXd& rhs_rd,
                         const VectorXd& rhs_mu, VectorXd& dy, VectorXd& dlam, VectorXd& dz) {
      solve_once(rhs_rp, rhs_rd, rhs_mu, dy, dlam, dz);
      for (int pass = 0; pass < 2; ++pass) {
        const VectorXd ep = rhs_rp - G * dy;
        const VectorXd ed = rhs_rd - (G.transpose() * dlam + dz);
        const VectorXd em = rhs_mu - (z.cwiseProduct(dy) + y.cwiseProduct(dz));
        VectorXd cy, clam, cz;
        solve_once(ep, ed, em, cy, clam, cz);
        dy += cy;
        dlam += clam;
        dz += cz;
      }
    };

    VectorXd dy_a, dlam_a, dz_a;
    solve_dir(rp, rd, -y.cwiseProduct(z), dy_a, dlam_a, dz_a);
    auto step_to_boundary = [](const VectorXd& v, const VectorXd& dv) {
      double a = 1.0;
      for (int i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
      return a;
    };
    const double ap = step_to_boundary(y, dy_a);
    const double ad = step_to_boundary(z, dz_a);
    const double mu_aff = (y + ap * dy_a).dot(z + ad * dz_a) / nn;
    const double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);

    VectorXd rmu =
        VectorXd::Constant(nn, sigma * mu) - y.cwiseProduct(z) - dy_a.cwiseProduct(dz_a);
    VectorXd dy, dlam, dz;
    solve_dir(rp, rd, rmu, dy, dlam, dz);

    const double eta = 0.995;
    const double alpha_p = std::min(1.0, eta * step_to_boundary(y, dy));
    const double alpha_d = std::min(1.0, eta * step_to_boundary(z, dz));
    y += alpha_p * dy;
    lam += alpha_d * dlam;
    z += alpha_d * dz;
  }
  out.y = best_y;
  out.kkt = best_kkt;
  out.objective = q.dot(best_y);
  out.converged = best_kkt <= tol;
  return out;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double tol) {
  const int n = static_cast<int>(lp.c.size());
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(lp.c[i])) throw std::invalid_argument("solve_lp: non-finite objective");

  // dense double precision cannot certify much below 1e-9
  const double eff_tol = std::max(tol, 1e-9);

  StandardForm sf = to_standard(lp);
  const int max_iters = 100;
  IpmOutcome best = ipm(sf.q, sf.G, sf.g, eff_tol, max_iters);

  LpResult res;
  auto recover = [&](const VectorXd& y) {
    VectorXd x(n);
    for (int j = 0; j < n; ++j) {
      const auto& vm = sf.vars[j];
      double v = vm.shift + vm.sign * (vm.pos < y.size() ? y[vm.pos] : 0.0);
      if (vm.neg >= 0 && vm.neg < y.size()) v -= y[vm.neg];
      x[j] = v;
    }
    return x;
  };

  if (best.converged) {
    res.status = SolveStatus::Optimal;
    res.x = recover(best.y);
    res.objective = lp.c.dot(res.x);
    res.kkt_residual = best.kkt;
    res.iterations = best.iterations;
    return res;
  }

  // Phase-1: min 1'(a+ + a-) s.t. Gy + a+ - a- = g decides feasibility.
  {
    const int nn = sf.n_std, m = static_cast<int>(sf.G.rows());
    MatrixXd G1(m, nn + 2 * m);
    G1 << sf.G, MatrixXd::Identity(m, m), -MatrixXd::Identity(m, m);
    VectorXd q1 = VectorXd::Zero(nn + 2 * m);
    q1.tail(2 * m).setOnes();
    IpmOutcome ph1 = ipm(q1, G1, sf.g, 1e-9, max_iters);
    if (ph1.converged) {
      const double infeas = q1.dot(ph1.y);
      if (infeas > 1e-7 * (1.0 + sf.g.lpNorm<Eigen::Infinity>())) {
        res.status = SolveStatus::Infeasible;
        res.x = recover(ph1.y.size() ? VectorXd(ph1.y.head(nn)) : VectorXd::Zero(nn));
        res.objective = lp.c.dot(res.x);
        return res;
      }
    }
  }

  if (best.diverged || best.kkt > 1e-4) {
    res.status = SolveStatus::Unbounded;
    res.x = best.y.size() ? recover(best.y.cwiseMin(1e12).cwiseMax(-1e12))
                          : VectorXd::Zero(n);
    res.objective = lp.c.dot(res.x);
    return res;
  }

  throw std::runtime_error("solve_lp: iteration limit without a certificate");
}

}  // namespace kernel
}  // namespace scmaee
