#ifndef SCMAEE_KERNEL_HPP
#define SCMAEE_KERNEL_HPP

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scmaee {
namespace kernel {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// maximize c'x  s.t.  Aeq x = beq, Ain x <= bin, lo <= x <= hi
struct LinearProgram {
  VectorXd c;
  MatrixXd Aeq;
  VectorXd beq;
  MatrixXd Ain;
  VectorXd bin;
  VectorXd lo;
  VectorXd hi;

  static LinearProgram sized(int n) {
    LinearProgram lp;
    lp.c = VectorXd::Zero(n);
    lp.Aeq = MatrixXd::Zero(0, n);
    lp.beq = VectorXd::Zero(0);
    lp.Ain = MatrixXd::Zero(0, n);
    lp.bin = VectorXd::Zero(0);
    lp.lo = VectorXd::Constant(n, -kInf);
    lp.hi = VectorXd::Constant(n, kInf);
    return lp;
  }
};

struct LpResult {
  SolveStatus status = SolveStatus::Optimal;
  VectorXd x;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

// Interior-point solve; Infeasible/Unbounded are reported as statuses, an
// exhausted iteration budget throws.
LpResult solve_lp(const LinearProgram& lp, double tol = 1e-9);

// Smooth convex function given by value plus gradient.
using SmoothFn = std::function<double(const VectorXd& x, VectorXd* grad)>;

// minimize f(x)  s.t.  Aeq x = beq, Ain x <= bin, lo <= x <= hi,
//                      g_i(x) <= 0 for each smooth convex g_i
struct ConvexProgram {
  int n = 0;
  SmoothFn objective;
  MatrixXd Aeq;
  VectorXd beq;
  MatrixXd Ain;
  VectorXd bin;
  VectorXd lo;
  VectorXd hi;
  std::vector<SmoothFn> smooth_ineq;

  static ConvexProgram sized(int n) {
    ConvexProgram cp;
    cp.n = n;
    cp.Aeq = MatrixXd::Zero(0, n);
    cp.beq = VectorXd::Zero(0);
    cp.Ain = MatrixXd::Zero(0, n);
    cp.bin = VectorXd::Zero(0);
    cp.lo = VectorXd::Constant(n, -kInf);
    cp.hi = VectorXd::Constant(n, kInf);
    return cp;
  }
};

struct CvxOptions {
  double tol = 1e-8;
  double feas_tol = 1e-8;
  int max_outer = 80;
  int max_inner = 4000;
  double rho0 = 1.0;
  double rho_max = 1e12;
};

struct CvxResult {
  SolveStatus status = SolveStatus::Optimal;
  VectorXd x;
  double objective = 0.0;
  double stationarity = 0.0;
  double feasibility = 0.0;  // max constraint violation
  int iterations = 0;
  std::vector<double> merit_trace;  // inner descent trace of the last phase
};

class IterationLimitFault : public std::runtime_error {
 public:
  IterationLimitFault(const std::string& what, CvxResult best)
      : std::runtime_error(what), best_iterate(std::move(best)) {}
  CvxResult best_iterate;
};

// Augmented-Lagrangian outer loop over a monotone box-projected-gradient
// inner solver with backtracking line search. Returns Infeasible when the
// constraint violation stalls while the penalty saturates; throws
// IterationLimitFault (carrying the best iterate) when the budget runs out
// without either verdict.
CvxResult solve_convex(const ConvexProgram& cp, VectorXd start, const CvxOptions& opt = {});

}  // namespace kernel
}  // namespace scmaee

#endif  // SCMAEE_KERNEL_HPP
