#ifndef SCMAEE_SOLVER_CONFIG_HPP
#define SCMAEE_SOLVER_CONFIG_HPP

#include <cstdint>

namespace scmaee {

// Tolerances and iteration caps for the nested solvers: the alternating
// sweep (eps1/psi1), the DC linearization loop (eps2/psi2) and the
// Dinkelbach fractional loop (eps3/psi3).
struct SolverConfig {
  double eps1 = 1e-4;
  int psi1 = 1000;
  double eps2 = 1e-5;
  int psi2 = 25;
  double eps3 = 1e-6;
  int psi3 = 60;

  double inner_tol = 1e-8;
  int inner_iters = 4000;
  double constraint_tol = 1e-6;
  double denom_tol = 1e-12;

  int candidate_codebooks = 8;  // codebooks per user considered in the s-step; 0 = all
  bool uniform_split = false;   // MFCD: keep beta = alpha/F instead of optimizing
  bool allow_waste_relaxation = true;  // retry with battery waste when overflow rows clash
  bool parallel_worst_case = false;    // OpenMP over the per-tuple worst-case LPs
};

}  // namespace scmaee

#endif  // SCMAEE_SOLVER_CONFIG_HPP
