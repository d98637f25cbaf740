#ifndef SCMAEE_WORSTCASE_HPP
#define SCMAEE_WORSTCASE_HPP

#include <vector>

#include "scmaee/alloc.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace worstcase {

enum class ParMode { Serial, OpenMP };

// Charnes-Cooper LP for one (t,b,u,m,q) tuple: maximizes the eavesdropper's
// linear-fractional SINR over the channel box and returns the frame-t
// channel vector h[b'][n] it attains. Degenerate objectives (no transmit
// power) return the nominal estimates.
Grid2 worst_case_lp(const NetworkInstance& inst, const AllocationState& alloc, int b, int u,
                    int q, int m, int t, double tol = 1e-9);

// Runs worst_case_lp for every active (t,b,u,m) link and eavesdropper and
// stores the per-link maximizing channels into the allocation's worst-case
// tensors (signal role at the link's own BS, interference role elsewhere).
// Inactive entries stay at the nominal estimates. Both modes produce
// bit-identical tensors; OpenMP parallelizes over independent tuples.
void assemble_worst_case(const NetworkInstance& inst, AllocationState& alloc,
                         ParMode mode = ParMode::Serial);

}  // namespace worstcase
}  // namespace scmaee

#endif  // SCMAEE_WORSTCASE_HPP
