#ifndef SCMAEE_CACHING_HPP
#define SCMAEE_CACHING_HPP

#include <cstdint>
#include <string>

#include "scmaee/alloc.hpp"
#include "scmaee/model.hpp"

namespace scmaee {
namespace caching {

enum class Strategy { None, Random, MostPopular, Lp };

Strategy strategy_from_string(const std::string& s);

// Relaxed placement theta in [0,1]^{B x K}: per-BS LP that minimizes the
// backhaul traffic induced by the current schedule subject to the cache
// capacity. Requested files are weighted by their deduplicated traffic with
// a small request-multiplicity tiebreak.
Grid2 placement_lp(const NetworkInstance& inst, const AllocationState& alloc_fixed,
                   Scenario scenario);

// Greedy rounding by descending fractional value under the capacity; ties
// break toward the smaller file index.
Grid2 round_placement(const Grid2& theta_relaxed, const NetworkInstance& inst);

// none: empty caches; random: uniformly random admissible fill;
// most_popular: greedy by popularity until the capacity is exhausted.
Grid2 baseline_placement(const NetworkInstance& inst, Strategy strategy, std::uint64_t seed);

// Total super-frame backhaul demand in Mbits for a placement under the
// allocation's schedule (the Fig.-style comparison quantity).
double total_backhaul_traffic_mbits(const NetworkInstance& inst, const AllocationState& alloc,
                                    Scenario scenario, const Grid2& theta);

}  // namespace caching
}  // namespace scmaee

#endif  // SCMAEE_CACHING_HPP
