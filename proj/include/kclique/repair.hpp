#pragma once

#include <cstdint>
#include <vector>

#include "kclique/problem.hpp"
#include "kclique/qubo.hpp"

namespace kclique {

// Greedy post-processing: turns an annealer sample into a legal partition
// (exactly k nonempty, pairwise disjoint groups covering every satellite).
// Decodes the selected QUBO variables to groups, then applies the greedy
// pass of repair_groups.
Partition repair(const std::vector<std::uint8_t>& sample, const QuboInstance& q,
                 const ProblemInstance& inst);

// The greedy pass itself, usable on any list of candidate groups:
//   1. while more than k groups, drop the lowest-coverage group;
//   2. while fewer than k groups, add the best-coverage triple of unused
//      satellites (freeing satellites from large groups if none are left);
//   3. remove each multiply-used satellite from the groups where the
//      coverage loss is smallest;
//   4. assign each unused satellite to the group with the largest coverage
//      gain.
// Ties break by ascending satellite index, then ascending group bitmask.
// Inputs that already form a valid partition are returned unchanged.
Partition repair_groups(std::vector<SatSet> groups, const ProblemInstance& inst);

}  // namespace kclique
