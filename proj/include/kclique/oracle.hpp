#pragma once

#include <utility>
#include <vector>

#include "kclique/bignum.hpp"
#include "kclique/problem.hpp"

namespace kclique {

// Exact Stirling number of the second kind via the recurrence
// S(n,k) = k*S(n-1,k) + S(n-1,k-1). 0 <= k <= n <= 200.
BigUint stirling2(int n, int k);

// Exact binomial coefficient, 0 <= k <= n.
BigUint binomial(int n, int k);

// Number of set partitions the exact solver would enumerate.
inline BigUint partition_count(const ProblemInstance& inst) {
    return stirling2(inst.n_sats, inst.k_groups);
}

// Exhaustive best partition of {1..N} into exactly k nonempty blocks,
// enumerated as restricted growth strings; partitions with a block outside
// [min_group, max_group] are skipped. Refuses (GuardError) when
// S(N,k) > 1e8. Ties resolve to the lexicographically smallest growth
// string, i.e. the first one found.
std::pair<Partition, double> exact_best_partition(const ProblemInstance& inst);

// Exhaustive best k-clique over an explicit vertex list (pairwise disjoint
// sets maximizing mean weight). For restricted, table-only instances where
// full partition enumeration does not apply. Guard: C(|vertices|, k) <= 1e8.
std::pair<Partition, double> exact_best_clique(const std::vector<Vertex>& vertices, int k);

}  // namespace kclique
