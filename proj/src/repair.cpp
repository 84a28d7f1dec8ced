#include "kclique/repair.hpp"

#include <algorithm>

#include "kclique/errors.hpp"

namespace kclique {

namespace {

std::uint64_t full_mask(int n_sats) {
    return (n_sats >= 64) ? ~0ULL : ((1ULL << n_sats) - 1);
}

std::uint64_t used_mask(const std::vector<SatSet>& groups) {
    std::uint64_t used = 0;
    for (const SatSet& g : groups) used |= g.bits;
    return used;
}

// Index of the lowest-coverage group, ties by ascending bitmask.
std::size_t lowest_coverage_group(const std::vector<SatSet>& groups,
                                  const ProblemInstance& inst) {
    std::size_t best = 0;
    double best_cov = inst.coverage(groups[0]);
    for (std::size_t i = 1; i < groups.size(); ++i) {
        const double c = inst.coverage(groups[i]);
        if (c < best_cov || (c == best_cov && groups[i] < groups[best])) {
            best = i;
            best_cov = c;
        }
    }
    return best;
}

// Best-coverage triple among `pool` satellites, ties by ascending bitmask.
SatSet best_unused_triple(std::uint64_t pool, const ProblemInstance& inst) {
    std::vector<int> sats;
    for (int s = 1; s <= inst.n_sats; ++s)
        if ((pool >> (s - 1)) & 1ULL) sats.push_back(s);
    SatSet best;
    double best_cov = -1.0;
    for (std::size_t a = 0; a < sats.size(); ++a)
        for (std::size_t b = a + 1; b < sats.size(); ++b)
            for (std::size_t c = b + 1; c < sats.size(); ++c) {
                const SatSet t = SatSet{}.with(sats[a]).with(sats[b]).with(sats[c]);
                const double cov = inst.coverage(t);
                if (cov > best_cov || (cov == best_cov && t < best)) {
                    best = t;
                    best_cov = cov;
                }
            }
    return best;
}

// Moves one satellite out of a multi-satellite group, choosing the
// (satellite, group) pair with the smallest coverage loss. Returns false if
// every group is a singleton.
bool free_cheapest_satellite(std::vector<SatSet>& groups, const ProblemInstance& inst) {
    int best_sat = -1;
    std::size_t best_group = 0;
    double best_loss = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (groups[gi].size() < 2) continue;
        const double cov = inst.coverage(groups[gi]);
        for (int s = 1; s <= inst.n_sats; ++s) {
            if (!groups[gi].contains(s)) continue;
            const double loss = cov - inst.coverage(groups[gi].without(s));
            const bool better =
                best_sat < 0 || loss < best_loss ||
                (loss == best_loss && (s < best_sat ||
                                       (s == best_sat && groups[gi] < groups[best_group])));
            if (better) {
                best_sat = s;
                best_group = gi;
                best_loss = loss;
            }
        }
    }
    if (best_sat < 0) return false;
    groups[best_group] = groups[best_group].without(best_sat);
    return true;
}

}  // namespace

Partition repair_groups(std::vector<SatSet> groups, const ProblemInstance& inst) {
    const int n = inst.n_sats;
    const int k = inst.k_groups;

    groups.erase(std::remove_if(groups.begin(), groups.end(),
                                [](SatSet g) { return g.empty(); }),
                 groups.end());
    std::sort(groups.begin(), groups.end());

    // Already-legal inputs pass through untouched (and need no coverage
    // lookups beyond what the caller already had).
    {
        Partition p{groups};
        if (p.valid(n, k)) return p;
    }

    // 1. too many groups: drop the weakest
    while (static_cast<int>(groups.size()) > k)
        groups.erase(groups.begin() +
                     static_cast<std::ptrdiff_t>(lowest_coverage_group(groups, inst)));

    // 2. too few groups: add best triples of unused satellites
    while (static_cast<int>(groups.size()) < k) {
        if (n < 3 * k)
            throw InfeasibleError("repair: instance has fewer than 3k satellites");
        std::uint64_t unused = full_mask(n) & ~used_mask(groups);
        while (std::popcount(unused) < 3) {
            if (!free_cheapest_satellite(groups, inst))
                throw InfeasibleError("repair: cannot free satellites for a new group");
            unused = full_mask(n) & ~used_mask(groups);
        }
        groups.push_back(best_unused_triple(unused, inst));
    }

    // 3. satellites in multiple groups: keep one membership each
    for (int s = 1; s <= n; ++s) {
        for (;;) {
            std::vector<std::size_t> owners;
            for (std::size_t gi = 0; gi < groups.size(); ++gi)
                if (groups[gi].contains(s)) owners.push_back(gi);
            if (owners.size() <= 1) break;
            std::size_t drop = owners[0];
            double drop_loss = inst.coverage(groups[drop]) -
                               inst.coverage(groups[drop].without(s));
            for (std::size_t oi = 1; oi < owners.size(); ++oi) {
                const std::size_t gi = owners[oi];
                const double loss =
                    inst.coverage(groups[gi]) - inst.coverage(groups[gi].without(s));
                if (loss < drop_loss || (loss == drop_loss && groups[gi] < groups[drop])) {
                    drop = gi;
                    drop_loss = loss;
                }
            }
            groups[drop] = groups[drop].without(s);
        }
    }

    // 4. unused satellites: add where they help most
    for (int s = 1; s <= n; ++s) {
        if (used_mask(groups) & (1ULL << (s - 1))) continue;
        std::size_t target = 0;
        double target_gain = -1.0;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const double gain =
                inst.coverage(groups[gi].with(s)) - inst.coverage(groups[gi]);
            if (gain > target_gain ||
                (gain == target_gain && groups[gi] < groups[target])) {
                target = gi;
                target_gain = gain;
            }
        }
        groups[target] = groups[target].with(s);
    }

    // Deduplication can strand an empty group when duplicates collapse; feed
    // it the cheapest satellite from a multi-satellite group.
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (!groups[gi].empty()) continue;
        const std::vector<SatSet> before = groups;
        if (!free_cheapest_satellite(groups, inst))
            throw InfeasibleError("repair: cannot refill an emptied group");
        for (std::size_t gj = 0; gj < groups.size(); ++gj) {
            const std::uint64_t moved = before[gj].bits & ~groups[gj].bits;
            if (moved) {
                groups[gi] = SatSet(groups[gi].bits | moved);
                break;
            }
        }
    }

    std::sort(groups.begin(), groups.end());
    return Partition{groups};
}

Partition repair(const std::vector<std::uint8_t>& sample, const QuboInstance& q,
                 const ProblemInstance& inst) {
    if (static_cast<int>(sample.size()) != q.n_vars())
        throw DomainError("repair: sample length does not match n_vars");
    std::vector<SatSet> groups;
    for (std::size_t i = 0; i < sample.size(); ++i)
        if (sample[i]) groups.push_back(q.vertex_map()[i].sats);
    return repair_groups(std::move(groups), inst);
}

}  // namespace kclique
