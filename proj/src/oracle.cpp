#include "kclique/oracle.hpp"

#include <algorithm>

#include "kclique/errors.hpp"

namespace kclique {

BigUint stirling2(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > 200)
        throw DomainError("stirling2: need 0 <= k <= n <= 200");
    // Row-by-row over the recurrence, keeping one row of the triangle.
    std::vector<BigUint> row(static_cast<std::size_t>(k) + 1);
    row[0] = BigUint(1);  // S(0,0)
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) {
            BigUint v = row[static_cast<std::size_t>(j)];
            v.mul_small(static_cast<std::uint32_t>(j));
            v += row[static_cast<std::size_t>(j - 1)];
            row[static_cast<std::size_t>(j)] = std::move(v);
        }
        row[0] = BigUint(i == 0 ? 1 : 0);
    }
    return row[static_cast<std::size_t>(k)];
}

BigUint binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw DomainError("binomial: need 0 <= k <= n");
    // Pascal row; addition only, so no divisions on big values.
    std::vector<BigUint> row(static_cast<std::size_t>(k) + 1);
    row[0] = BigUint(1);
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    }
    return row[static_cast<std::size_t>(k)];
}

namespace {

struct PartitionSearch {
    const ProblemInstance& inst;
    int n, k;
    std::vector<SatSet> blocks;
    std::vector<int> sizes;
    Partition best;
    double best_score = -1.0;
    bool found = false;

    explicit PartitionSearch(const ProblemInstance& instance)
        : inst(instance), n(instance.n_sats), k(instance.k_groups) {}

    // Feasibility of completing the current prefix: enough elements left to
    // open the missing blocks and to lift every block to min_group.
    bool completable(int next_element, int open_blocks) const {
        const int remaining = n - next_element;
        int deficit = (k - open_blocks) * inst.min_group;
        for (int b = 0; b < open_blocks; ++b)
            deficit += std::max(0, inst.min_group - sizes[static_cast<std::size_t>(b)]);
        return deficit <= remaining;
    }

    void recurse(int element, int open_blocks) {
        if (element == n) {
            if (open_blocks != k) return;
            Partition p{blocks};
            const double score = partition_coverage(p, inst);
            if (!found || score > best_score) {
                found = true;
                best_score = score;
                best = std::move(p);
            }
            return;
        }
        // Place element into an existing block (growth-string order), then
        // into a new block if one may still be opened.
        for (int b = 0; b < open_blocks; ++b) {
            if (sizes[static_cast<std::size_t>(b)] >= inst.max_group) continue;
            blocks[static_cast<std::size_t>(b)] =
                blocks[static_cast<std::size_t>(b)].with(element + 1);
            ++sizes[static_cast<std::size_t>(b)];
            if (completable(element + 1, open_blocks)) recurse(element + 1, open_blocks);
            --sizes[static_cast<std::size_t>(b)];
            blocks[static_cast<std::size_t>(b)] =
                blocks[static_cast<std::size_t>(b)].without(element + 1);
        }
        if (open_blocks < k) {
            blocks[static_cast<std::size_t>(open_blocks)] = SatSet{}.with(element + 1);
            sizes[static_cast<std::size_t>(open_blocks)] = 1;
            if (completable(element + 1, open_blocks + 1)) recurse(element + 1, open_blocks + 1);
            sizes[static_cast<std::size_t>(open_blocks)] = 0;
            blocks[static_cast<std::size_t>(open_blocks)] = SatSet{};
        }
    }
};

}  // namespace

std::pair<Partition, double> exact_best_partition(const ProblemInstance& inst) {
    if (inst.k_groups < 1 || inst.k_groups > inst.n_sats)
        throw DomainError("exact_best_partition: need 1 <= k <= n");
    const BigUint count = stirling2(inst.n_sats, inst.k_groups);
    if (BigUint(100000000ULL) < count)
        throw GuardError("exact_best_partition: S(" + std::to_string(inst.n_sats) + "," +
                         std::to_string(inst.k_groups) + ") = " + count.to_string() +
                         " exceeds the 1e8 enumeration guard");

    PartitionSearch search(inst);
    search.blocks.assign(static_cast<std::size_t>(inst.k_groups), SatSet{});
    search.sizes.assign(static_cast<std::size_t>(inst.k_groups), 0);
    search.recurse(0, 0);
    if (!search.found)
        throw InfeasibleError("exact_best_partition: no partition satisfies the group size bounds");
    return {search.best, search.best_score};
}

std::pair<Partition, double> exact_best_clique(const std::vector<Vertex>& vertices, int k) {
    const int n = static_cast<int>(vertices.size());
    if (k < 1 || n < k) throw DomainError("exact_best_clique: need 1 <= k <= |vertices|");
    if (BigUint(100000000ULL) < binomial(n, k))
        throw GuardError("exact_best_clique: C(" + std::to_string(n) + "," + std::to_string(k) +
                         ") exceeds the 1e8 enumeration guard");

    std::vector<int> pick;
    std::vector<int> best_pick;
    double best_sum = -1.0;
    bool found = false;

    // Depth-first over index combinations, pruning on pairwise overlap.
    auto recurse = [&](auto&& self, int start, std::uint64_t used) -> void {
        if (static_cast<int>(pick.size()) == k) {
            double sum = 0.0;
            for (int i : pick) sum += vertices[static_cast<std::size_t>(i)].weight;
            if (!found || sum > best_sum) {
                found = true;
                best_sum = sum;
                best_pick = pick;
            }
            return;
        }
        const int need = k - static_cast<int>(pick.size());
        for (int i = start; i <= n - need; ++i) {
            if (used & vertices[static_cast<std::size_t>(i)].sats.bits) continue;
            pick.push_back(i);
            self(self, i + 1, used | vertices[static_cast<std::size_t>(i)].sats.bits);
            pick.pop_back();
        }
    };
    recurse(recurse, 0, 0);

    if (!found) throw InfeasibleError("exact_best_clique: no " + std::to_string(k) +
                                      " pairwise-disjoint vertices exist");
    Partition p;
    for (int i : best_pick) p.groups.push_back(vertices[static_cast<std::size_t>(i)].sats);
    return {p, best_sum / static_cast<double>(k)};
}

}  // namespace kclique
