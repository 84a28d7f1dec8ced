#include "kclique/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "kclique/errors.hpp"
#include "kclique/repair.hpp"
#include "kclique/rng.hpp"
#include "kclique/util.hpp"

namespace kclique {

std::string to_string(Method m) {
    switch (m) {
        case Method::Genetic: return "genetic";
        case Method::Random: return "random";
        case Method::Prune: return "prune";
    }
    return "?";
}

Method parse_method(const std::string& text) {
    if (text == "genetic") return Method::Genetic;
    if (text == "random") return Method::Random;
    if (text == "prune") return Method::Prune;
    throw FormatError("unknown preprocessing method '" + text + "'");
}

namespace {

struct Buckets {
    std::vector<int> sizes;                       // ascending group sizes
    std::vector<std::vector<std::size_t>> members;  // vertex indices per size
};

Buckets bucket_by_size(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                       int largest_group) {
    Buckets b;
    for (int s = inst.min_group; s <= largest_group; ++s) b.sizes.push_back(s);
    b.members.resize(b.sizes.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int sz = vertices[i].sats.size();
        if (sz >= inst.min_group && sz <= largest_group)
            b.members[static_cast<std::size_t>(sz - inst.min_group)].push_back(i);
    }
    return b;
}

// Even split with the remainder on the smallest sizes, then shortfall from
// under-filled buckets redistributed to buckets that still have capacity
// (again smallest sizes first).
std::vector<std::size_t> bucket_quotas(const Buckets& b, std::size_t num_nodes,
                                       bool* shortfall) {
    const std::size_t nb = b.sizes.size();
    std::vector<std::size_t> quota(nb, num_nodes / nb);
    for (std::size_t i = 0; i < num_nodes % nb; ++i) ++quota[i];

    for (std::size_t i = 0; i < nb; ++i) quota[i] = std::min(quota[i], b.members[i].size());
    std::size_t assigned = 0;
    for (std::size_t q : quota) assigned += q;
    while (assigned < num_nodes) {
        bool grew = false;
        for (std::size_t i = 0; i < nb && assigned < num_nodes; ++i) {
            if (quota[i] < b.members[i].size()) {
                ++quota[i];
                ++assigned;
                grew = true;
            }
        }
        if (!grew) break;  // every bucket exhausted
    }
    if (shortfall) *shortfall = assigned < num_nodes;
    return quota;
}

NodeSelection finalize(const std::vector<Vertex>& vertices,
                       std::vector<std::size_t> picked, bool shortfall) {
    std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
        return vertices[a].sats < vertices[b].sats;
    });
    NodeSelection sel;
    sel.shortfall = shortfall;
    sel.nodes.reserve(picked.size());
    for (std::size_t i : picked) sel.nodes.push_back(vertices[i]);
    return sel;
}

}  // namespace

NodeSelection select_random(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                            const PreprocessConfig& cfg) {
    if (cfg.num_nodes < 1) throw DomainError("select_random: num_nodes must be >= 1");
    const Buckets b = bucket_by_size(inst, vertices, cfg.largest_group);
    bool shortfall = false;
    const std::vector<std::size_t> quota =
        bucket_quotas(b, static_cast<std::size_t>(cfg.num_nodes), &shortfall);

    Rng rng(mix_seed(cfg.seed, 0x5e1ec7));
    std::vector<std::size_t> picked;
    for (std::size_t bi = 0; bi < b.sizes.size(); ++bi) {
        const auto idx = rng.sample_indices(b.members[bi].size(), quota[bi]);
        for (std::size_t i : idx) picked.push_back(b.members[bi][i]);
    }
    return finalize(vertices, std::move(picked), shortfall);
}

NodeSelection select_prune(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                           const PreprocessConfig& cfg) {
    if (cfg.num_nodes < 1) throw DomainError("select_prune: num_nodes must be >= 1");
    const Buckets b = bucket_by_size(inst, vertices, cfg.largest_group);
    bool shortfall = false;
    const std::vector<std::size_t> quota =
        bucket_quotas(b, static_cast<std::size_t>(cfg.num_nodes), &shortfall);

    std::vector<std::size_t> picked;
    for (std::size_t bi = 0; bi < b.sizes.size(); ++bi) {
        std::vector<std::size_t> order = b.members[bi];
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            if (vertices[a].weight != vertices[c].weight)
                return vertices[a].weight > vertices[c].weight;
            return vertices[a].sats < vertices[c].sats;
        });
        for (std::size_t i = 0; i < quota[bi]; ++i) picked.push_back(order[i]);
    }
    return finalize(vertices, std::move(picked), shortfall);
}

GaRun run_ga(const ProblemInstance& inst, const GaConfig& ga, std::uint64_t seed) {
    if (ga.num_gen < 1 || ga.pop_size < 1) throw DomainError("run_ga: empty GA budget");
    const int n = inst.n_sats;
    const int k = inst.k_groups;
    Rng rng(mix_seed(seed, 0x9e7e71c));

    // Balanced random partitions: shuffle the satellites and cut into blocks
    // of near-equal size. Evenly distributed groups score best under
    // diminishing returns, so this starts the population in the right shape
    // class.
    auto random_individual = [&]() {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) order[static_cast<std::size_t>(s)] = s + 1;
        rng.shuffle(order);
        std::vector<SatSet> groups(static_cast<std::size_t>(k));
        const int base = n / k;
        const int extra = n % k;
        std::size_t pos = 0;
        for (int g = 0; g < k; ++g) {
            const int size = base + (g < extra ? 1 : 0);
            for (int t = 0; t < size; ++t)
                groups[static_cast<std::size_t>(g)] =
                    groups[static_cast<std::size_t>(g)].with(order[pos++]);
        }
        return repair_groups(std::move(groups), inst);
    };

    std::vector<Partition> pop;
    std::vector<double> fitness;
    pop.reserve(static_cast<std::size_t>(ga.pop_size));
    for (int i = 0; i < ga.pop_size; ++i) {
        pop.push_back(random_individual());
        fitness.push_back(partition_coverage(pop.back(), inst));
    }

    auto best_index = [&]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (fitness[i] > fitness[best]) best = i;
        return best;
    };
    auto tournament = [&]() -> const Partition& {
        std::size_t best = static_cast<std::size_t>(rng.below(pop.size()));
        for (int t = 1; t < 3; ++t) {
            const std::size_t c = static_cast<std::size_t>(rng.below(pop.size()));
            if (fitness[c] > fitness[best] || (fitness[c] == fitness[best] && c < best)) best = c;
        }
        return pop[best];
    };

    auto partition_key = [](const Partition& p) {
        std::uint64_t h = 0x100001b3ULL;
        for (const SatSet& g : p.groups) h = (h ^ g.bits) * 0x9e3779b97f4a7c15ULL;
        return h;
    };

    GaRun out;
    out.best_fitness.reserve(static_cast<std::size_t>(ga.num_gen));
    for (int gen = 0; gen < ga.num_gen; ++gen) {
        std::vector<Partition> next;
        std::vector<double> next_fitness;
        std::unordered_set<std::uint64_t> seen;
        next.reserve(pop.size());

        const std::size_t elite = best_index();
        next.push_back(pop[elite]);
        next_fitness.push_back(fitness[elite]);
        seen.insert(partition_key(pop[elite]));

        while (static_cast<int>(next.size()) < ga.pop_size) {
            const Partition& p1 = tournament();
            const Partition& p2 = tournament();
            std::vector<SatSet> child;
            if (k >= 2) {
                const std::size_t cut =
                    1 + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k - 1)));
                child.assign(p1.groups.begin(), p1.groups.begin() + static_cast<std::ptrdiff_t>(cut));
                child.insert(child.end(), p2.groups.begin() + static_cast<std::ptrdiff_t>(cut),
                             p2.groups.end());
            } else {
                child = p1.groups;
            }
            Partition ind = repair_groups(std::move(child), inst);

            if (k >= 2 && rng.bernoulli(ga.mut_rate)) {
                // Half the mutations move one random satellite to another
                // group; the other half swap two satellites between two
                // groups. Moves alone cannot reach a same-shape partition
                // without passing through a worse intermediate, which stalls
                // the walk once the population has converged.
                std::vector<SatSet> mutated = ind.groups;
                if (rng.bernoulli(0.5)) {
                    const int s = static_cast<int>(rng.uniform_int(1, n));
                    std::size_t from = 0;
                    for (std::size_t g = 0; g < mutated.size(); ++g)
                        if (mutated[g].contains(s)) from = g;
                    std::size_t to =
                        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k - 1)));
                    if (to >= from) ++to;
                    mutated[from] = mutated[from].without(s);
                    mutated[to] = mutated[to].with(s);
                } else {
                    const std::size_t ga_i =
                        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)));
                    std::size_t gb_i =
                        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k - 1)));
                    if (gb_i >= ga_i) ++gb_i;
                    std::vector<int> sa, sb;
                    for (int s = 1; s <= n; ++s) {
                        if (mutated[ga_i].contains(s)) sa.push_back(s);
                        if (mutated[gb_i].contains(s)) sb.push_back(s);
                    }
                    if (!sa.empty() && !sb.empty()) {
                        const int x = sa[static_cast<std::size_t>(rng.below(sa.size()))];
                        const int y = sb[static_cast<std::size_t>(rng.below(sb.size()))];
                        mutated[ga_i] = mutated[ga_i].without(x).with(y);
                        mutated[gb_i] = mutated[gb_i].without(y).with(x);
                    }
                }
                ind = repair_groups(std::move(mutated), inst);
            }

            // Duplicates collapse the population onto a handful of group
            // patterns; nudge clones once so the final generation keeps
            // enough distinct groups to fill the node budget.
            if (k >= 2 && seen.count(partition_key(ind))) {
                std::vector<SatSet> nudged = ind.groups;
                const int s = static_cast<int>(rng.uniform_int(1, n));
                std::size_t from = 0;
                for (std::size_t g = 0; g < nudged.size(); ++g)
                    if (nudged[g].contains(s)) from = g;
                std::size_t to =
                    static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k - 1)));
                if (to >= from) ++to;
                nudged[from] = nudged[from].without(s);
                nudged[to] = nudged[to].with(s);
                ind = repair_groups(std::move(nudged), inst);
            }
            seen.insert(partition_key(ind));

            next_fitness.push_back(partition_coverage(ind, inst));
            next.push_back(std::move(ind));
        }
        pop = std::move(next);
        fitness = std::move(next_fitness);
        out.best_fitness.push_back(fitness[best_index()]);
    }
    out.population = std::move(pop);
    return out;
}

NodeSelection select_genetic(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                             const PreprocessConfig& cfg) {
    if (!cfg.ga) throw DomainError("select_genetic: GA configuration missing");
    const GaRun run = run_ga(inst, *cfg.ga, cfg.seed);

    // Frequency of each candidate group (only groups that exist in the
    // vertex enumeration can become QUBO nodes).
    std::unordered_map<std::uint64_t, std::size_t> index_of;
    for (std::size_t i = 0; i < vertices.size(); ++i) index_of.emplace(vertices[i].sats.bits, i);
    std::unordered_map<std::uint64_t, int> freq;
    for (const Partition& p : run.population)
        for (const SatSet& g : p.groups)
            if (index_of.count(g.bits)) ++freq[g.bits];

    std::vector<std::pair<std::uint64_t, int>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        const Vertex& va = vertices[index_of.at(a.first)];
        const Vertex& vb = vertices[index_of.at(b.first)];
        if (va.weight != vb.weight) return va.weight > vb.weight;
        return a.first < b.first;
    });

    std::vector<std::size_t> picked;
    std::unordered_set<std::uint64_t> chosen;
    for (const auto& [bits, count] : ranked) {
        if (static_cast<int>(picked.size()) >= cfg.num_nodes) break;
        picked.push_back(index_of.at(bits));
        chosen.insert(bits);
    }

    // Pad with prune picks when the population was not diverse enough.
    if (static_cast<int>(picked.size()) < cfg.num_nodes) {
        const NodeSelection prune = select_prune(inst, vertices, cfg);
        for (const Vertex& v : prune.nodes) {
            if (static_cast<int>(picked.size()) >= cfg.num_nodes) break;
            if (chosen.insert(v.sats.bits).second) picked.push_back(index_of.at(v.sats.bits));
        }
    }

    return finalize(vertices, std::move(picked),
                    static_cast<int>(picked.size()) < cfg.num_nodes);
}

NodeSelection select_nodes(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                           const PreprocessConfig& cfg) {
    switch (cfg.method) {
        case Method::Genetic: return select_genetic(inst, vertices, cfg);
        case Method::Random: return select_random(inst, vertices, cfg);
        case Method::Prune: return select_prune(inst, vertices, cfg);
    }
    throw DomainError("select_nodes: bad method");
}

void write_nodes_csv(const std::vector<Vertex>& nodes, int n_sats, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_nodes_csv: cannot write " + path);
    out << "bitmask,weight\n";
    for (const Vertex& v : nodes)
        out << format_satset(v.sats, n_sats) << "," << fmt_double(v.weight) << "\n";
}

}  // namespace kclique
