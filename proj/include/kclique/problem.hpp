#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kclique/satset.hpp"

namespace kclique {

// One candidate sub-constellation: a satellite group plus its coverage.
struct Vertex {
    SatSet sats;
    double weight = 0.0;  // coverage fraction in [0, 1]
};

// A candidate assignment of every satellite to a group.
struct Partition {
    std::vector<SatSet> groups;

    bool pairwise_disjoint() const;
    bool covers(int n_sats) const;
    // Valid: pairwise disjoint, unions to all n_sats satellites, exactly
    // k nonempty groups.
    bool valid(int n_sats, int k_groups) const;
};

// The constellation problem. Coverage is served from an explicit lookup
// table, from a per-satellite efficacy model, or both (table first, model as
// fallback for sets the table does not list).
class ProblemInstance {
public:
    int n_sats = 0;
    int k_groups = 1;
    int min_group = 3;
    int max_group = 3;

    ProblemInstance() = default;
    ProblemInstance(int n, int k, int min_g, int max_g)
        : n_sats(n), k_groups(k), min_group(min_g), max_group(max_g) {}

    // Coverage of a satellite set. Empty set scores 0 by convention.
    // Throws LookupError when neither the table nor a model can score it.
    double coverage(SatSet s) const;

    bool has_model() const { return efficacies_.has_value(); }
    bool has_table() const { return !table_.empty(); }
    const std::vector<double>& efficacies() const { return *efficacies_; }
    const std::unordered_map<std::uint64_t, double>& table() const { return table_; }

    void set_efficacies(std::vector<double> e) { efficacies_ = std::move(e); }
    void add_table_entry(SatSet s, double w) { table_[s.bits] = w; }

private:
    std::optional<std::vector<double>> efficacies_;
    std::unordered_map<std::uint64_t, double> table_;
};

// Synthetic instance: satellite s gets an efficacy c_s drawn uniformly from
// [0.3, 0.8]; coverage(S) = 1 - prod_{s in S} (1 - c_s). Monotone in set
// inclusion with diminishing returns. Deterministic in seed.
ProblemInstance synth_coverage(int n_sats, int k_groups, int min_group, int max_group,
                               std::uint64_t seed);

// All candidate vertices with min_group <= popcount <= max_group in ascending
// bitmask order. An instance with a coverage model enumerates every such set;
// a table-only instance is a restricted universe and enumerates its table
// rows in that size range.
std::vector<Vertex> enumerate_vertices(const ProblemInstance& inst);

// Same, but capping the largest size at `largest_group` (the preprocessing
// hyperparameter); sizes run min_group..min(largest_group, max_group).
std::vector<Vertex> enumerate_vertices(const ProblemInstance& inst, int largest_group);

// Arithmetic mean of the group coverages.
double partition_coverage(const Partition& p, const ProblemInstance& inst);

// Sum of the group coverages (the quantity the QUBO rewards).
double partition_coverage_sum(const Partition& p, const ProblemInstance& inst);

// ---- instance files ------------------------------------------------------
//
// coverage.csv   header "bitmask,weight"; right-to-left bitstrings of width
//                n_sats; weights with round-trip precision.
// instance.csv   key,value lines: n_sats, k_groups, min_group, max_group.
// efficacies.csv optional, header "satellite,efficacy"; present when the
//                instance declares the synthetic coverage model.

void save_instance(const ProblemInstance& inst, const std::string& dir);
ProblemInstance load_instance(const std::string& dir);

}  // namespace kclique
