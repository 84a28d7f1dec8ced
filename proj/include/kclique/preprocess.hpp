#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kclique/problem.hpp"

namespace kclique {

enum class Method { Genetic, Random, Prune };

std::string to_string(Method m);
Method parse_method(const std::string& text);

struct GaConfig {
    int num_gen = 100;
    int pop_size = 50;
    double mut_rate = 0.05;
};

// Which vertices get QUBO variables. num_nodes/largest_group carry the
// device-facing ranges ([30,49] and [4,7]); the sweep samples inside them,
// direct calls may exceed them.
struct PreprocessConfig {
    Method method = Method::Prune;
    int num_nodes = 40;
    int largest_group = 7;
    std::optional<GaConfig> ga;
    std::uint64_t seed = 0;
};

struct NodeSelection {
    std::vector<Vertex> nodes;
    // Fewer candidates existed than num_nodes requested.
    bool shortfall = false;
};

// Stratified uniform sample: num_nodes split as evenly as possible across
// sizes min_group..largest_group, remainder (and any bucket shortfall) going
// to the smallest sizes first. Deterministic in cfg.seed.
NodeSelection select_random(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                            const PreprocessConfig& cfg);

// Same quotas, but each bucket keeps its top-weight vertices (ties by
// ascending bitmask).
NodeSelection select_prune(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                           const PreprocessConfig& cfg);

// Runs a genetic algorithm over candidate partitions and returns the
// num_nodes groups occurring most frequently in the final population (ties
// by higher weight, then ascending bitmask), padded with prune picks when
// the population holds fewer distinct groups. Requires cfg.ga.
NodeSelection select_genetic(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                             const PreprocessConfig& cfg);

// Dispatch on cfg.method.
NodeSelection select_nodes(const ProblemInstance& inst, const std::vector<Vertex>& vertices,
                           const PreprocessConfig& cfg);

// Selected node list in the coverage-table format (bitmask,weight rows).
void write_nodes_csv(const std::vector<Vertex>& nodes, int n_sats, const std::string& path);

// GA internals, exposed so tests can watch convergence.
struct GaRun {
    std::vector<Partition> population;     // final generation
    std::vector<double> best_fitness;      // best individual per generation
};
GaRun run_ga(const ProblemInstance& inst, const GaConfig& ga, std::uint64_t seed);

}  // namespace kclique
