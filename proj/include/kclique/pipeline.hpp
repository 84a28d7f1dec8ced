#pragma once

#include "kclique/anneal.hpp"
#include "kclique/preprocess.hpp"
#include "kclique/problem.hpp"
#include "kclique/repair.hpp"

namespace kclique {

// One end-to-end run: enumerate -> select nodes -> build QUBO -> anneal ->
// repair the best sample -> score.
struct SolveOptions {
    PreprocessConfig pre;
    AnnealConfig ann;
    double a_const = 4.0;
    int threads = 1;
};

struct SolveResult {
    Partition partition;
    double coverage = 0.0;     // mean coverage of the repaired partition
    double best_energy = 0.0;  // lowest sampled QUBO energy
    SampleTiming timing;
    int n_nodes = 0;           // QUBO variables actually used
    std::size_t n_candidates = 0;  // enumerated vertices before selection
    bool shortfall = false;    // preprocessing returned fewer than requested
};

SolveResult solve_once(const ProblemInstance& inst, const SolveOptions& opt);

}  // namespace kclique
