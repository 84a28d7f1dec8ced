#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kclique/qubo.hpp"

namespace kclique {

enum class Solver { DW2X, VFYC };
enum class PostProc { Optimize, None };

// Sampler controls mirroring the device hyperparameter surface. Times are in
// microseconds and map to simulated effort/timing; prog/read times are
// recorded but otherwise inert.
struct AnnealConfig {
    int num_reps = 100;
    int anneal_time_us = 50;
    int prog_time_us = 1;
    int read_time_us = 1;
    int spin_rev = 1;
    Solver solver = Solver::DW2X;
    PostProc post_proc = PostProc::None;
    std::uint64_t seed = 0;

    // Simulator constants: Metropolis sweeps per simulated microsecond, and
    // the geometric inverse-temperature schedule endpoints (scaled by the
    // instance's energy scale).
    double sweeps_per_us = 20.0;
    double beta_hot = 0.1;
    double beta_cold = 10.0;

    // VFYC mode behaves like DW2X with mandatory Optimize post-processing.
    bool effective_optimize() const {
        return solver == Solver::VFYC || post_proc == PostProc::Optimize;
    }
};

struct Sample {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
    int count = 0;
};

struct SampleTiming {
    std::uint64_t anneal_us = 0;
    std::uint64_t prog_us = 0;
    std::uint64_t read_us = 0;
    std::uint64_t wall_us = 0;
};

// Aggregated annealer output: distinct states sorted by ascending energy
// (ties by bit pattern); occurrence counts sum to num_reps.
struct SampleSet {
    std::vector<Sample> samples;
    int best = 0;
    SampleTiming timing;

    const Sample& best_sample() const { return samples[static_cast<std::size_t>(best)]; }
};

// num_reps independent annealing restarts over a geometric beta schedule;
// every ceil(num_reps/spin_rev)-th restart runs under a fresh gauge
// (spin-reversal) transform and is un-gauged before reporting. Deterministic
// in cfg.seed, identical for serial and parallel execution.
SampleSet anneal(const QuboInstance& q, const AnnealConfig& cfg, int threads = 1);

// Conjugates the instance by flipping the variables selected by `mask`
// (x_i -> 1-x_i): energies are preserved under the corresponding state
// relabeling and the transform is an involution.
QuboInstance gauge_transform(const QuboInstance& q, const std::vector<std::uint8_t>& mask);

// Steepest single-flip descent to a local minimum; never increases energy.
std::vector<std::uint8_t> greedy_descent(const QuboInstance& q, std::vector<std::uint8_t> x);

// CSV export: energy,count,bits rows (bits as a right-to-left bitstring over
// QUBO variables).
void write_samples_csv(const SampleSet& set, int n_vars, const std::string& path);

}  // namespace kclique
