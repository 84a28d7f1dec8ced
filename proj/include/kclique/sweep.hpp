#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kclique/anneal.hpp"
#include "kclique/preprocess.hpp"
#include "kclique/problem.hpp"

namespace kclique {

// One hyperparameter assignment with its outcome; the regression's row unit.
// GA fields are zero when method != Genetic.
struct SweepRecord {
    int run_id = 0;
    std::uint64_t seed = 0;
    Method method = Method::Random;
    int num_gen = 0;
    int pop_size = 0;
    double mut_rate = 0.0;
    int num_nodes = 0;
    int largest_group = 0;
    int num_reps = 0;
    int anneal_time_us = 0;
    int prog_time_us = 0;
    int read_time_us = 0;
    int spin_rev = 0;
    Solver solver = Solver::DW2X;
    PostProc post_proc = PostProc::None;
    double coverage = 0.0;
    std::uint64_t total_time_us = 0;
    std::uint64_t anneal_time_total_us = 0;
    bool failed = false;
};

struct SweepOptions {
    double a_const = 4.0;       // fixed for the whole sweep
    double sweeps_per_us = 20.0;
    int threads = 1;
};

// n_runs independent pipeline executions, each with every hyperparameter
// drawn uniformly from its range (GA fields only when method is Genetic;
// SpinRev <= NumReps; VFYC forces Optimize). Runs are seeded per run_id, so
// the record list is identical for serial and parallel execution.
std::vector<SweepRecord> run_sweep(const ProblemInstance& inst, int n_runs, std::uint64_t seed,
                                   const SweepOptions& opt = {});

// Results file: one header row, one record per row, fixed column order.
extern const char* const kSweepCsvHeader;
void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

std::string to_string(Solver s);
Solver parse_solver(const std::string& text);
std::string to_string(PostProc p);
PostProc parse_post_proc(const std::string& text);

}  // namespace kclique
