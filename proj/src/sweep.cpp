#include "kclique/sweep.hpp"

#include <fstream>
#include <sstream>

#include "kclique/errors.hpp"
#include "kclique/pipeline.hpp"
#include "kclique/rng.hpp"
#include "kclique/util.hpp"

namespace kclique {

std::string to_string(Solver s) { return s == Solver::DW2X ? "DW2X" : "VFYC"; }

Solver parse_solver(const std::string& text) {
    if (text == "DW2X") return Solver::DW2X;
    if (text == "VFYC") return Solver::VFYC;
    throw FormatError("unknown solver '" + text + "'");
}

std::string to_string(PostProc p) { return p == PostProc::Optimize ? "optimize" : "none"; }

PostProc parse_post_proc(const std::string& text) {
    if (text == "optimize") return PostProc::Optimize;
    if (text == "none") return PostProc::None;
    throw FormatError("unknown post-processing '" + text + "'");
}

namespace {

// Deterministic stand-in for wall-clock compute: preprocessing effort plus a
// flat repair charge, in simulated microseconds. Keeps result files
// byte-stable while total time still grows with NumGen/PopSize.
std::uint64_t modeled_compute_us(const SweepRecord& r, std::size_t n_vertices) {
    std::uint64_t us = 100;  // repair + bookkeeping
    if (r.method == Method::Genetic)
        us += static_cast<std::uint64_t>(r.num_gen) * static_cast<std::uint64_t>(r.pop_size) * 5;
    else
        us += static_cast<std::uint64_t>(n_vertices) / 100 + 1;
    return us;
}

SweepRecord sample_record(int run_id, std::uint64_t sweep_seed) {
    Rng rng(mix_seed(sweep_seed, static_cast<std::uint64_t>(run_id) + 0x51eeb));
    SweepRecord r;
    r.run_id = run_id;

    switch (rng.below(3)) {
        case 0: r.method = Method::Genetic; break;
        case 1: r.method = Method::Random; break;
        default: r.method = Method::Prune; break;
    }
    if (r.method == Method::Genetic) {
        r.num_gen = static_cast<int>(rng.uniform_int(10, 1000));
        r.pop_size = static_cast<int>(rng.uniform_int(10, 1000));
        r.mut_rate = rng.uniform_real(0.01, 0.25);
    }
    r.num_nodes = static_cast<int>(rng.uniform_int(30, 49));
    r.largest_group = static_cast<int>(rng.uniform_int(4, 7));
    r.num_reps = static_cast<int>(rng.uniform_int(10, 10000));
    r.anneal_time_us = static_cast<int>(rng.uniform_int(5, 2000));
    r.prog_time_us = static_cast<int>(rng.uniform_int(1, 10000));
    r.read_time_us = static_cast<int>(rng.uniform_int(1, 10000));
    r.spin_rev = static_cast<int>(rng.uniform_int(1, r.num_reps));
    r.solver = rng.below(2) == 0 ? Solver::DW2X : Solver::VFYC;
    if (r.solver == Solver::VFYC)
        r.post_proc = PostProc::Optimize;  // mandatory in VFYC mode
    else
        r.post_proc = rng.below(2) == 0 ? PostProc::Optimize : PostProc::None;
    r.seed = rng.next_u64();
    return r;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const ProblemInstance& inst, int n_runs, std::uint64_t seed,
                                   const SweepOptions& opt) {
    if (n_runs < 1) throw DomainError("run_sweep: n_runs must be >= 1");
    std::vector<SweepRecord> records(static_cast<std::size_t>(n_runs));

    parallel_for(static_cast<std::size_t>(n_runs), opt.threads, [&](std::size_t i) {
        SweepRecord r = sample_record(static_cast<int>(i), seed);

        SolveOptions so;
        so.a_const = opt.a_const;
        so.threads = 1;  // parallelism lives at the run level
        so.pre.method = r.method;
        so.pre.num_nodes = r.num_nodes;
        so.pre.largest_group = r.largest_group;
        if (r.method == Method::Genetic) so.pre.ga = GaConfig{r.num_gen, r.pop_size, r.mut_rate};
        so.pre.seed = mix_seed(r.seed, 1);
        so.ann.num_reps = r.num_reps;
        so.ann.anneal_time_us = r.anneal_time_us;
        so.ann.prog_time_us = r.prog_time_us;
        so.ann.read_time_us = r.read_time_us;
        so.ann.spin_rev = r.spin_rev;
        so.ann.solver = r.solver;
        so.ann.post_proc = r.post_proc;
        so.ann.seed = mix_seed(r.seed, 2);
        so.ann.sweeps_per_us = opt.sweeps_per_us;

        try {
            const SolveResult res = solve_once(inst, so);
            r.coverage = res.coverage;
            r.anneal_time_total_us = res.timing.anneal_us;
            r.total_time_us = res.timing.wall_us + modeled_compute_us(r, res.n_candidates);
        } catch (const Error&) {
            r.failed = true;
        }
        records[i] = std::move(r);
    });
    return records;
}

const char* const kSweepCsvHeader =
    "run_id,seed,method,num_gen,pop_size,mut_rate,num_nodes,largest_group,num_reps,"
    "anneal_time_us,prog_time_us,read_time_us,spin_rev,solver,post_proc,coverage,"
    "total_time_us,anneal_time_total_us,failed";

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_sweep_csv: cannot write " + path);
    out << kSweepCsvHeader << "\n";
    for (const SweepRecord& r : records) {
        out << r.run_id << "," << r.seed << "," << to_string(r.method) << "," << r.num_gen << ","
            << r.pop_size << "," << fmt_double(r.mut_rate) << "," << r.num_nodes << ","
            << r.largest_group << "," << r.num_reps << "," << r.anneal_time_us << ","
            << r.prog_time_us << "," << r.read_time_us << "," << r.spin_rev << ","
            << to_string(r.solver) << "," << to_string(r.post_proc) << ","
            << fmt_double(r.coverage) << "," << r.total_time_us << "," << r.anneal_time_total_us
            << "," << (r.failed ? 1 : 0) << "\n";
    }
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("read_sweep_csv: cannot open " + path);
    std::string line;
    int lineno = 0;
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != kSweepCsvHeader)
                throw FormatError(path + ":1: unexpected header");
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 19)
            throw FormatError(path + ":" + std::to_string(lineno) + ": expected 19 fields, got " +
                              std::to_string(fields.size()));
        try {
            SweepRecord r;
            r.run_id = std::stoi(fields[0]);
            r.seed = std::stoull(fields[1]);
            r.method = parse_method(fields[2]);
            r.num_gen = std::stoi(fields[3]);
            r.pop_size = std::stoi(fields[4]);
            r.mut_rate = std::stod(fields[5]);
            r.num_nodes = std::stoi(fields[6]);
            r.largest_group = std::stoi(fields[7]);
            r.num_reps = std::stoi(fields[8]);
            r.anneal_time_us = std::stoi(fields[9]);
            r.prog_time_us = std::stoi(fields[10]);
            r.read_time_us = std::stoi(fields[11]);
            r.spin_rev = std::stoi(fields[12]);
            r.solver = parse_solver(fields[13]);
            r.post_proc = parse_post_proc(fields[14]);
            r.coverage = std::stod(fields[15]);
            r.total_time_us = std::stoull(fields[16]);
            r.anneal_time_total_us = std::stoull(fields[17]);
            r.failed = fields[18] == "1";
            out.push_back(r);
        } catch (const FormatError&) {
            throw;
        } catch (const std::exception&) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": malformed record");
        }
    }
    return out;
}

}  // namespace kclique
