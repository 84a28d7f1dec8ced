#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kclique/oracle.hpp"
#include "kclique/rng.hpp"
#include "kclique/sweep.hpp"
#include "test_oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

std::string cli_path() {
    const char* p = std::getenv("KCLIQUE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string data_path() {
    const char* p = std::getenv("KCLIQUE_DATA");
    REQUIRE(p != nullptr);
    return p;
}

CmdResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate produces a loadable instance with the right row count") {
    const fs::path dir = fresh_dir("kqcli_gen");
    const auto res = run_cli("generate --n-sats 12 --k 3 --min-group 3 --max-group 5 --seed 4 --out " +
                             (dir / "inst").string());
    CHECK(res.exit_code == 0);

    std::ifstream cov(dir / "inst" / "coverage.csv");
    REQUIRE(cov.good());
    std::string line;
    int rows = -1;  // header
    while (std::getline(cov, line))
        if (!line.empty()) ++rows;
    double expect = 0.0;
    for (int g = 3; g <= 5; ++g) expect += kclique::binomial(12, g).to_double();
    CHECK(static_cast<double>(rows) == expect);

    const kclique::ProblemInstance inst = kclique::load_instance((dir / "inst").string());
    CHECK(inst.n_sats == 12);
    CHECK(inst.k_groups == 3);
    CHECK(inst.has_model());
    fs::remove_all(dir);
}

TEST_CASE("generate rejects bad arguments with exit 2") {
    CHECK(run_cli("generate --n-sats 0 --seed 1 --out /tmp/kqcli_x").exit_code == 2);
    CHECK(run_cli("generate --n-sats 9 --seed 1 --min-group 5 --max-group 4 --out /tmp/kqcli_x")
              .exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("solve on the bundled example lands on the documented best clique") {
    const auto res = run_cli("solve --instance " + data_path() + "/fig1 --num-nodes 5 --seed 3");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("000010101\n") != std::string::npos);  // {1,3,5}
    CHECK(res.output.find("001101000\n") != std::string::npos);  // {4,6,7}
    CHECK(res.output.find("110000010\n") != std::string::npos);  // {2,8,9}
    CHECK(res.output.find("coverage,0.746666666") != std::string::npos);
}

TEST_CASE("solve is byte-identical across reruns and thread counts") {
    const fs::path dir = fresh_dir("kqcli_det");
    REQUIRE(run_cli("generate --n-sats 10 --k 3 --min-group 3 --max-group 4 --seed 8 --out " +
                    (dir / "i").string())
                .exit_code == 0);
    const std::string flags = "solve --instance " + (dir / "i").string() +
                              " --method prune --num-nodes 24 --num-reps 60 --anneal-time 20 "
                              "--spin-rev 6 --seed 99";
    const auto a = run_cli(flags + " --threads 1");
    const auto b = run_cli(flags + " --threads 1");
    const auto c = run_cli(flags + " --threads 2");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output == c.output);
    fs::remove_all(dir);
}

TEST_CASE("oracle reproduces the frozen golden optimum via files") {
    const fs::path dir = fresh_dir("kqcli_gold");
    REQUIRE(run_cli("generate --n-sats 9 --k 3 --min-group 3 --max-group 3 --seed 42 --out " +
                    (dir / "i").string())
                .exit_code == 0);
    const auto res = run_cli("oracle --instance " + (dir / "i").string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("search_space,3025") != std::string::npos);
    CHECK(res.output.find("coverage,0.92186967088") != std::string::npos);

    // the full pipeline reaches the same optimum through the CLI
    const auto sol = run_cli("solve --instance " + (dir / "i").string() +
                             " --method genetic --ga-num-gen 200 --ga-pop-size 100 "
                             "--ga-mut-rate 0.1 --num-nodes 30 --seed 7");
    CHECK(sol.exit_code == 0);
    CHECK(sol.output.find("coverage,0.92186967088") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("oracle guard refusal exits 4 and names the count") {
    const fs::path dir = fresh_dir("kqcli_guard");
    // a model-backed instance too large to enumerate: S(24,8) > 1e8
    fs::create_directories(dir / "i");
    {
        std::ofstream meta(dir / "i" / "instance.csv");
        meta << "n_sats,24\nk_groups,8\nmin_group,3\nmax_group,7\n";
        std::ofstream cov(dir / "i" / "coverage.csv");
        cov << "bitmask,weight\n";
        std::ofstream eff(dir / "i" / "efficacies.csv");
        eff << "satellite,efficacy\n";
        for (int s = 1; s <= 24; ++s) eff << s << ",0.5\n";
    }
    const auto res = run_cli("oracle --instance " + (dir / "i").string());
    CHECK(res.exit_code == 4);
    CHECK(res.output.find("S(24,8)") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("infeasible instances exit 3") {
    const fs::path dir = fresh_dir("kqcli_infeas");
    REQUIRE(run_cli("generate --n-sats 8 --k 3 --min-group 3 --max-group 4 --seed 5 --out " +
                    (dir / "i").string())
                .exit_code == 0);
    // 8 satellites cannot form three disjoint triples
    const auto res = run_cli("solve --instance " + (dir / "i").string() +
                             " --num-nodes 30 --num-reps 20 --anneal-time 10 --seed 1");
    CHECK(res.exit_code == 3);
    fs::remove_all(dir);
}

TEST_CASE("sweep emits a deterministic in-range CSV") {
    const fs::path dir = fresh_dir("kqcli_sweep");
    REQUIRE(run_cli("generate --n-sats 9 --k 3 --min-group 3 --max-group 7 --seed 42 --out " +
                    (dir / "i").string())
                .exit_code == 0);
    const std::string flags = "sweep --instance " + (dir / "i").string() +
                              " --runs 2 --seed 7 --sweeps-per-us 0.02 --threads 2 --out ";
    const auto r1 = run_cli(flags + (dir / "a.csv").string());
    const auto r2 = run_cli(flags + (dir / "b.csv").string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));
    // two data rows plus header
    CHECK(std::count(a.begin(), a.end(), '\n') == 3);
    const auto recs = kclique::read_sweep_csv((dir / "a.csv").string());
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) {
        CHECK(r.num_nodes >= 30);
        CHECK(r.num_nodes <= 49);
        CHECK(r.spin_rev <= r.num_reps);
    }
    fs::remove_all(dir);
}

TEST_CASE("regress recovers a planted coefficient through the CLI") {
    const fs::path dir = fresh_dir("kqcli_regress");
    // synthetic records with coverage = 2 * num_nodes + noise
    kclique::Rng rng(17);
    std::vector<kclique::SweepRecord> recs;
    for (int i = 0; i < 400; ++i) {
        kclique::SweepRecord r;
        r.run_id = i;
        r.method = static_cast<kclique::Method>(rng.below(3));
        if (r.method == kclique::Method::Genetic) {
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
        r.solver = rng.below(2) ? kclique::Solver::VFYC : kclique::Solver::DW2X;
        r.post_proc = kclique::PostProc::Optimize;
        r.coverage = 2.0 * r.num_nodes + 0.05 * rng.uniform_real(-1.0, 1.0);
        recs.push_back(r);
    }
    kclique::write_sweep_csv(recs, (dir / "r.csv").string());

    const auto res = run_cli("regress --in " + (dir / "r.csv").string() + " --out-csv " +
                             (dir / "rep.csv").string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("NumNodes") != std::string::npos);
    // machine-readable twin carries the estimate
    const std::string rep = slurp(dir / "rep.csv");
    const auto pos = rep.find("NumNodes,");
    REQUIRE(pos != std::string::npos);
    const double est = std::stod(rep.substr(pos + 9));
    CHECK(est > 1.99);
    CHECK(est < 2.01);
    fs::remove_all(dir);
}

TEST_CASE("regress rejects malformed CSV with exit 2 and a line number") {
    const fs::path dir = fresh_dir("kqcli_badcsv");
    {
        std::ofstream out(dir / "bad.csv");
        out << kclique::kSweepCsvHeader << "\n";
        out << "0,1,prune,0,0,0,40,5,100,50,1,1,10,DW2X,optimize,0.5,100,5000,0\n";
        out << "oops\n";
    }
    const auto res = run_cli("regress --in " + (dir / "bad.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find(":3:") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("solve exports QUBO and sample files") {
    const fs::path dir = fresh_dir("kqcli_export");
    REQUIRE(run_cli("generate --n-sats 9 --k 3 --min-group 3 --max-group 3 --seed 42 --out " +
                    (dir / "i").string())
                .exit_code == 0);
    const auto res = run_cli("solve --instance " + (dir / "i").string() +
                             " --method prune --num-nodes 12 --num-reps 40 --anneal-time 10 "
                             "--seed 6 --export-qubo " +
                             (dir / "q.csv").string() + " --export-samples " +
                             (dir / "s.csv").string() + " --export-nodes " +
                             (dir / "n.csv").string());
    CHECK(res.exit_code == 0);

    const std::string q = slurp(dir / "q.csv");
    CHECK(q.find("# offset=") != std::string::npos);
    CHECK(q.find("a=4") != std::string::npos);
    // 12 linear rows + 66 coupling rows + header
    CHECK(std::count(q.begin(), q.end(), '\n') == 1 + 12 + 66);

    const std::string s = slurp(dir / "s.csv");
    CHECK(s.find("energy,count,bits") == 0);

    // node export reuses the coverage-table format
    const std::string nodes = slurp(dir / "n.csv");
    CHECK(nodes.find("bitmask,weight") == 0);
    CHECK(std::count(nodes.begin(), nodes.end(), '\n') == 1 + 12);
    fs::remove_all(dir);
}
