#include "kclique/problem.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kclique/errors.hpp"
#include "kclique/rng.hpp"
#include "kclique/util.hpp"

namespace kclique {

bool Partition::pairwise_disjoint() const {
    std::uint64_t seen = 0;
    for (const SatSet& g : groups) {
        if (seen & g.bits) return false;
        seen |= g.bits;
    }
    return true;
}

bool Partition::covers(int n_sats) const {
    std::uint64_t all = 0;
    for (const SatSet& g : groups) all |= g.bits;
    const std::uint64_t want = (n_sats >= 64) ? ~0ULL : ((1ULL << n_sats) - 1);
    return (all & want) == want;
}

bool Partition::valid(int n_sats, int k_groups) const {
    if (static_cast<int>(groups.size()) != k_groups) return false;
    for (const SatSet& g : groups)
        if (g.empty()) return false;
    return pairwise_disjoint() && covers(n_sats);
}

double ProblemInstance::coverage(SatSet s) const {
    if (s.empty()) return 0.0;
    if (!table_.empty()) {
        auto it = table_.find(s.bits);
        if (it != table_.end()) return it->second;
    }
    if (efficacies_) {
        double miss = 1.0;
        std::uint64_t bits = s.bits;
        while (bits) {
            const int b = std::countr_zero(bits);
            miss *= 1.0 - (*efficacies_)[static_cast<std::size_t>(b)];
            bits &= bits - 1;
        }
        return 1.0 - miss;
    }
    throw LookupError("coverage: set " + std::to_string(s.bits) +
                      " not in table and no coverage model declared");
}

ProblemInstance synth_coverage(int n_sats, int k_groups, int min_group, int max_group,
                               std::uint64_t seed) {
    if (n_sats < 1) throw DomainError("synth_coverage: n_sats must be >= 1");
    ProblemInstance inst(n_sats, k_groups, min_group, max_group);
    Rng rng(mix_seed(seed, 0x5a7e11));
    std::vector<double> eff(static_cast<std::size_t>(n_sats));
    for (double& e : eff) e = rng.uniform_real(0.3, 0.8);
    inst.set_efficacies(std::move(eff));
    return inst;
}

namespace {

// Ascending masks of the given popcount over n bits (Gosper's hack).
void append_size_class(int n, int size, std::vector<std::uint64_t>& out) {
    if (size > n || size < 1) return;
    std::uint64_t v = (1ULL << size) - 1;
    const std::uint64_t limit = (n >= 64) ? ~0ULL : (1ULL << n);
    while (v < limit) {
        out.push_back(v);
        const std::uint64_t c = v & (~v + 1);
        const std::uint64_t r = v + c;
        if (r >= limit || r < v) break;
        v = (((r ^ v) >> 2) / c) | r;
    }
}

}  // namespace

std::vector<Vertex> enumerate_vertices(const ProblemInstance& inst, int largest_group) {
    const int lo = inst.min_group;
    const int hi = std::min(inst.max_group, largest_group);
    if (lo > hi) throw DomainError("enumerate_vertices: min_group > effective max_group");

    std::vector<std::uint64_t> masks;
    if (inst.has_model()) {
        for (int g = lo; g <= hi; ++g) append_size_class(inst.n_sats, g, masks);
        std::sort(masks.begin(), masks.end());
    } else {
        // Restricted universe: the lookup table is the vertex set.
        masks.reserve(inst.table().size());
        for (const auto& [bits, w] : inst.table()) {
            const int sz = std::popcount(bits);
            if (sz >= lo && sz <= hi) masks.push_back(bits);
        }
        std::sort(masks.begin(), masks.end());
    }

    std::vector<Vertex> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) out.push_back({SatSet(m), inst.coverage(SatSet(m))});
    return out;
}

std::vector<Vertex> enumerate_vertices(const ProblemInstance& inst) {
    return enumerate_vertices(inst, inst.max_group);
}

double partition_coverage_sum(const Partition& p, const ProblemInstance& inst) {
    if (p.groups.empty()) throw DomainError("partition_coverage: empty partition");
    double sum = 0.0;
    for (const SatSet& g : p.groups) sum += inst.coverage(g);
    return sum;
}

double partition_coverage(const Partition& p, const ProblemInstance& inst) {
    return partition_coverage_sum(p, inst) / static_cast<double>(p.groups.size());
}

// ---- instance files ------------------------------------------------------

namespace {

std::pair<std::string, std::string> split_kv(const std::string& line, int lineno,
                                             const std::string& file) {
    const auto comma = line.find(',');
    if (comma == std::string::npos)
        throw FormatError(file + ":" + std::to_string(lineno) + ": expected key,value");
    return {line.substr(0, comma), line.substr(comma + 1)};
}

double parse_weight(const std::string& text, int lineno, const std::string& file) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw FormatError(file + ":" + std::to_string(lineno) + ": bad number '" + text + "'");
    }
}

}  // namespace

void save_instance(const ProblemInstance& inst, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);

    {
        std::ofstream meta(fs::path(dir) / "instance.csv");
        if (!meta) throw Error("save_instance: cannot write to " + dir);
        meta << "n_sats," << inst.n_sats << "\n";
        meta << "k_groups," << inst.k_groups << "\n";
        meta << "min_group," << inst.min_group << "\n";
        meta << "max_group," << inst.max_group << "\n";
    }
    {
        std::ofstream cov(fs::path(dir) / "coverage.csv");
        if (!cov) throw Error("save_instance: cannot write to " + dir);
        cov << "bitmask,weight\n";
        for (const Vertex& v : enumerate_vertices(inst))
            cov << format_satset(v.sats, inst.n_sats) << "," << fmt_double(v.weight) << "\n";
    }
    if (inst.has_model()) {
        std::ofstream eff(fs::path(dir) / "efficacies.csv");
        if (!eff) throw Error("save_instance: cannot write to " + dir);
        eff << "satellite,efficacy\n";
        for (std::size_t s = 0; s < inst.efficacies().size(); ++s)
            eff << (s + 1) << "," << fmt_double(inst.efficacies()[s]) << "\n";
    }
}

ProblemInstance load_instance(const std::string& dir) {
    namespace fs = std::filesystem;
    ProblemInstance inst;

    {
        const std::string file = (fs::path(dir) / "instance.csv").string();
        std::ifstream meta(file);
        if (!meta) throw FormatError("load_instance: cannot open " + file);
        std::string line;
        int lineno = 0;
        while (std::getline(meta, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto [key, value] = split_kv(line, lineno, file);
            const int v = static_cast<int>(parse_weight(value, lineno, file));
            if (key == "n_sats") inst.n_sats = v;
            else if (key == "k_groups") inst.k_groups = v;
            else if (key == "min_group") inst.min_group = v;
            else if (key == "max_group") inst.max_group = v;
            else throw FormatError(file + ":" + std::to_string(lineno) + ": unknown key " + key);
        }
        if (inst.n_sats < 1 || inst.n_sats > 64)
            throw FormatError(file + ": n_sats out of range [1, 64]");
        if (inst.k_groups < 1 || inst.k_groups > inst.n_sats)
            throw FormatError(file + ": k_groups out of range [1, n_sats]");
        if (inst.min_group > inst.max_group || inst.max_group > inst.n_sats)
            throw FormatError(file + ": group size bounds inconsistent");
    }

    {
        const std::string file = (fs::path(dir) / "coverage.csv").string();
        std::ifstream cov(file);
        if (!cov) throw FormatError("load_instance: cannot open " + file);
        std::string line;
        int lineno = 0;
        while (std::getline(cov, line)) {
            ++lineno;
            if (line.empty()) continue;
            if (lineno == 1 && line == "bitmask,weight") continue;
            auto [mask, weight] = split_kv(line, lineno, file);
            const SatSet s = parse_satset(mask);
            if (static_cast<int>(mask.size()) > inst.n_sats)
                throw FormatError(file + ":" + std::to_string(lineno) + ": bitmask wider than n_sats");
            const double w = parse_weight(weight, lineno, file);
            if (w < 0.0 || w > 1.0)
                throw FormatError(file + ":" + std::to_string(lineno) + ": weight outside [0,1]");
            inst.add_table_entry(s, w);
        }
    }

    const std::string efffile = (fs::path(dir) / "efficacies.csv").string();
    if (std::ifstream eff(efffile); eff) {
        std::vector<double> e(static_cast<std::size_t>(inst.n_sats), 0.0);
        std::string line;
        int lineno = 0;
        while (std::getline(eff, line)) {
            ++lineno;
            if (line.empty()) continue;
            if (lineno == 1 && line == "satellite,efficacy") continue;
            auto [sat, value] = split_kv(line, lineno, efffile);
            const int s = static_cast<int>(parse_weight(sat, lineno, efffile));
            if (s < 1 || s > inst.n_sats)
                throw FormatError(efffile + ":" + std::to_string(lineno) + ": satellite out of range");
            e[static_cast<std::size_t>(s - 1)] = parse_weight(value, lineno, efffile);
        }
        inst.set_efficacies(std::move(e));
    }

    return inst;
}

}  // namespace kclique
