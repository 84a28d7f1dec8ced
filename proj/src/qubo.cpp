#include "kclique/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "kclique/errors.hpp"
#include "kclique/util.hpp"

namespace kclique {

QuboInstance::QuboInstance(int n_vars, double offset) : n_(n_vars), offset_(offset) {
    if (n_vars < 1) throw DomainError("QuboInstance: n_vars must be >= 1");
    linear_.assign(static_cast<std::size_t>(n_), 0.0);
    quad_.assign(static_cast<std::size_t>(n_) * (static_cast<std::size_t>(n_) - 1) / 2, 0.0);
}

std::size_t QuboInstance::tri_index(int i, int j) const {
    if (i < 0 || j <= i || j >= n_) throw DomainError("QuboInstance: bad coupling index");
    const std::size_t ui = static_cast<std::size_t>(i);
    const std::size_t uj = static_cast<std::size_t>(j);
    const std::size_t un = static_cast<std::size_t>(n_);
    return ui * (2 * un - ui - 1) / 2 + (uj - ui - 1);
}

double QuboInstance::energy_scale() const {
    if (scale_ > 0.0) return scale_;
    double m = 0.0;
    for (double h : linear_) m = std::max(m, std::abs(h));
    for (double j : quad_) m = std::max(m, std::abs(j));
    return m > 0.0 ? m : 1.0;
}

QuboInstance build_qubo(const std::vector<Vertex>& vertices, QuboParams params) {
    if (vertices.empty()) throw DomainError("build_qubo: empty vertex list");
    if (params.a_const <= 0.0) throw DomainError("build_qubo: A must be positive");
    if (params.k_groups < 1) throw DomainError("build_qubo: k must be >= 1");

    double w_max = 0.0;
    for (const Vertex& v : vertices) w_max = std::max(w_max, v.weight);
    if (w_max <= 0.0) throw DomainError("build_qubo: all vertex weights are zero");
    params.max_weight = w_max;

    const double a = params.a_const;
    const double k = static_cast<double>(params.k_groups);
    const int n = static_cast<int>(vertices.size());

    QuboInstance q(n, k * k * w_max);
    q.set_energy_scale(w_max);
    for (int i = 0; i < n; ++i) {
        const double wi = vertices[static_cast<std::size_t>(i)].weight;
        q.set_linear(i, -a * wi - (2.0 * k - (a - 1.0)) * w_max);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vertex& vi = vertices[static_cast<std::size_t>(i)];
            const Vertex& vj = vertices[static_cast<std::size_t>(j)];
            double coupling = 2.0 * w_max;
            if (vi.sats.overlaps(vj.sats)) coupling += 2.0 * (vi.weight + vj.weight);
            q.set_quad(i, j, coupling);
        }
    }
    q.set_vertex_map(vertices);
    q.set_params(params);
    return q;
}

double energy(const QuboInstance& q, const std::vector<std::uint8_t>& x) {
    if (static_cast<int>(x.size()) != q.n_vars())
        throw DomainError("energy: assignment length does not match n_vars");
    double e = q.offset();
    const int n = q.n_vars();
    for (int i = 0; i < n; ++i) {
        if (!x[static_cast<std::size_t>(i)]) continue;
        e += q.linear(i);
        for (int j = i + 1; j < n; ++j)
            if (x[static_cast<std::size_t>(j)]) e += q.quad(i, j);
    }
    return e;
}

std::vector<std::uint8_t> indicator_vector(const QuboInstance& q, const Partition& p) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(q.n_vars()), 0);
    const auto& verts = q.vertex_map();
    for (const SatSet& g : p.groups) {
        bool mapped = false;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (verts[i].sats == g) {
                x[i] = 1;
                mapped = true;
                break;
            }
        }
        if (!mapped)
            throw MappingError("indicator_vector: group " + std::to_string(g.bits) +
                               " has no QUBO variable");
    }
    return x;
}

double feasible_energy_gap(const QuboInstance& q, const Partition& p1, const Partition& p2) {
    return energy(q, indicator_vector(q, p1)) - energy(q, indicator_vector(q, p2));
}

void write_qubo_csv(const QuboInstance& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_qubo_csv: cannot write " + path);
    const QuboParams& params = q.params();
    out << "# offset=" << fmt_double(q.offset()) << " a=" << fmt_double(params.a_const)
        << " k=" << params.k_groups << " w=" << fmt_double(params.max_weight) << "\n";
    const int n = q.n_vars();
    for (int i = 0; i < n; ++i) out << i << "," << i << "," << fmt_double(q.linear(i)) << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out << i << "," << j << "," << fmt_double(q.quad(i, j)) << "\n";
}

}  // namespace kclique
