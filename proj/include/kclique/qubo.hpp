#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kclique/problem.hpp"

namespace kclique {

// Parameters of the combined Hamiltonian. W is the maximum weight among the
// vertices the QUBO is built over, recomputed per build.
struct QuboParams {
    double a_const = 4.0;
    int k_groups = 1;
    double max_weight = 0.0;
};

// Upper-triangular QUBO over a chosen vertex list:
//   E(x) = offset + sum_i h_i x_i + sum_{i<j} J_ij x_i x_j
// The problem is fully connected (every pair carries at least the
// cardinality coupling), so couplings live in a packed triangular array.
class QuboInstance {
public:
    QuboInstance() = default;
    QuboInstance(int n_vars, double offset);

    int n_vars() const { return n_; }
    double offset() const { return offset_; }
    void set_offset(double v) { offset_ = v; }

    double linear(int i) const { return linear_[static_cast<std::size_t>(i)]; }
    void set_linear(int i, double v) { linear_[static_cast<std::size_t>(i)] = v; }

    double quad(int i, int j) const { return quad_[tri_index(i, j)]; }
    void set_quad(int i, int j, double v) { quad_[tri_index(i, j)] = v; }
    void add_quad(int i, int j, double v) { quad_[tri_index(i, j)] += v; }

    const std::vector<Vertex>& vertex_map() const { return vertices_; }
    void set_vertex_map(std::vector<Vertex> v) { vertices_ = std::move(v); }

    // Effective parameters of the build (max_weight filled in with the
    // recomputed W). Zero-initialized for hand-built instances.
    const QuboParams& params() const { return params_; }
    void set_params(const QuboParams& p) { params_ = p; }

    // Characteristic magnitude used to scale annealing temperatures; the
    // builder sets it to W, hand-built instances fall back to the largest
    // absolute coefficient.
    double energy_scale() const;
    void set_energy_scale(double s) { scale_ = s; }

private:
    std::size_t tri_index(int i, int j) const;

    int n_ = 0;
    double offset_ = 0.0;
    double scale_ = 0.0;  // 0 = derive from coefficients
    QuboParams params_{};
    std::vector<double> linear_;
    std::vector<double> quad_;
    std::vector<Vertex> vertices_;
};

// Builds the combined Hamiltonian over the selected vertices:
//   h_i   = -A*w_i - (2k - (A-1))*W
//   J_ij  = 2W + 2*O_ij*(w_i + w_j),  O_ij = 1 iff the vertices overlap
//   offset = k^2 * W
// params.max_weight is ignored on input and recomputed from `vertices`.
QuboInstance build_qubo(const std::vector<Vertex>& vertices, QuboParams params);

// Energy of a full assignment.
double energy(const QuboInstance& q, const std::vector<std::uint8_t>& x);

// Indicator vector of a partition over the QUBO's vertex map; MappingError
// if some group has no variable.
std::vector<std::uint8_t> indicator_vector(const QuboInstance& q, const Partition& p);

// energy(x1) - energy(x2) for two valid k-partitions; equals
// -A * (sum-coverage(p1) - sum-coverage(p2)) because the cardinality and
// overlap contributions cancel between feasible selections.
double feasible_energy_gap(const QuboInstance& q, const Partition& p1, const Partition& p2);

// CSV export: a comment header carrying offset/A/k/W, then i,j,value rows
// (i == j rows carry h_i, i < j rows carry J_ij).
void write_qubo_csv(const QuboInstance& q, const std::string& path);

}  // namespace kclique
