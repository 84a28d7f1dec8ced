#include "kclique/pipeline.hpp"

#include "kclique/errors.hpp"
#include "kclique/qubo.hpp"

namespace kclique {

SolveResult solve_once(const ProblemInstance& inst, const SolveOptions& opt) {
    const std::vector<Vertex> vertices = enumerate_vertices(inst, opt.pre.largest_group);
    if (vertices.empty())
        throw InfeasibleError("solve: instance offers no candidate groups in the size range");

    const NodeSelection sel = select_nodes(inst, vertices, opt.pre);
    if (sel.nodes.empty()) throw InfeasibleError("solve: node selection is empty");

    QuboParams params;
    params.a_const = opt.a_const;
    params.k_groups = inst.k_groups;
    const QuboInstance q = build_qubo(sel.nodes, params);

    const SampleSet samples = anneal(q, opt.ann, opt.threads);
    const Partition partition = repair(samples.best_sample().bits, q, inst);

    SolveResult res;
    res.partition = partition;
    res.coverage = partition_coverage(partition, inst);
    res.best_energy = samples.best_sample().energy;
    res.timing = samples.timing;
    res.n_nodes = q.n_vars();
    res.n_candidates = vertices.size();
    res.shortfall = sel.shortfall;
    return res;
}

}  // namespace kclique
