#include "spmvlab/pipeline.hpp"

#include <algorithm>

namespace spmvlab {

SimResult simulate_spmv(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                        int n_threads, const Placement& placement, const Topology& topo,
                        Scheme csr_scheme) {
    if (format == Format::Csr5 && csr5 == nullptr)
        throw ValidationError("csr5 structure missing for csr5 simulation");

    std::vector<ThreadTrace> traces;
    if (format == Format::Csr) {
        const PartitionPlan plan = csr_scheme == Scheme::NnzBalanced
                                       ? partition_nnz_balanced(csr, n_threads)
                                       : partition_rows_static(csr, n_threads);
        traces = trace_spmv_csr(csr, plan, topo.line_size);
    } else {
        const PartitionPlan plan = partition_csr5_tiles(*csr5, n_threads);
        traces = trace_spmv_csr5(*csr5, plan, topo.line_size);
    }
    return simulate(traces, topo, placement);
}

double modeled_speedup(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                       const Topology& topo, const Placement& placement, int n_threads,
                       Scheme csr_scheme) {
    if (n_threads < 1) throw ValidationError("thread count must be at least 1");
    const SimResult one =
        simulate_spmv(csr, csr5, format, 1, Placement::compact(), topo, csr_scheme);
    const SimResult many = simulate_spmv(csr, csr5, format, n_threads, placement, topo, csr_scheme);
    double worst = 0.0;
    for (const ThreadCounters& c : many.per_thread) worst = std::max(worst, c.modeled_cost);
    if (worst <= 0.0) return 1.0;  // empty matrix: nothing to scale
    return one.per_thread[0].modeled_cost / worst;
}

} // namespace spmvlab
