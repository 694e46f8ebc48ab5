#pragma once

#include "spmvlab/cache_sim.hpp"
#include "spmvlab/exec.hpp"
#include "spmvlab/trace.hpp"

namespace spmvlab {

// Trace + simulate in one step. The partition scheme follows the format:
// CSR runs rows-static (or the given scheme), CSR5 runs tile chunks.
SimResult simulate_spmv(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                        int n_threads, const Placement& placement, const Topology& topo,
                        Scheme csr_scheme = Scheme::RowsStatic);

// Simulated scalability label: 1-thread modeled cost divided by the
// slowest thread's modeled cost at n_threads threads.
double modeled_speedup(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                       const Topology& topo, const Placement& placement, int n_threads,
                       Scheme csr_scheme = Scheme::RowsStatic);

} // namespace spmvlab
