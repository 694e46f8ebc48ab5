#pragma once

#include <vector>

#include "spmvlab/cache_sim.hpp"
#include "spmvlab/csr5.hpp"
#include "spmvlab/matrix.hpp"
#include "spmvlab/partition.hpp"

namespace spmvlab {

// Logical placement of the kernel's arrays in a flat address space:
// disjoint, line-aligned regions in the fixed order row_ptr, col_idx,
// values, x, y, descriptors. Element widths: row_ptr 8B, col_idx 4B,
// values/x/y 8B; descriptor sub-arrays are tile_ptr (4B), bit_flag packed
// into 8B words, y_off (2B) and tail_rows (4B).
struct AddressMap {
    std::uint64_t row_ptr = 0;
    std::uint64_t col_idx = 0;
    std::uint64_t values = 0;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t tile_ptr = 0;
    std::uint64_t bit_words = 0;
    std::uint64_t y_off = 0;
    std::uint64_t tail_rows = 0;

    static AddressMap for_csr(const CsrMatrix& m, int line_size);
    static AddressMap for_csr5(const Csr5Matrix& m, int line_size);
};

// Per-thread logical access sequences in kernel order. For CSR, each row
// reads row_ptr[r] and row_ptr[r+1], then per nonzero col_idx[k],
// values[k] and x[col], and finally writes y[r]. The plan must be a row
// partition of the same matrix.
std::vector<ThreadTrace> trace_spmv_csr(const CsrMatrix& m, const PartitionPlan& plan,
                                        int line_size);

// CSR5 traces follow the tiled kernel: per tile the two tile_ptr entries,
// the packed bit_flag words, the row_ptr walk, then the stored-order
// entry streams and one y write per flushed row; the tail adds its
// recorded-row reads. y_off/seg_off are not read by the kernel and do not
// appear in the trace.
std::vector<ThreadTrace> trace_spmv_csr5(const Csr5Matrix& m, const PartitionPlan& plan,
                                         int line_size);

} // namespace spmvlab
