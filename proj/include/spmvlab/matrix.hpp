#pragma once

#include <cstdint>
#include <vector>

#include "spmvlab/error.hpp"

namespace spmvlab {

using index_t = std::int64_t;

struct CooEntry {
    index_t row = 0;
    index_t col = 0;
    double value = 0.0;
};

// Coordinate triples, not necessarily sorted or deduplicated.
struct CooMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<CooEntry> entries;

    index_t nnz() const { return static_cast<index_t>(entries.size()); }
};

// Compressed sparse row. Row offsets are 64-bit so prefix sums over
// hundreds of millions of nonzeros cannot overflow; column indices stay
// 32-bit to keep index traffic realistic for the cache model.
struct CsrMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<std::int64_t> row_ptr{0};
    std::vector<std::int32_t> col_idx;
    std::vector<double> values;

    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }
    index_t row_nnz(index_t r) const { return row_ptr[r + 1] - row_ptr[r]; }
};

using DenseVector = std::vector<double>;

struct MatrixStats {
    index_t n_rows = 0;
    index_t nnz = 0;
    index_t nnz_max = 0;   // largest per-row nonzero count
    double nnz_avg = 0.0;  // nnz / n_rows
    double nnz_var = 0.0;  // population variance of per-row nnz
};

// Normalizes to row-major, column-ascending order; duplicate (row, col)
// entries are summed. Throws ValidationError on out-of-range indices.
CsrMatrix coo_to_csr(const CooMatrix& m);

// Inverse of coo_to_csr; output is in normalized (row-major) order.
CooMatrix csr_to_coo(const CsrMatrix& m);

// Checks the CSR structural invariants, throws ValidationError otherwise.
void validate_csr(const CsrMatrix& m);

// Throws ValidationError for n_rows == 0 (averages undefined).
MatrixStats matrix_stats(const CsrMatrix& m);

} // namespace spmvlab
