#pragma once

#include <string>
#include <vector>

#include "spmvlab/csr5.hpp"
#include "spmvlab/matrix.hpp"

namespace spmvlab {

enum class Scheme { RowsStatic, NnzBalanced, Csr5Tiles };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// Contiguous per-thread range: rows for the CSR schemes, tiles for
// csr5-tiles (tail entries counted into the last thread).
struct ThreadRange {
    index_t begin = 0;
    index_t end = 0;
    index_t nnz = 0;
};

struct PartitionPlan {
    Scheme scheme = Scheme::RowsStatic;
    int n_threads = 1;
    std::vector<ThreadRange> ranges;
    index_t total_nnz = 0;

    // Largest per-thread share of the total nonzeros; 1/T is perfect balance.
    double max_share() const;
};

// Contiguous row chunks of ceil(n_rows / n_threads); trailing threads may
// receive empty ranges.
PartitionPlan partition_rows_static(const CsrMatrix& m, int n_threads);

// Contiguous row split minimizing the maximum per-thread nnz, found by
// binary search over the bottleneck value on row_ptr.
PartitionPlan partition_nnz_balanced(const CsrMatrix& m, int n_threads);

// Contiguous tile chunks of ceil(n_tiles / n_threads); the tail goes to
// the last thread.
PartitionPlan partition_csr5_tiles(const Csr5Matrix& m, int n_threads);

} // namespace spmvlab
