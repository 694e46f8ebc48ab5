#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spmvlab/matrix.hpp"

namespace spmvlab {

// Generator for the interleaved-group structure: row r belongs to group
// g = r % n_groups and its columns fall inside that group's window
// [g*(cols/n_groups), (g+1)*(cols/n_groups)), so consecutive rows touch
// disjoint regions of x.
struct LocalityPattern {
    index_t n_groups = 1;       // G
    index_t rows_per_group = 1; // S; total rows = G*S
    index_t cols = 1;
    index_t nnz_per_row = 1;    // k, distinct columns per row
    std::uint64_t seed = 0;
};

struct RowPermutation {
    std::vector<index_t> perm;    // perm[i] = source row placed at position i
    std::vector<index_t> inverse; // inverse[perm[i]] == i
};

// Deterministic for a fixed seed, independent of generation order.
// Throws ValidationError when a group window is narrower than nnz_per_row.
CooMatrix gen_poor_locality(const LocalityPattern& p);

// Groups rows by signature floor(min column / window), stable within a
// signature; empty rows sink to the bottom. Returns the row-permuted
// matrix together with the permutation, so that
// y_permuted[i] == y_original[perm[i]] for SpMV outputs.
std::pair<CsrMatrix, RowPermutation> locality_reorder(const CsrMatrix& m, index_t window);

// A contiguous band of hot_rows rows, each with nnz_hot entries, centered
// in the second quarter of the row range; every other row carries
// nnz_cold entries. The matrix is square (cols = n_rows).
CooMatrix gen_clustered(index_t n_rows, index_t hot_rows, index_t nnz_hot, index_t nnz_cold,
                        std::uint64_t seed);

} // namespace spmvlab
