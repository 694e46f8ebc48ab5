#pragma once

#include <cstdint>
#include <vector>

#include "spmvlab/matrix.hpp"

namespace spmvlab {

inline constexpr int kDefaultOmega = 4;
inline constexpr int kDefaultSigma = 16;

// Tiled storage. Nonzeros are taken in CSR order in blocks of
// omega*sigma; each block fills a sigma-row x omega-column grid in
// row-major order and is stored lane-major (grid column by grid column),
// so stored slot p of a tile holds the block's CSR-order entry
// (p % sigma) * omega + (p / sigma).
//
// tile_ptr[t] is the matrix row of tile t's first nonzero and
// tile_ptr[n_tiles] == n_rows. bit_flag marks, in stored order, the first
// stored occurrence of each matrix row inside the tile; slot 0 is always
// set. y_off[j] is the number of set bits in lanes before j, minus one
// when lane j opens mid-row. seg_off is carried for layout fidelity but
// never consulted by the multiply kernel; rows are recovered from the
// retained CSR row_ptr.
//
// Trailing nnz % (omega*sigma) entries stay in CSR order at the end of
// col_idx/values, with their source rows recorded in tail_rows.
struct Csr5Matrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    int omega = 0;
    int sigma = 0;
    index_t n_tiles = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> tile_ptr;   // length n_tiles + 1
    std::vector<std::uint8_t> bit_flag;   // n_tiles * omega * sigma, stored order
    std::vector<std::int32_t> y_off;      // n_tiles * omega
    std::vector<std::int32_t> seg_off;    // n_tiles * omega, all zero
    std::vector<std::int32_t> col_idx;    // nnz: tiled entries first, then tail
    std::vector<double> values;           // nnz, same layout
    std::vector<std::int32_t> tail_rows;  // source rows of the tail entries

    int tile_entries() const { return omega * sigma; }
    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }
    index_t tail_nnz() const { return static_cast<index_t>(tail_rows.size()); }
    index_t tiled_nnz() const { return n_tiles * tile_entries(); }
};

// Requires omega >= 1 and sigma >= 1; any nnz is accepted (a matrix with
// fewer than omega*sigma nonzeros gets zero tiles and a full tail).
Csr5Matrix build_csr5(const CsrMatrix& m, int omega = kDefaultOmega, int sigma = kDefaultSigma);

// Undoes the tiling permutation; output triples are in CSR order.
CooMatrix csr5_to_coo(const Csr5Matrix& m);

} // namespace spmvlab
