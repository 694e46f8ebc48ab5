#pragma once

#include <utility>
#include <vector>

#include "spmvlab/csr5.hpp"
#include "spmvlab/matrix.hpp"

namespace spmvlab {

// y = Ax. Every output element is assigned (not accumulated), so empty
// rows yield exactly 0 and a row range recomputed by any thread is
// bitwise identical to the sequential result.
DenseVector spmv_csr(const CsrMatrix& m, const DenseVector& x);

// Row-range kernel shared by the sequential and threaded paths.
void spmv_csr_rows(const CsrMatrix& m, const DenseVector& x, DenseVector& y, index_t row_begin,
                   index_t row_end);

// Tile-range kernel: per tile, a segmented reduction over the stored
// (lane-major) order. bit_flag opens an accumulator at each row's first
// stored occurrence; later entries of the row fold into it. Rows are
// recovered by walking row_ptr from tile_ptr[t]. Each tile's per-row
// partial sums are handed to emit(row, sum) in accumulator-open order.
template <typename Emit>
void csr5_tile_range(const Csr5Matrix& m, const DenseVector& x, index_t tile_begin,
                     index_t tile_end, Emit&& emit) {
    const int R = m.tile_entries();
    std::vector<std::int32_t> csr_rows(static_cast<std::size_t>(R));
    std::vector<std::pair<std::int32_t, double>> acc;
    acc.reserve(static_cast<std::size_t>(R));

    for (index_t t = tile_begin; t < tile_end; ++t) {
        const std::size_t base = static_cast<std::size_t>(t) * R;

        index_t r = m.tile_ptr[static_cast<std::size_t>(t)];
        for (int l = 0; l < R; ++l) {
            const index_t k = static_cast<index_t>(base) + l;
            while (k >= m.row_ptr[static_cast<std::size_t>(r) + 1]) ++r;
            csr_rows[static_cast<std::size_t>(l)] = static_cast<std::int32_t>(r);
        }

        acc.clear();
        for (int p = 0; p < R; ++p) {
            const int lane = p / m.sigma;
            const int i = p % m.sigma;
            const std::int32_t row = csr_rows[static_cast<std::size_t>(i) * m.omega + lane];
            const std::size_t s = base + p;
            const double term =
                m.values[s] * x[static_cast<std::size_t>(m.col_idx[s])];
            if (m.bit_flag[s]) {
                acc.emplace_back(row, term);
            } else {
                // The matching accumulator is usually the most recent one.
                for (std::size_t a = acc.size(); a-- > 0;) {
                    if (acc[a].first == row) {
                        acc[a].second += term;
                        break;
                    }
                }
            }
        }
        for (const auto& [row, sum] : acc) emit(row, sum);
    }
}

// Tail kernel: scalar accumulation in CSR order, one emit per row run.
template <typename Emit>
void csr5_tail(const Csr5Matrix& m, const DenseVector& x, Emit&& emit) {
    const index_t tail = m.tail_nnz();
    index_t i = 0;
    while (i < tail) {
        const std::int32_t row = m.tail_rows[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (; i < tail && m.tail_rows[static_cast<std::size_t>(i)] == row; ++i) {
            const std::size_t k = static_cast<std::size_t>(m.tiled_nnz() + i);
            sum += m.values[k] * x[static_cast<std::size_t>(m.col_idx[k])];
        }
        emit(row, sum);
    }
}

// y = Ax over the tiled layout; numerically equal to spmv_csr within
// 1e-10 relative per element (summation order differs).
DenseVector spmv_csr5(const Csr5Matrix& m, const DenseVector& x);

} // namespace spmvlab
