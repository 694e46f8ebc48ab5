#include "spmvlab/csr5.hpp"

#include <algorithm>

namespace spmvlab {

namespace {

// Row of every nonzero, in CSR order.
std::vector<std::int32_t> expand_rows(const CsrMatrix& m) {
    std::vector<std::int32_t> rows(static_cast<std::size_t>(m.nnz()));
    for (index_t r = 0; r < m.n_rows; ++r)
        for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)];
             k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
            rows[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(r);
    return rows;
}

} // namespace

Csr5Matrix build_csr5(const CsrMatrix& m, int omega, int sigma) {
    if (omega < 1 || sigma < 1)
        throw ValidationError("tile dimensions must be at least 1");
    validate_csr(m);

    const int R = omega * sigma;
    Csr5Matrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.omega = omega;
    out.sigma = sigma;
    out.n_tiles = m.nnz() / R;
    out.row_ptr = m.row_ptr;
    out.tile_ptr.resize(static_cast<std::size_t>(out.n_tiles) + 1);
    out.bit_flag.assign(static_cast<std::size_t>(out.n_tiles) * R, 0);
    out.y_off.assign(static_cast<std::size_t>(out.n_tiles) * omega, 0);
    out.seg_off.assign(static_cast<std::size_t>(out.n_tiles) * omega, 0);
    out.col_idx.resize(static_cast<std::size_t>(m.nnz()));
    out.values.resize(static_cast<std::size_t>(m.nnz()));

    const std::vector<std::int32_t> entry_row = expand_rows(m);

    std::vector<std::int32_t> stored_rows(static_cast<std::size_t>(R));
    for (index_t t = 0; t < out.n_tiles; ++t) {
        const std::size_t base = static_cast<std::size_t>(t) * R;
        for (int p = 0; p < R; ++p) {
            const int lane = p / sigma;
            const int i = p % sigma;
            const std::size_t k = base + static_cast<std::size_t>(i) * omega + lane;
            out.col_idx[base + p] = m.col_idx[k];
            out.values[base + p] = m.values[k];
            stored_rows[static_cast<std::size_t>(p)] = entry_row[k];
        }
        out.tile_ptr[static_cast<std::size_t>(t)] = entry_row[base];

        for (int p = 0; p < R; ++p) {
            bool first = true;
            for (int q = 0; q < p; ++q) {
                if (stored_rows[static_cast<std::size_t>(q)] ==
                    stored_rows[static_cast<std::size_t>(p)]) {
                    first = false;
                    break;
                }
            }
            out.bit_flag[base + p] = first ? 1 : 0;
        }
        out.bit_flag[base] = 1;  // tile's first stored bit is always set

        std::int32_t seen = 0;
        for (int j = 0; j < omega; ++j) {
            const bool lane_opens_row = out.bit_flag[base + static_cast<std::size_t>(j) * sigma] != 0;
            out.y_off[static_cast<std::size_t>(t) * omega + j] = seen - (lane_opens_row ? 0 : 1);
            for (int i = 0; i < sigma; ++i)
                seen += out.bit_flag[base + static_cast<std::size_t>(j) * sigma + i];
        }
    }
    out.tile_ptr[static_cast<std::size_t>(out.n_tiles)] = static_cast<std::int32_t>(m.n_rows);

    // Tail: leftover entries kept in CSR order.
    const index_t tail_begin = out.n_tiles * R;
    out.tail_rows.reserve(static_cast<std::size_t>(m.nnz() - tail_begin));
    for (index_t k = tail_begin; k < m.nnz(); ++k) {
        out.col_idx[static_cast<std::size_t>(k)] = m.col_idx[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = m.values[static_cast<std::size_t>(k)];
        out.tail_rows.push_back(entry_row[static_cast<std::size_t>(k)]);
    }
    return out;
}

CooMatrix csr5_to_coo(const Csr5Matrix& m) {
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.entries.resize(static_cast<std::size_t>(m.nnz()));

    const int R = m.tile_entries();
    // Walk rows alongside the CSR-order entry index to label tiled entries.
    index_t r = 0;
    for (index_t k = 0; k < m.tiled_nnz(); ++k) {
        while (k >= m.row_ptr[static_cast<std::size_t>(r) + 1]) ++r;
        const index_t t = k / R;
        const int l = static_cast<int>(k - t * R);
        const int i = l / m.omega;
        const int lane = l % m.omega;
        const std::size_t stored = static_cast<std::size_t>(t) * R +
                                   static_cast<std::size_t>(lane) * m.sigma + i;
        out.entries[static_cast<std::size_t>(k)] = {r, m.col_idx[stored], m.values[stored]};
    }
    for (index_t i = 0; i < m.tail_nnz(); ++i) {
        const std::size_t k = static_cast<std::size_t>(m.tiled_nnz() + i);
        out.entries[k] = {m.tail_rows[static_cast<std::size_t>(i)], m.col_idx[k], m.values[k]};
    }
    return out;
}

} // namespace spmvlab
