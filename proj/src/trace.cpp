#include "spmvlab/trace.hpp"

namespace spmvlab {

namespace {

std::uint64_t align_up(std::uint64_t v, std::uint64_t a) { return (v + a - 1) / a * a; }

struct Layout {
    std::uint64_t cursor = 0;
    std::uint64_t line = 64;

    std::uint64_t place(std::uint64_t bytes) {
        const std::uint64_t base = align_up(cursor, line);
        cursor = base + bytes;
        return base;
    }
};

} // namespace

AddressMap AddressMap::for_csr(const CsrMatrix& m, int line_size) {
    Layout l{0, static_cast<std::uint64_t>(line_size)};
    AddressMap a;
    a.row_ptr = l.place(static_cast<std::uint64_t>(m.row_ptr.size()) * 8);
    a.col_idx = l.place(static_cast<std::uint64_t>(m.nnz()) * 4);
    a.values = l.place(static_cast<std::uint64_t>(m.nnz()) * 8);
    a.x = l.place(static_cast<std::uint64_t>(m.n_cols) * 8);
    a.y = l.place(static_cast<std::uint64_t>(m.n_rows) * 8);
    return a;
}

AddressMap AddressMap::for_csr5(const Csr5Matrix& m, int line_size) {
    Layout l{0, static_cast<std::uint64_t>(line_size)};
    AddressMap a;
    a.row_ptr = l.place(static_cast<std::uint64_t>(m.row_ptr.size()) * 8);
    a.col_idx = l.place(static_cast<std::uint64_t>(m.nnz()) * 4);
    a.values = l.place(static_cast<std::uint64_t>(m.nnz()) * 8);
    a.x = l.place(static_cast<std::uint64_t>(m.n_cols) * 8);
    a.y = l.place(static_cast<std::uint64_t>(m.n_rows) * 8);
    const std::uint64_t words_per_tile =
        (static_cast<std::uint64_t>(m.tile_entries()) + 63) / 64;
    a.tile_ptr = l.place(static_cast<std::uint64_t>(m.tile_ptr.size()) * 4);
    a.bit_words = l.place(static_cast<std::uint64_t>(m.n_tiles) * words_per_tile * 8);
    a.y_off = l.place(static_cast<std::uint64_t>(m.y_off.size()) * 2);
    a.tail_rows = l.place(static_cast<std::uint64_t>(m.tail_nnz()) * 4);
    return a;
}

std::vector<ThreadTrace> trace_spmv_csr(const CsrMatrix& m, const PartitionPlan& plan,
                                        int line_size) {
    if (plan.scheme == Scheme::Csr5Tiles)
        throw ValidationError("CSR trace needs a row partition");
    const AddressMap a = AddressMap::for_csr(m, line_size);

    std::vector<ThreadTrace> traces(static_cast<std::size_t>(plan.n_threads));
    for (int t = 0; t < plan.n_threads; ++t) {
        ThreadTrace& tr = traces[static_cast<std::size_t>(t)];
        const ThreadRange& range = plan.ranges[static_cast<std::size_t>(t)];
        for (index_t r = range.begin; r < range.end; ++r) {
            tr.push_back({a.row_ptr + static_cast<std::uint64_t>(r) * 8, 8, false});
            tr.push_back({a.row_ptr + static_cast<std::uint64_t>(r + 1) * 8, 8, false});
            for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)];
                 k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
                const std::uint64_t ku = static_cast<std::uint64_t>(k);
                tr.push_back({a.col_idx + ku * 4, 4, false});
                tr.push_back({a.values + ku * 8, 8, false});
                tr.push_back({a.x + static_cast<std::uint64_t>(
                                        m.col_idx[static_cast<std::size_t>(k)]) *
                                        8,
                              8, false});
            }
            tr.push_back({a.y + static_cast<std::uint64_t>(r) * 8, 8, true});
        }
    }
    return traces;
}

std::vector<ThreadTrace> trace_spmv_csr5(const Csr5Matrix& m, const PartitionPlan& plan,
                                         int line_size) {
    if (plan.scheme != Scheme::Csr5Tiles)
        throw ValidationError("CSR5 trace needs a tile partition");
    const AddressMap a = AddressMap::for_csr5(m, line_size);
    const int R = m.tile_entries();
    const std::uint64_t words_per_tile = (static_cast<std::uint64_t>(R) + 63) / 64;

    std::vector<ThreadTrace> traces(static_cast<std::size_t>(plan.n_threads));
    std::vector<std::int32_t> csr_rows(static_cast<std::size_t>(R));
    std::vector<std::int32_t> flushed;  // rows flushed by the tile, in open order

    for (int t = 0; t < plan.n_threads; ++t) {
        ThreadTrace& tr = traces[static_cast<std::size_t>(t)];
        const ThreadRange& range = plan.ranges[static_cast<std::size_t>(t)];

        for (index_t tile = range.begin; tile < range.end; ++tile) {
            const std::size_t base = static_cast<std::size_t>(tile) * R;
            tr.push_back({a.tile_ptr + static_cast<std::uint64_t>(tile) * 4, 4, false});
            tr.push_back({a.tile_ptr + static_cast<std::uint64_t>(tile + 1) * 4, 4, false});
            for (std::uint64_t w = 0; w < words_per_tile; ++w)
                tr.push_back(
                    {a.bit_words + (static_cast<std::uint64_t>(tile) * words_per_tile + w) * 8,
                     8, false});

            // Row recovery walk: one row_ptr read per row the cursor rests on.
            index_t r = m.tile_ptr[static_cast<std::size_t>(tile)];
            tr.push_back({a.row_ptr + static_cast<std::uint64_t>(r + 1) * 8, 8, false});
            for (int l = 0; l < R; ++l) {
                const index_t k = static_cast<index_t>(base) + l;
                while (k >= m.row_ptr[static_cast<std::size_t>(r) + 1]) {
                    ++r;
                    tr.push_back(
                        {a.row_ptr + static_cast<std::uint64_t>(r + 1) * 8, 8, false});
                }
                csr_rows[static_cast<std::size_t>(l)] = static_cast<std::int32_t>(r);
            }

            flushed.clear();
            for (int p = 0; p < R; ++p) {
                const int lane = p / m.sigma;
                const int i = p % m.sigma;
                const std::int32_t row =
                    csr_rows[static_cast<std::size_t>(i) * m.omega + lane];
                const std::uint64_t s = static_cast<std::uint64_t>(base) + p;
                tr.push_back({a.col_idx + s * 4, 4, false});
                tr.push_back({a.values + s * 8, 8, false});
                tr.push_back(
                    {a.x + static_cast<std::uint64_t>(m.col_idx[static_cast<std::size_t>(s)]) * 8,
                     8, false});
                if (m.bit_flag[static_cast<std::size_t>(s)]) flushed.push_back(row);
            }
            for (const std::int32_t row : flushed)
                tr.push_back({a.y + static_cast<std::uint64_t>(row) * 8, 8, true});
        }

        // Tail entries run on the last thread.
        if (t == plan.n_threads - 1 && m.tail_nnz() > 0) {
            index_t i = 0;
            while (i < m.tail_nnz()) {
                const std::int32_t row = m.tail_rows[static_cast<std::size_t>(i)];
                for (; i < m.tail_nnz() && m.tail_rows[static_cast<std::size_t>(i)] == row;
                     ++i) {
                    const std::uint64_t k = static_cast<std::uint64_t>(m.tiled_nnz() + i);
                    tr.push_back({a.tail_rows + static_cast<std::uint64_t>(i) * 4, 4, false});
                    tr.push_back({a.col_idx + k * 4, 4, false});
                    tr.push_back({a.values + k * 8, 8, false});
                    tr.push_back({a.x + static_cast<std::uint64_t>(
                                            m.col_idx[static_cast<std::size_t>(k)]) *
                                            8,
                                  8, false});
                }
                tr.push_back({a.y + static_cast<std::uint64_t>(row) * 8, 8, true});
            }
        }
    }
    return traces;
}

} // namespace spmvlab
