#include "spmvlab/synth.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "spmvlab/rng.hpp"

namespace spmvlab {

namespace {

// k distinct columns in [base, base + width), ascending, keyed by (seed, row).
std::vector<index_t> draw_columns(std::uint64_t seed, index_t row, index_t base, index_t width,
                                  index_t k) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(row));
    std::set<index_t> cols;
    while (static_cast<index_t>(cols.size()) < k)
        cols.insert(base + rng.range(0, width));
    return {cols.begin(), cols.end()};
}

} // namespace

CooMatrix gen_poor_locality(const LocalityPattern& p) {
    if (p.n_groups < 1 || p.rows_per_group < 1 || p.nnz_per_row < 1)
        throw ValidationError("locality pattern counts must be at least 1");
    if (p.cols < p.n_groups)
        throw ValidationError("need at least one column per group");
    const index_t window = p.cols / p.n_groups;
    if (window < p.nnz_per_row)
        throw ValidationError("group window of " + std::to_string(window) +
                              " columns cannot hold " + std::to_string(p.nnz_per_row) +
                              " distinct entries");

    CooMatrix m;
    m.n_rows = p.n_groups * p.rows_per_group;
    m.n_cols = p.cols;
    m.entries.reserve(static_cast<std::size_t>(m.n_rows * p.nnz_per_row));
    for (index_t r = 0; r < m.n_rows; ++r) {
        const index_t g = r % p.n_groups;
        for (index_t c : draw_columns(p.seed, r, g * window, window, p.nnz_per_row))
            m.entries.push_back({r, c, 1.0});
    }
    return m;
}

std::pair<CsrMatrix, RowPermutation> locality_reorder(const CsrMatrix& m, index_t window) {
    if (window < 1) throw ValidationError("reorder window must be at least 1");
    validate_csr(m);

    // Empty rows get a signature past every occupied one.
    const index_t empty_sig = m.n_cols / window + 1;
    std::vector<index_t> signature(static_cast<std::size_t>(m.n_rows));
    for (index_t r = 0; r < m.n_rows; ++r)
        signature[static_cast<std::size_t>(r)] =
            m.row_nnz(r) == 0
                ? empty_sig
                : m.col_idx[static_cast<std::size_t>(m.row_ptr[static_cast<std::size_t>(r)])] /
                      window;

    RowPermutation perm;
    perm.perm.resize(static_cast<std::size_t>(m.n_rows));
    for (index_t r = 0; r < m.n_rows; ++r) perm.perm[static_cast<std::size_t>(r)] = r;
    std::stable_sort(perm.perm.begin(), perm.perm.end(), [&](index_t a, index_t b) {
        return signature[static_cast<std::size_t>(a)] < signature[static_cast<std::size_t>(b)];
    });
    perm.inverse.resize(static_cast<std::size_t>(m.n_rows));
    for (index_t i = 0; i < m.n_rows; ++i)
        perm.inverse[static_cast<std::size_t>(perm.perm[static_cast<std::size_t>(i)])] = i;

    CsrMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.row_ptr.assign(static_cast<std::size_t>(m.n_rows) + 1, 0);
    out.col_idx.reserve(static_cast<std::size_t>(m.nnz()));
    out.values.reserve(static_cast<std::size_t>(m.nnz()));
    for (index_t i = 0; i < m.n_rows; ++i) {
        const index_t src = perm.perm[static_cast<std::size_t>(i)];
        for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(src)];
             k < m.row_ptr[static_cast<std::size_t>(src) + 1]; ++k) {
            out.col_idx.push_back(m.col_idx[static_cast<std::size_t>(k)]);
            out.values.push_back(m.values[static_cast<std::size_t>(k)]);
        }
        out.row_ptr[static_cast<std::size_t>(i) + 1] =
            static_cast<std::int64_t>(out.col_idx.size());
    }
    return {std::move(out), std::move(perm)};
}

CooMatrix gen_clustered(index_t n_rows, index_t hot_rows, index_t nnz_hot, index_t nnz_cold,
                        std::uint64_t seed) {
    if (n_rows < 1) throw ValidationError("need at least one row");
    if (hot_rows < 0 || hot_rows > n_rows)
        throw ValidationError("hot_rows must lie in [0, n_rows]");
    const index_t cols = n_rows;
    if (nnz_hot > cols || nnz_cold > cols)
        throw ValidationError("per-row nonzero count exceeds column capacity");
    if (nnz_hot < 0 || nnz_cold < 0)
        throw ValidationError("per-row nonzero counts must be nonnegative");

    // Hot band centered on the midpoint of the second quarter of the rows.
    index_t hot_begin = 3 * n_rows / 8 - hot_rows / 2;
    hot_begin = std::max<index_t>(0, std::min(hot_begin, n_rows - hot_rows));

    CooMatrix m;
    m.n_rows = n_rows;
    m.n_cols = cols;
    for (index_t r = 0; r < n_rows; ++r) {
        const bool hot = r >= hot_begin && r < hot_begin + hot_rows;
        const index_t k = hot ? nnz_hot : nnz_cold;
        if (k == 0) continue;
        for (index_t c : draw_columns(seed, r, 0, cols, k)) m.entries.push_back({r, c, 1.0});
    }
    return m;
}

} // namespace spmvlab
