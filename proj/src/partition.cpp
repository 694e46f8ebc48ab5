#include "spmvlab/partition.hpp"

#include <algorithm>
#include <limits>

namespace spmvlab {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::RowsStatic: return "rows-static";
        case Scheme::NnzBalanced: return "nnz-balanced";
        case Scheme::Csr5Tiles: return "csr5-tiles";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "rows-static") return Scheme::RowsStatic;
    if (s == "nnz-balanced") return Scheme::NnzBalanced;
    if (s == "csr5-tiles") return Scheme::Csr5Tiles;
    throw ValidationError("unknown partition scheme: " + s);
}

double PartitionPlan::max_share() const {
    if (total_nnz == 0) throw ValidationError("share undefined for an empty matrix");
    index_t m = 0;
    for (const ThreadRange& r : ranges) m = std::max(m, r.nnz);
    return static_cast<double>(m) / static_cast<double>(total_nnz);
}

namespace {

void check_threads(int n_threads) {
    if (n_threads < 1) throw ValidationError("thread count must be at least 1");
}

} // namespace

PartitionPlan partition_rows_static(const CsrMatrix& m, int n_threads) {
    check_threads(n_threads);
    PartitionPlan plan;
    plan.scheme = Scheme::RowsStatic;
    plan.n_threads = n_threads;
    plan.total_nnz = m.nnz();

    const index_t chunk = (m.n_rows + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        ThreadRange r;
        r.begin = std::min<index_t>(static_cast<index_t>(t) * chunk, m.n_rows);
        r.end = std::min<index_t>(r.begin + chunk, m.n_rows);
        r.nnz = m.row_ptr[static_cast<std::size_t>(r.end)] -
                m.row_ptr[static_cast<std::size_t>(r.begin)];
        plan.ranges.push_back(r);
    }
    return plan;
}

PartitionPlan partition_nnz_balanced(const CsrMatrix& m, int n_threads) {
    check_threads(n_threads);

    // Feasibility of a bottleneck C: greedy chunks, counting how many are
    // needed when no chunk may exceed C nonzeros.
    auto chunks_needed = [&](index_t cap) {
        index_t chunks = 0;
        index_t start_nnz = 0;
        index_t r = 0;
        while (r < m.n_rows) {
            if (m.row_ptr[static_cast<std::size_t>(r) + 1] - start_nnz > cap) {
                if (m.row_ptr[static_cast<std::size_t>(r) + 1] -
                        m.row_ptr[static_cast<std::size_t>(r)] >
                    cap)
                    return std::numeric_limits<index_t>::max();  // single row too big
                ++chunks;
                start_nnz = m.row_ptr[static_cast<std::size_t>(r)];
            }
            ++r;
        }
        return chunks + 1;
    };

    index_t max_row = 0;
    for (index_t r = 0; r < m.n_rows; ++r) max_row = std::max(max_row, m.row_nnz(r));

    index_t lo = std::max<index_t>(max_row, (m.nnz() + n_threads - 1) / n_threads);
    index_t hi = std::max<index_t>(lo, m.nnz());
    while (lo < hi) {
        const index_t mid = lo + (hi - lo) / 2;
        if (chunks_needed(mid) <= n_threads)
            hi = mid;
        else
            lo = mid + 1;
    }

    PartitionPlan plan;
    plan.scheme = Scheme::NnzBalanced;
    plan.n_threads = n_threads;
    plan.total_nnz = m.nnz();

    index_t r = 0;
    for (int t = 0; t < n_threads; ++t) {
        ThreadRange range;
        range.begin = r;
        const index_t start_nnz = m.row_ptr[static_cast<std::size_t>(r)];
        while (r < m.n_rows &&
               m.row_ptr[static_cast<std::size_t>(r) + 1] - start_nnz <= lo)
            ++r;
        // Remaining threads must still be able to take the leftover rows.
        range.end = r;
        range.nnz = m.row_ptr[static_cast<std::size_t>(range.end)] - start_nnz;
        plan.ranges.push_back(range);
    }
    // Any leftover rows (cannot happen when the bound is feasible) fold
    // into the last thread to keep the cover invariant.
    if (r < m.n_rows) {
        plan.ranges.back().end = m.n_rows;
        plan.ranges.back().nnz = m.nnz() - m.row_ptr[static_cast<std::size_t>(
                                               plan.ranges.back().begin)];
    }
    return plan;
}

PartitionPlan partition_csr5_tiles(const Csr5Matrix& m, int n_threads) {
    check_threads(n_threads);
    PartitionPlan plan;
    plan.scheme = Scheme::Csr5Tiles;
    plan.n_threads = n_threads;
    plan.total_nnz = m.nnz();

    const index_t chunk = (m.n_tiles + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        ThreadRange r;
        r.begin = std::min<index_t>(static_cast<index_t>(t) * chunk, m.n_tiles);
        r.end = std::min<index_t>(r.begin + chunk, m.n_tiles);
        r.nnz = (r.end - r.begin) * m.tile_entries();
        plan.ranges.push_back(r);
    }
    plan.ranges.back().nnz += m.tail_nnz();
    return plan;
}

} // namespace spmvlab
