#include "spmvlab/matrix.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace spmvlab {

namespace {

void check_coo(const CooMatrix& m) {
    if (m.n_rows < 0 || m.n_cols < 0)
        throw ValidationError("matrix dimensions must be nonnegative");
    if (m.n_cols > std::numeric_limits<std::int32_t>::max())
        throw ValidationError("column count exceeds 32-bit index range");
    for (const CooEntry& e : m.entries) {
        if (e.row < 0 || e.row >= m.n_rows)
            throw ValidationError("row index " + std::to_string(e.row) + " out of range [0, " +
                                  std::to_string(m.n_rows) + ")");
        if (e.col < 0 || e.col >= m.n_cols)
            throw ValidationError("column index " + std::to_string(e.col) + " out of range [0, " +
                                  std::to_string(m.n_cols) + ")");
    }
}

} // namespace

CsrMatrix coo_to_csr(const CooMatrix& m) {
    check_coo(m);

    std::vector<CooEntry> sorted = m.entries;
    std::sort(sorted.begin(), sorted.end(), [](const CooEntry& a, const CooEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    CsrMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.row_ptr.assign(static_cast<std::size_t>(m.n_rows) + 1, 0);
    out.col_idx.reserve(sorted.size());
    out.values.reserve(sorted.size());

    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        double sum = sorted[i].value;
        while (j < sorted.size() && sorted[j].row == sorted[i].row &&
               sorted[j].col == sorted[i].col) {
            sum += sorted[j].value;  // duplicates are summed
            ++j;
        }
        out.col_idx.push_back(static_cast<std::int32_t>(sorted[i].col));
        out.values.push_back(sum);
        out.row_ptr[static_cast<std::size_t>(sorted[i].row) + 1]++;
        i = j;
    }
    for (index_t r = 0; r < m.n_rows; ++r)
        out.row_ptr[static_cast<std::size_t>(r) + 1] += out.row_ptr[static_cast<std::size_t>(r)];
    return out;
}

CooMatrix csr_to_coo(const CsrMatrix& m) {
    validate_csr(m);
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.entries.reserve(static_cast<std::size_t>(m.nnz()));
    for (index_t r = 0; r < m.n_rows; ++r)
        for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)];
             k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
            out.entries.push_back({r, m.col_idx[static_cast<std::size_t>(k)],
                                   m.values[static_cast<std::size_t>(k)]});
    return out;
}

void validate_csr(const CsrMatrix& m) {
    if (m.n_rows < 0 || m.n_cols < 0)
        throw ValidationError("matrix dimensions must be nonnegative");
    if (m.row_ptr.size() != static_cast<std::size_t>(m.n_rows) + 1)
        throw ValidationError("row_ptr length must be n_rows + 1");
    if (m.row_ptr.front() != 0)
        throw ValidationError("row_ptr[0] must be 0");
    if (m.row_ptr.back() != m.nnz())
        throw ValidationError("row_ptr[n_rows] must equal nnz");
    if (m.col_idx.size() != m.values.size())
        throw ValidationError("col_idx and values must have equal length");
    for (index_t r = 0; r < m.n_rows; ++r) {
        const std::int64_t lo = m.row_ptr[static_cast<std::size_t>(r)];
        const std::int64_t hi = m.row_ptr[static_cast<std::size_t>(r) + 1];
        if (hi < lo) throw ValidationError("row_ptr must be nondecreasing");
        for (std::int64_t k = lo; k < hi; ++k) {
            const std::int32_t c = m.col_idx[static_cast<std::size_t>(k)];
            if (c < 0 || c >= m.n_cols)
                throw ValidationError("column index out of range in row " + std::to_string(r));
            if (k > lo && c <= m.col_idx[static_cast<std::size_t>(k) - 1])
                throw ValidationError("column indices must be strictly increasing in row " +
                                      std::to_string(r));
        }
    }
}

MatrixStats matrix_stats(const CsrMatrix& m) {
    validate_csr(m);
    if (m.n_rows == 0)
        throw ValidationError("matrix statistics are undefined for a 0-row matrix");

    MatrixStats s;
    s.n_rows = m.n_rows;
    s.nnz = m.nnz();
    s.nnz_avg = static_cast<double>(s.nnz) / static_cast<double>(s.n_rows);

    double ss = 0.0;
    for (index_t r = 0; r < m.n_rows; ++r) {
        const index_t k = m.row_nnz(r);
        s.nnz_max = std::max(s.nnz_max, k);
        const double d = static_cast<double>(k) - s.nnz_avg;
        ss += d * d;
    }
    s.nnz_var = ss / static_cast<double>(s.n_rows);
    return s;
}

} // namespace spmvlab
