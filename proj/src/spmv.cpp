#include "spmvlab/spmv.hpp"

#include <string>

namespace spmvlab {

void spmv_csr_rows(const CsrMatrix& m, const DenseVector& x, DenseVector& y, index_t row_begin,
                   index_t row_end) {
    for (index_t r = row_begin; r < row_end; ++r) {
        double acc = 0.0;
        for (std::int64_t k = m.row_ptr[static_cast<std::size_t>(r)];
             k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
            acc += m.values[static_cast<std::size_t>(k)] *
                   x[static_cast<std::size_t>(m.col_idx[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(r)] = acc;
    }
}

DenseVector spmv_csr(const CsrMatrix& m, const DenseVector& x) {
    if (static_cast<index_t>(x.size()) != m.n_cols)
        throw ValidationError("vector length " + std::to_string(x.size()) +
                              " does not match column count " + std::to_string(m.n_cols));
    DenseVector y(static_cast<std::size_t>(m.n_rows), 0.0);
    spmv_csr_rows(m, x, y, 0, m.n_rows);
    return y;
}

DenseVector spmv_csr5(const Csr5Matrix& m, const DenseVector& x) {
    if (static_cast<index_t>(x.size()) != m.n_cols)
        throw ValidationError("vector length " + std::to_string(x.size()) +
                              " does not match column count " + std::to_string(m.n_cols));
    DenseVector y(static_cast<std::size_t>(m.n_rows), 0.0);
    auto add = [&y](std::int32_t row, double sum) { y[static_cast<std::size_t>(row)] += sum; };
    csr5_tile_range(m, x, 0, m.n_tiles, add);
    csr5_tail(m, x, add);
    return y;
}

} // namespace spmvlab
