#pragma once

#include <set>
#include <vector>

#include "spmvlab/matrix.hpp"
#include "spmvlab/rng.hpp"

namespace spmvlab::testing {

// The 4x4, nnz=8 worked example used throughout.
inline CooMatrix fig1_coo() {
    CooMatrix m;
    m.n_rows = 4;
    m.n_cols = 4;
    m.entries = {{0, 1, 5.0}, {0, 2, 2.0}, {1, 0, 6.0}, {1, 2, 8.0},
                 {1, 3, 3.0}, {2, 2, 4.0}, {3, 1, 7.0}, {3, 2, 1.0}};
    return m;
}

inline CooMatrix identity_coo(index_t n) {
    CooMatrix m;
    m.n_rows = m.n_cols = n;
    for (index_t i = 0; i < n; ++i) m.entries.push_back({i, i, 1.0});
    return m;
}

// Random sparse matrix with distinct cells and nonzero values; rows go
// empty with probability empty_p.
inline CooMatrix random_coo(Rng& rng, index_t n_rows, index_t n_cols, double density,
                            double empty_p = 0.1) {
    CooMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    for (index_t r = 0; r < n_rows; ++r) {
        if (rng.uniform() < empty_p) continue;
        const index_t limit = std::max<index_t>(1, static_cast<index_t>(density * n_cols));
        const index_t k = 1 + rng.range(0, limit);
        std::set<index_t> cols;
        while (static_cast<index_t>(cols.size()) < std::min(k, n_cols))
            cols.insert(rng.range(0, n_cols));
        for (index_t c : cols) {
            double v = rng.uniform(-1.0, 1.0);
            if (v == 0.0) v = 0.5;
            m.entries.push_back({r, c, v});
        }
    }
    return m;
}

inline DenseVector random_vector(Rng& rng, index_t n) {
    DenseVector x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    return x;
}

} // namespace spmvlab::testing
