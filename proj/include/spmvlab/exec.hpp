#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spmvlab/csr5.hpp"
#include "spmvlab/matrix.hpp"
#include "spmvlab/partition.hpp"
#include "spmvlab/placement.hpp"

namespace spmvlab {

enum class Format { Csr, Csr5 };

std::string to_string(Format f);
Format format_from_string(const std::string& s);

struct TimingConfig {
    int min_reps = 5;
    int max_reps = 1000;
    double confidence = 0.95;
    double rel_ci_limit = 0.05;  // (upper - lower) / mean must drop below this
    double tick_seconds = 1e-9;  // timer resolution, for the coarse-timer warning
    // Injectable time source (seconds); defaults to the steady clock.
    std::function<double()> clock;
};

struct RunRecord {
    std::string matrix;
    std::string format;
    int n_threads = 1;
    std::string placement;
    int repetitions = 0;
    std::vector<double> times;  // per-repetition wall seconds
    double mean_time = 0.0;
    double gflops = 0.0;  // 2*nnz / mean_time / 1e9
    std::optional<double> speedup;
    bool timer_warning = false;    // mean below 100 timer ticks
    bool affinity_applied = false; // thread pinning took effect on this host
};

// Executes the partition with n_threads workers synchronized by a barrier
// before and after every repetition; wall time is measured across the
// barrier pair. Repeats until ci_gap_ok holds, within
// [min_reps, max_reps]. Core affinity is applied best-effort; when the
// host cannot honor it the placement is recorded as advisory.
// baseline_mean_seconds, when present, is the recorded 1-thread mean used
// for the speedup; a 1-thread run without a baseline is its own baseline.
RunRecord run_benchmark(const std::string& matrix_name, const CsrMatrix& csr,
                        const Csr5Matrix* csr5, Format format, int n_threads,
                        const Placement& placement, const TimingConfig& timing,
                        std::optional<double> baseline_mean_seconds = std::nullopt,
                        Scheme csr_scheme = Scheme::RowsStatic);

// One multi-threaded evaluation of y = Ax under the plan; deterministic
// given the plan. For CSR the result is bitwise identical to the
// sequential kernel. Used by run_benchmark and exposed for tests.
DenseVector spmv_parallel(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                          const PartitionPlan& plan, const DenseVector& x);

} // namespace spmvlab
