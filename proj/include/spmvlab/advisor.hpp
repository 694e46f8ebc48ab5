#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spmvlab/cache_sim.hpp"
#include "spmvlab/features.hpp"
#include "spmvlab/matrix.hpp"

namespace spmvlab {

// Rule thresholds. Only the job_var cutoff (0.45) is a reported value;
// the others are calibration points inferred from the reference vectors
// and stay configurable.
struct AdvisorThresholds {
    double job_var_min = 0.45;     // R1: switch to the tiled format
    double l2_change_min = 0.02;   // R2: L2 miss-rate growth worth reacting to
    double nnz_avg_min = 8.0;      // R2 guard: sparse-enough rows don't contend
    double nnz_var_min = 10.0;     // R3: row irregularity worth reordering
};

struct Evidence {
    std::string feature;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // ">=", ">" ...
};

struct Recommendation {
    std::string rule_id;  // R1-csr5 | R2-private-l2 | R3-reorder
    std::string action;
    std::vector<Evidence> evidence;
    std::string confidence;  // strong | weak
};

// Fires the rules against a feature vector:
//   R1 iff job_var >= job_var_min
//   R2 iff L2_DCMR_change > l2_change_min and nnz_avg >= nnz_avg_min
//   R3 iff nnz_var >= nnz_var_min and R1 did not fire
// Output order is R1, R2, R3; an empty list means "no action".
std::vector<Recommendation> advise(const FeatureVector& fv,
                                   const AdvisorThresholds& thresholds = {});

struct EvaluationReport {
    std::string rule_id;
    std::string baseline;
    std::string optimized;
    double job_var_before = 0.0;
    double job_var_after = 0.0;
    std::uint64_t l2_dcm_before = 0;
    std::uint64_t l2_dcm_after = 0;
    double speedup_before = 0.0;
    double speedup_after = 0.0;
};

// Runs the baseline and the recommended configuration in simulation mode
// and reports balance, total L2 misses and modeled speedup side by side.
// reorder_window <= 0 picks the default (a quarter of the L2 capacity in
// x elements).
EvaluationReport evaluate_recommendation(const CsrMatrix& m, const std::string& rule_id,
                                         const Topology& topo, int n_threads = 4,
                                         int omega = 4, int sigma = 16,
                                         index_t reorder_window = 0);

} // namespace spmvlab
