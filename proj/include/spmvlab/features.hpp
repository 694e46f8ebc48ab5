#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spmvlab/cache_sim.hpp"
#include "spmvlab/matrix.hpp"
#include "spmvlab/partition.hpp"

namespace spmvlab {

// One (matrix, execution) description: four matrix-structure features,
// raw cache/instruction counters, and the derived ratios. TOT_INS,
// TOT_CYC and IPC exist only when supplied by a counter import; the
// simulator has no instruction or cycle model.
struct FeatureVector {
    double n_rows = 0;
    double nnz_max = 0;
    double nnz_avg = 0;
    double nnz_var = 0;
    double L1_DCA = 0;
    double L1_DCM = 0;
    double L2_DCA = 0;
    double L2_DCM = 0;
    double FR_INS = 0;
    std::optional<double> TOT_INS;
    std::optional<double> TOT_CYC;
    double L1_DCMR = 0;
    double L2_DCMR = 0;  // slowest thread's rate at the measured thread count
    std::optional<double> IPC;
    double L2_DCMR_change = 0;  // slowest-thread rate minus the 1-thread rate
    double job_var = 0;         // largest per-thread share of nonzeros

    // All feature names, in a fixed order used by CSV columns and models.
    static const std::vector<std::string>& names();
    std::optional<double> get(const std::string& name) const;
    void set(const std::string& name, double value);
};

struct Sample {
    std::string matrix;
    FeatureVector features;
    double speedup = 0.0;              // label; must be finite and positive
    std::string label_source = "modeled";  // "measured" or "modeled"
};

// Largest per-thread share of total nonzeros; errors when nnz == 0.
double compute_job_var(const PartitionPlan& plan);

// L2 miss-rate change from the single-thread run to the slowest thread of
// the multi-thread run. May be negative. Errors on zero L2 accesses.
double compute_l2_dcmr_change(const SimResult& sim1, const SimResult& simT);

// Hardware counters imported from CSV (header
// "matrix,threads,thread_id,event,value"); events use the raw counter
// names above. Stand-in for PMU collection on real silicon.
class ImportedCounters {
public:
    static ImportedCounters from_csv(const std::string& path);

    bool has(const std::string& matrix, int threads) const;
    // Sum of a per-thread event over threads; absent when not imported.
    std::optional<double> total(const std::string& matrix, int threads,
                                const std::string& event) const;
    // Per-thread values indexed by thread id.
    const std::map<int, double>* per_thread(const std::string& matrix, int threads,
                                            const std::string& event) const;
    bool empty() const { return data_.empty(); }

private:
    // (matrix, threads) -> event -> thread_id -> value
    std::map<std::pair<std::string, int>, std::map<std::string, std::map<int, double>>> data_;
};

enum class CounterSource { Simulation, Import };

// Assembles the feature vector. Matrix features come from matrix_stats,
// counters from the two simulation results or, when an import record
// matches (matrix, threads), from the imported values. Supplying both a
// matching import and simulation results without a precedence choice is
// an error. In simulation mode FR_INS = 2*nnz.
FeatureVector build_feature_vector(const CsrMatrix& m, const PartitionPlan& plan,
                                   const SimResult* sim1, const SimResult* simT,
                                   const std::string& matrix_name, int n_threads,
                                   const ImportedCounters* imported = nullptr,
                                   std::optional<CounterSource> precedence = std::nullopt);

// CSV round trip for samples: one column per feature plus the matrix
// name, the speedup label and its source. Optional features serialize as
// empty cells.
void write_features_csv(const std::vector<Sample>& samples, const std::string& path);
std::vector<Sample> read_features_csv(const std::string& path);

} // namespace spmvlab
