#include "spmvlab/advisor.hpp"

#include <cmath>

#include "spmvlab/csr5.hpp"
#include "spmvlab/pipeline.hpp"
#include "spmvlab/synth.hpp"

namespace spmvlab {

namespace {

double required(const FeatureVector& fv, const std::string& name) {
    const std::optional<double> v = fv.get(name);
    if (!v) throw ValidationError("advisor needs feature '" + name + "'");
    return *v;
}

// A rule is strong when every evidence value clears its threshold by at
// least 20% of the threshold's magnitude.
std::string confidence_of(const std::vector<Evidence>& evidence) {
    for (const Evidence& e : evidence) {
        const double margin = std::fabs(e.threshold) * 0.2;
        if (e.relation == ">=" || e.relation == ">") {
            if (e.value < e.threshold + margin) return "weak";
        }
    }
    return "strong";
}

} // namespace

std::vector<Recommendation> advise(const FeatureVector& fv, const AdvisorThresholds& th) {
    std::vector<Recommendation> recs;

    const double job_var = required(fv, "job_var");
    const bool r1 = job_var >= th.job_var_min;
    if (r1) {
        Recommendation r;
        r.rule_id = "R1-csr5";
        r.action = "convert to the tiled (csr5) format so nonzeros split evenly across threads";
        r.evidence.push_back({"job_var", job_var, th.job_var_min, ">="});
        r.confidence = confidence_of(r.evidence);
        recs.push_back(std::move(r));
    }

    const double change = required(fv, "L2_DCMR_change");
    const double nnz_avg = required(fv, "nnz_avg");
    if (change > th.l2_change_min && nnz_avg >= th.nnz_avg_min) {
        Recommendation r;
        r.rule_id = "R2-private-l2";
        r.action = "scatter threads across core-groups so each one owns a full L2 cache";
        r.evidence.push_back({"L2_DCMR_change", change, th.l2_change_min, ">"});
        r.evidence.push_back({"nnz_avg", nnz_avg, th.nnz_avg_min, ">="});
        r.confidence = confidence_of(r.evidence);
        recs.push_back(std::move(r));
    }

    const double nnz_var = required(fv, "nnz_var");
    if (nnz_var >= th.nnz_var_min && !r1) {
        Recommendation r;
        r.rule_id = "R3-reorder";
        r.action = "reorder rows by column locality so nearby rows reuse the same stretch of x";
        r.evidence.push_back({"nnz_var", nnz_var, th.nnz_var_min, ">="});
        r.confidence = confidence_of(r.evidence);
        recs.push_back(std::move(r));
    }
    return recs;
}

EvaluationReport evaluate_recommendation(const CsrMatrix& m, const std::string& rule_id,
                                         const Topology& topo, int n_threads, int omega,
                                         int sigma, index_t reorder_window) {
    EvaluationReport rep;
    rep.rule_id = rule_id;

    const Placement compact = Placement::compact();
    const PartitionPlan base_plan = partition_rows_static(m, n_threads);
    const SimResult base_sim = simulate_spmv(m, nullptr, Format::Csr, n_threads, compact, topo);
    rep.baseline = "csr rows-static compact";
    rep.job_var_before = base_plan.max_share();
    rep.l2_dcm_before = base_sim.total.l2_dcm;
    rep.speedup_before =
        modeled_speedup(m, nullptr, Format::Csr, topo, compact, n_threads);

    if (rule_id == "R1-csr5") {
        const Csr5Matrix c5 = build_csr5(m, omega, sigma);
        const PartitionPlan plan = partition_csr5_tiles(c5, n_threads);
        const SimResult sim = simulate_spmv(m, &c5, Format::Csr5, n_threads, compact, topo);
        rep.optimized = "csr5 tiles compact";
        rep.job_var_after = plan.max_share();
        rep.l2_dcm_after = sim.total.l2_dcm;
        rep.speedup_after = modeled_speedup(m, &c5, Format::Csr5, topo, compact, n_threads);
    } else if (rule_id == "R2-private-l2") {
        const Placement scatter = Placement::scatter();
        const SimResult sim = simulate_spmv(m, nullptr, Format::Csr, n_threads, scatter, topo);
        rep.optimized = "csr rows-static scatter";
        rep.job_var_after = rep.job_var_before;
        rep.l2_dcm_after = sim.total.l2_dcm;
        rep.speedup_after = modeled_speedup(m, nullptr, Format::Csr, topo, scatter, n_threads);
    } else if (rule_id == "R3-reorder") {
        if (reorder_window <= 0)
            reorder_window = std::max<index_t>(1, topo.l2.capacity_bytes / 8 / 4);
        const auto [reordered, perm] = locality_reorder(m, reorder_window);
        const SimResult sim =
            simulate_spmv(reordered, nullptr, Format::Csr, n_threads, compact, topo);
        rep.optimized = "csr rows-static compact, reordered";
        rep.job_var_after = partition_rows_static(reordered, n_threads).max_share();
        rep.l2_dcm_after = sim.total.l2_dcm;
        rep.speedup_after =
            modeled_speedup(reordered, nullptr, Format::Csr, topo, compact, n_threads);
    } else {
        throw ValidationError("unknown rule id: " + rule_id);
    }
    return rep;
}

} // namespace spmvlab
