// Command-line front end: ingestion, kernels, simulation, modeling and
// advice wired into reproducible batch workflows.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spmvlab/advisor.hpp"
#include "spmvlab/csr5.hpp"
#include "spmvlab/exec.hpp"
#include "spmvlab/features.hpp"
#include "spmvlab/matrix_io.hpp"
#include "spmvlab/model.hpp"
#include "spmvlab/pipeline.hpp"
#include "spmvlab/spmv.hpp"
#include "spmvlab/synth.hpp"

namespace {

using spmvlab::index_t;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kTopologyEnvVar = "SPMVLAB_TOPOLOGY";

constexpr int kExitPartial = 2;
constexpr int kExitUsage = 64;

struct NamedMatrix {
    std::string name;
    std::string path;
};

std::string stem_of(const std::string& path) {
    const std::size_t slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

// --matrix and --manifest inputs merged into one work list.
std::vector<NamedMatrix> collect_inputs(const std::vector<std::string>& matrices,
                                        const std::string& manifest) {
    std::vector<NamedMatrix> out;
    for (const std::string& path : matrices) out.push_back({stem_of(path), path});
    if (!manifest.empty())
        for (const auto& e : spmvlab::DatasetManifest::load(manifest).entries)
            out.push_back({e.name, e.path});
    return out;
}

spmvlab::Topology resolve_topology(const std::string& flag) {
    if (!flag.empty()) return spmvlab::Topology::from_file(flag);
    if (const char* env = std::getenv(kTopologyEnvVar); env != nullptr && *env != '\0')
        return spmvlab::Topology::from_file(env);
    return spmvlab::Topology{};
}

std::vector<int> parse_thread_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw spmvlab::ValidationError("empty thread list");
    return out;
}

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void open_output(std::ofstream& file, std::ostream*& out, const std::string& path) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return;
    }
    file.open(path);
    if (!file) throw spmvlab::IoError("cannot write output file: " + path);
    out = &file;
}

// ---------------------------------------------------------------------------
// convert

std::string dump_csr(const spmvlab::CsrMatrix& m) {
    std::string s = "ptr=[";
    for (std::size_t i = 0; i < m.row_ptr.size(); ++i)
        s += (i ? ", " : "") + std::to_string(m.row_ptr[i]);
    s += "]\nindices=[";
    for (std::size_t i = 0; i < m.col_idx.size(); ++i)
        s += (i ? ", " : "") + std::to_string(m.col_idx[i]);
    s += "]\ndata=[";
    for (std::size_t i = 0; i < m.values.size(); ++i)
        s += (i ? ", " : "") + fmt_value(m.values[i]);
    s += "]\n";
    return s;
}

// Tile-separated rendering; booleans drawn as T/F.
std::string dump_csr5(const spmvlab::Csr5Matrix& m) {
    const int R = m.tile_entries();
    auto tiles = [&](auto&& field, index_t per_tile, auto&& show) {
        std::string s = "[";
        for (index_t t = 0; t < m.n_tiles; ++t) {
            if (t) s += " | ";
            for (index_t i = 0; i < per_tile; ++i) {
                if (i) s += ", ";
                s += show(field[static_cast<std::size_t>(t * per_tile + i)]);
            }
        }
        return s + "]";
    };

    std::string s = "ptr=[";
    for (std::size_t i = 0; i < m.row_ptr.size(); ++i)
        s += (i ? ", " : "") + std::to_string(m.row_ptr[i]);
    s += "]\ntile_ptr=[";
    for (std::size_t i = 0; i < m.tile_ptr.size(); ++i)
        s += (i ? ", " : "") + std::to_string(m.tile_ptr[i]);
    s += "]\n";
    s += "bit_flag=" + tiles(m.bit_flag, R, [](std::uint8_t b) {
        return std::string(b ? "T" : "F");
    }) + "\n";
    s += "y_off=" + tiles(m.y_off, m.omega, [](std::int32_t v) { return std::to_string(v); }) +
         "\n";
    s += "seg_off=" +
         tiles(m.seg_off, m.omega, [](std::int32_t v) { return std::to_string(v); }) + "\n";
    s += "indices=" +
         tiles(m.col_idx, R, [](std::int32_t v) { return std::to_string(v); }) + "\n";
    s += "data=" + tiles(m.values, R, [](double v) { return fmt_value(v); }) + "\n";

    s += "tail=[";
    for (index_t i = 0; i < m.tail_nnz(); ++i) {
        if (i) s += ", ";
        const std::size_t k = static_cast<std::size_t>(m.tiled_nnz() + i);
        s += "(" + std::to_string(m.tail_rows[static_cast<std::size_t>(i)]) + "," +
             std::to_string(m.col_idx[k]) + "," + fmt_value(m.values[k]) + ")";
    }
    s += "]\n";
    return s;
}

int cmd_convert(const std::string& input, const std::string& to, int omega, int sigma,
                const std::string& out_path) {
    const spmvlab::CsrMatrix csr = spmvlab::coo_to_csr(spmvlab::read_matrix_market(input));
    std::ofstream file;
    std::ostream* out = nullptr;
    open_output(file, out, out_path);
    if (to == "csr")
        *out << dump_csr(csr);
    else
        *out << dump_csr5(spmvlab::build_csr5(csr, omega, sigma));
    return 0;
}

// ---------------------------------------------------------------------------
// bench / simulate

ordered_json sim_to_json(const spmvlab::SimResult& sim) {
    ordered_json per = ordered_json::array();
    for (const spmvlab::ThreadCounters& c : sim.per_thread)
        per.push_back({{"L1_DCA", c.l1_dca},
                       {"L1_DCM", c.l1_dcm},
                       {"L2_DCA", c.l2_dca},
                       {"L2_DCM", c.l2_dcm},
                       {"modeled_cost", c.modeled_cost}});
    return {{"per_thread", per},
            {"totals",
             {{"L1_DCA", sim.total.l1_dca},
              {"L1_DCM", sim.total.l1_dcm},
              {"L2_DCA", sim.total.l2_dca},
              {"L2_DCM", sim.total.l2_dcm},
              {"modeled_cost", sim.total.modeled_cost}}},
            {"slowest_thread", sim.slowest_thread}};
}

ordered_json run_record_to_json(const spmvlab::RunRecord& rec) {
    ordered_json j{{"matrix", rec.matrix},
                   {"format", rec.format},
                   {"threads", rec.n_threads},
                   {"placement", rec.placement},
                   {"repetitions", rec.repetitions},
                   {"times", rec.times},
                   {"mean_time", rec.mean_time},
                   {"gflops", rec.gflops},
                   {"timer_warning", rec.timer_warning},
                   {"affinity_applied", rec.affinity_applied}};
    if (rec.speedup) j["speedup"] = *rec.speedup;
    return j;
}

struct BenchOptions {
    std::vector<std::string> matrices;
    std::string manifest;
    std::string format = "csr";
    std::string threads = "1,2,3,4";
    std::string placement = "compact";
    std::string scheme = "rows-static";
    std::string mode = "measure";
    std::string topology;
    std::string out;
    int omega = spmvlab::kDefaultOmega;
    int sigma = spmvlab::kDefaultSigma;
    int min_reps = 5;
    int max_reps = 1000;
};

int cmd_bench(const BenchOptions& opt) {
    const std::vector<NamedMatrix> inputs = collect_inputs(opt.matrices, opt.manifest);
    const spmvlab::Format format = spmvlab::format_from_string(opt.format);
    const spmvlab::Placement placement = spmvlab::placement_from_string(opt.placement);
    const spmvlab::Scheme scheme = spmvlab::scheme_from_string(opt.scheme);
    const std::vector<int> thread_counts = parse_thread_list(opt.threads);
    const spmvlab::Topology topo = resolve_topology(opt.topology);

    std::ofstream file;
    std::ostream* out = nullptr;
    open_output(file, out, opt.out);

    bool any_failed = false;
    for (const NamedMatrix& input : inputs) {
        try {
            const spmvlab::CsrMatrix csr =
                spmvlab::coo_to_csr(spmvlab::read_matrix_market(input.path));
            std::optional<spmvlab::Csr5Matrix> csr5;
            if (format == spmvlab::Format::Csr5)
                csr5 = spmvlab::build_csr5(csr, opt.omega, opt.sigma);
            const spmvlab::Csr5Matrix* c5 = csr5 ? &*csr5 : nullptr;

            std::optional<double> baseline;
            for (const int T : thread_counts) {
                if (opt.mode == "simulate") {
                    const spmvlab::SimResult sim =
                        spmvlab::simulate_spmv(csr, c5, format, T, placement, topo, scheme);
                    ordered_json j{{"matrix", input.name},
                                   {"format", opt.format},
                                   {"threads", T},
                                   {"placement", placement.label()},
                                   {"mode", "simulate"}};
                    j.update(sim_to_json(sim));
                    j["modeled_speedup"] =
                        spmvlab::modeled_speedup(csr, c5, format, topo, placement, T, scheme);
                    *out << j.dump() << "\n";
                } else {
                    spmvlab::TimingConfig timing;
                    timing.min_reps = opt.min_reps;
                    timing.max_reps = opt.max_reps;
                    const spmvlab::RunRecord rec = spmvlab::run_benchmark(
                        input.name, csr, c5, format, T, placement, timing, baseline, scheme);
                    if (T == 1 && !baseline) baseline = rec.mean_time;
                    *out << run_record_to_json(rec).dump() << "\n";
                }
            }
        } catch (const std::exception& e) {
            any_failed = true;
            *out << ordered_json{{"matrix", input.name}, {"error", e.what()}}.dump() << "\n";
        }
    }
    return any_failed ? kExitPartial : 0;
}

int cmd_simulate(const std::string& matrix, const std::string& format_s, int threads,
                 const std::string& placement_s, const std::string& scheme_s,
                 const std::string& topology, int omega, int sigma, const std::string& out_path) {
    const spmvlab::CsrMatrix csr = spmvlab::coo_to_csr(spmvlab::read_matrix_market(matrix));
    const spmvlab::Format format = spmvlab::format_from_string(format_s);
    std::optional<spmvlab::Csr5Matrix> csr5;
    if (format == spmvlab::Format::Csr5) csr5 = spmvlab::build_csr5(csr, omega, sigma);
    const spmvlab::Csr5Matrix* c5 = csr5 ? &*csr5 : nullptr;
    const spmvlab::Placement placement = spmvlab::placement_from_string(placement_s);
    const spmvlab::Scheme scheme = spmvlab::scheme_from_string(scheme_s);
    const spmvlab::Topology topo = resolve_topology(topology);

    const spmvlab::SimResult sim =
        spmvlab::simulate_spmv(csr, c5, format, threads, placement, topo, scheme);
    ordered_json j{{"matrix", stem_of(matrix)},
                   {"format", format_s},
                   {"threads", threads},
                   {"placement", placement.label()}};
    j.update(sim_to_json(sim));
    j["modeled_speedup"] =
        spmvlab::modeled_speedup(csr, c5, format, topo, placement, threads, scheme);

    std::ofstream file;
    std::ostream* out = nullptr;
    open_output(file, out, out_path);
    *out << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// features

struct FeatureOptions {
    std::vector<std::string> matrices;
    std::string manifest;
    int threads = 4;
    std::string scheme = "rows-static";
    std::string placement = "compact";
    std::string topology;
    std::string import_csv;
    std::string prefer;  // "", "simulation", "import"
    std::string out = "features.csv";
};

int cmd_features(const FeatureOptions& opt) {
    const std::vector<NamedMatrix> inputs = collect_inputs(opt.matrices, opt.manifest);
    const spmvlab::Scheme scheme = spmvlab::scheme_from_string(opt.scheme);
    const spmvlab::Placement placement = spmvlab::placement_from_string(opt.placement);
    const spmvlab::Topology topo = resolve_topology(opt.topology);

    std::optional<spmvlab::ImportedCounters> imported;
    if (!opt.import_csv.empty())
        imported = spmvlab::ImportedCounters::from_csv(opt.import_csv);
    std::optional<spmvlab::CounterSource> precedence;
    if (opt.prefer == "simulation") precedence = spmvlab::CounterSource::Simulation;
    else if (opt.prefer == "import") precedence = spmvlab::CounterSource::Import;
    else if (!opt.prefer.empty())
        throw spmvlab::ValidationError("--prefer must be 'simulation' or 'import'");

    std::vector<spmvlab::Sample> samples;
    bool any_failed = false;
    for (const NamedMatrix& input : inputs) {
        try {
            const spmvlab::CsrMatrix csr =
                spmvlab::coo_to_csr(spmvlab::read_matrix_market(input.path));
            const spmvlab::PartitionPlan plan =
                scheme == spmvlab::Scheme::NnzBalanced
                    ? spmvlab::partition_nnz_balanced(csr, opt.threads)
                    : spmvlab::partition_rows_static(csr, opt.threads);
            const spmvlab::SimResult sim1 = spmvlab::simulate_spmv(
                csr, nullptr, spmvlab::Format::Csr, 1, spmvlab::Placement::compact(), topo,
                scheme);
            const spmvlab::SimResult simT = spmvlab::simulate_spmv(
                csr, nullptr, spmvlab::Format::Csr, opt.threads, placement, topo, scheme);

            spmvlab::Sample s;
            s.matrix = input.name;
            s.features = spmvlab::build_feature_vector(
                csr, plan, &sim1, &simT, input.name, opt.threads,
                imported ? &*imported : nullptr, precedence);
            double worst = 0.0;
            for (const spmvlab::ThreadCounters& c : simT.per_thread)
                worst = std::max(worst, c.modeled_cost);
            s.speedup = worst > 0.0 ? sim1.per_thread[0].modeled_cost / worst : 1.0;
            s.label_source = "modeled";
            samples.push_back(std::move(s));
        } catch (const std::exception& e) {
            any_failed = true;
            std::cerr << input.name << ": " << e.what() << "\n";
        }
    }
    spmvlab::write_features_csv(samples, opt.out);
    return any_failed ? kExitPartial : 0;
}

// ---------------------------------------------------------------------------
// train / importance

int cmd_train(const std::string& features_path, const std::string& out_path,
              const spmvlab::TrainConfig& cfg) {
    const std::vector<spmvlab::Sample> samples = spmvlab::read_features_csv(features_path);
    const spmvlab::Forest model = spmvlab::fit(samples, cfg);
    spmvlab::save_forest(model, out_path);
    std::printf("trained %d trees on %lld samples; holdout n=%lld mae=%.6g r2=%.6g\n",
                cfg.n_trees, static_cast<long long>(model.holdout.n_train),
                static_cast<long long>(model.holdout.n_test), model.holdout.mae,
                model.holdout.r2);
    return 0;
}

int cmd_importance(const std::string& model_path, const std::string& out_path) {
    const spmvlab::Forest model = spmvlab::load_forest(model_path);
    const auto ranked = spmvlab::feature_importance(model);

    std::ofstream file;
    std::ostream* out = nullptr;
    open_output(file, out, out_path);
    *out << "rank,feature,weight\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", ranked[i].second);
        *out << (i + 1) << "," << ranked[i].first << "," << buf << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// advise

ordered_json recommendation_to_json(const spmvlab::Recommendation& r) {
    ordered_json ev = ordered_json::array();
    for (const spmvlab::Evidence& e : r.evidence)
        ev.push_back({{"feature", e.feature},
                      {"value", e.value},
                      {"threshold", e.threshold},
                      {"relation", e.relation}});
    return {{"rule", r.rule_id},
            {"action", r.action},
            {"confidence", r.confidence},
            {"evidence", ev}};
}

struct AdviseOptions {
    std::string features_path;
    std::string matrix_name;   // filter when advising from a CSV
    std::string matrix_file;   // compute features on the fly
    std::string topology;
    std::string out;
    int threads = 4;
    bool evaluate = false;
    spmvlab::AdvisorThresholds thresholds;
};

int cmd_advise(const AdviseOptions& opt) {
    const spmvlab::Topology topo = resolve_topology(opt.topology);

    std::vector<spmvlab::Sample> samples;
    std::optional<spmvlab::CsrMatrix> csr;
    if (!opt.features_path.empty()) {
        samples = spmvlab::read_features_csv(opt.features_path);
        if (!opt.matrix_name.empty()) {
            std::vector<spmvlab::Sample> filtered;
            for (spmvlab::Sample& s : samples)
                if (s.matrix == opt.matrix_name) filtered.push_back(std::move(s));
            if (filtered.empty())
                throw spmvlab::ValidationError("matrix '" + opt.matrix_name +
                                               "' not found in " + opt.features_path);
            samples = std::move(filtered);
        }
    } else if (!opt.matrix_file.empty()) {
        csr = spmvlab::coo_to_csr(spmvlab::read_matrix_market(opt.matrix_file));
        const spmvlab::PartitionPlan plan = spmvlab::partition_rows_static(*csr, opt.threads);
        const spmvlab::SimResult sim1 = spmvlab::simulate_spmv(
            *csr, nullptr, spmvlab::Format::Csr, 1, spmvlab::Placement::compact(), topo);
        const spmvlab::SimResult simT = spmvlab::simulate_spmv(
            *csr, nullptr, spmvlab::Format::Csr, opt.threads, spmvlab::Placement::compact(),
            topo);
        spmvlab::Sample s;
        s.matrix = stem_of(opt.matrix_file);
        s.features = spmvlab::build_feature_vector(*csr, plan, &sim1, &simT, s.matrix,
                                                   opt.threads);
        s.speedup = 1.0;
        samples.push_back(std::move(s));
    } else {
        throw spmvlab::ValidationError("advise needs --features or --matrix-file");
    }

    ordered_json all = ordered_json::array();
    for (const spmvlab::Sample& s : samples) {
        const std::vector<spmvlab::Recommendation> recs =
            spmvlab::advise(s.features, opt.thresholds);
        ordered_json jrecs = ordered_json::array();
        for (const spmvlab::Recommendation& r : recs) jrecs.push_back(recommendation_to_json(r));
        all.push_back({{"matrix", s.matrix}, {"recommendations", jrecs}});

        if (recs.empty()) {
            std::printf("%-24s no action\n", s.matrix.c_str());
        } else {
            for (const spmvlab::Recommendation& r : recs) {
                std::string ev;
                for (const spmvlab::Evidence& e : r.evidence) {
                    if (!ev.empty()) ev += ", ";
                    ev += e.feature + "=" + fmt_value(e.value) + " " + e.relation + " " +
                          fmt_value(e.threshold);
                }
                std::printf("%-24s %-14s [%s] (%s) %s\n", s.matrix.c_str(), r.rule_id.c_str(),
                            ev.c_str(), r.confidence.c_str(), r.action.c_str());
            }
        }

        if (opt.evaluate && csr) {
            for (const spmvlab::Recommendation& r : recs) {
                const spmvlab::EvaluationReport rep =
                    spmvlab::evaluate_recommendation(*csr, r.rule_id, topo, opt.threads);
                std::printf("  %s: job_var %.3f -> %.3f, L2_DCM %llu -> %llu, "
                            "modeled speedup %.3f -> %.3f\n",
                            rep.rule_id.c_str(), rep.job_var_before, rep.job_var_after,
                            static_cast<unsigned long long>(rep.l2_dcm_before),
                            static_cast<unsigned long long>(rep.l2_dcm_after),
                            rep.speedup_before, rep.speedup_after);
            }
        }
    }

    if (!opt.out.empty()) {
        std::ofstream file(opt.out);
        if (!file) throw spmvlab::IoError("cannot write output file: " + opt.out);
        file << all.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// generate / reorder

struct GenerateOptions {
    std::string kind = "poor-locality";
    std::string out = "generated.mtx";
    std::uint64_t seed = 0;
    // poor-locality
    index_t groups = 16;
    index_t rows_per_group = 256;
    index_t cols = 0;  // 0: groups * rows_per_group
    index_t nnz_per_row = 4;
    // clustered
    index_t rows = 4000;
    index_t hot_rows = 100;
    index_t nnz_hot = 1000;
    index_t nnz_cold = 1;
};

int cmd_generate(const GenerateOptions& opt) {
    spmvlab::CooMatrix m;
    if (opt.kind == "poor-locality") {
        spmvlab::LocalityPattern p;
        p.n_groups = opt.groups;
        p.rows_per_group = opt.rows_per_group;
        p.cols = opt.cols > 0 ? opt.cols : opt.groups * opt.rows_per_group;
        p.nnz_per_row = opt.nnz_per_row;
        p.seed = opt.seed;
        m = spmvlab::gen_poor_locality(p);
    } else if (opt.kind == "clustered") {
        m = spmvlab::gen_clustered(opt.rows, opt.hot_rows, opt.nnz_hot, opt.nnz_cold, opt.seed);
    } else {
        throw spmvlab::ValidationError("unknown generator kind: " + opt.kind);
    }
    spmvlab::write_matrix_market(m, opt.out);
    std::printf("%s: %lld x %lld, %lld nonzeros\n", opt.out.c_str(),
                static_cast<long long>(m.n_rows), static_cast<long long>(m.n_cols),
                static_cast<long long>(m.nnz()));
    return 0;
}

int cmd_reorder(const std::string& input, index_t window, const std::string& topology,
                const std::string& out_path, const std::string& perm_path) {
    const spmvlab::CsrMatrix csr = spmvlab::coo_to_csr(spmvlab::read_matrix_market(input));
    if (window <= 0) {
        const spmvlab::Topology topo = resolve_topology(topology);
        window = std::max<index_t>(1, topo.l2.capacity_bytes / 8 / 4);
    }
    const auto [reordered, perm] = spmvlab::locality_reorder(csr, window);
    spmvlab::write_matrix_market(spmvlab::csr_to_coo(reordered), out_path);
    if (!perm_path.empty()) {
        std::ofstream pf(perm_path);
        if (!pf) throw spmvlab::IoError("cannot write permutation file: " + perm_path);
        for (index_t i = 0; i < static_cast<index_t>(perm.perm.size()); ++i)
            pf << i << " " << perm.perm[static_cast<std::size_t>(i)] << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse matrix-vector multiplication scalability laboratory"};
    app.require_subcommand(1);

    // convert
    std::string cv_input, cv_to = "csr5", cv_out;
    int cv_omega = 2, cv_sigma = 2;
    CLI::App* convert = app.add_subcommand("convert", "dump a matrix's storage structure");
    convert->add_option("input", cv_input, "Matrix Market file")->required();
    convert->add_option("--to", cv_to, "target format (csr|csr5)")
        ->check(CLI::IsMember({"csr", "csr5"}));
    convert->add_option("--omega", cv_omega, "tile width");
    convert->add_option("--sigma", cv_sigma, "tile height");
    convert->add_option("--out", cv_out, "output file (default: stdout)");

    // bench
    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "run or simulate the kernel benchmark");
    bench->add_option("--matrix", bench_opt.matrices, "Matrix Market file (repeatable)");
    bench->add_option("--manifest", bench_opt.manifest, "dataset manifest (name\\tpath\\tgroup)");
    bench->add_option("--format", bench_opt.format)->check(CLI::IsMember({"csr", "csr5"}));
    bench->add_option("--threads", bench_opt.threads, "comma-separated thread counts");
    bench->add_option("--placement", bench_opt.placement, "compact|scatter|explicit:ids");
    bench->add_option("--scheme", bench_opt.scheme, "rows-static|nnz-balanced");
    bench->add_option("--mode", bench_opt.mode)->check(CLI::IsMember({"measure", "simulate"}));
    bench->add_option("--topology", bench_opt.topology, "topology config file");
    bench->add_option("--omega", bench_opt.omega);
    bench->add_option("--sigma", bench_opt.sigma);
    bench->add_option("--min-reps", bench_opt.min_reps);
    bench->add_option("--max-reps", bench_opt.max_reps);
    bench->add_option("--out", bench_opt.out, "results log (JSONL; default: stdout)");

    // simulate
    std::string sm_matrix, sm_format = "csr", sm_placement = "compact",
                sm_scheme = "rows-static", sm_topology, sm_out;
    int sm_threads = 4, sm_omega = spmvlab::kDefaultOmega, sm_sigma = spmvlab::kDefaultSigma;
    CLI::App* simulate = app.add_subcommand("simulate", "cache-simulate one configuration");
    simulate->add_option("--matrix", sm_matrix)->required();
    simulate->add_option("--format", sm_format)->check(CLI::IsMember({"csr", "csr5"}));
    simulate->add_option("--threads", sm_threads);
    simulate->add_option("--placement", sm_placement);
    simulate->add_option("--scheme", sm_scheme);
    simulate->add_option("--topology", sm_topology);
    simulate->add_option("--omega", sm_omega);
    simulate->add_option("--sigma", sm_sigma);
    simulate->add_option("--out", sm_out);

    // features
    FeatureOptions feat_opt;
    CLI::App* features = app.add_subcommand("features", "extract feature vectors");
    features->add_option("--matrix", feat_opt.matrices, "Matrix Market file (repeatable)");
    features->add_option("--manifest", feat_opt.manifest);
    features->add_option("--threads", feat_opt.threads);
    features->add_option("--scheme", feat_opt.scheme);
    features->add_option("--placement", feat_opt.placement);
    features->add_option("--topology", feat_opt.topology);
    features->add_option("--import", feat_opt.import_csv, "hardware counter CSV");
    features->add_option("--prefer", feat_opt.prefer, "counter precedence (simulation|import)");
    features->add_option("--out", feat_opt.out);

    // train
    std::string tr_features, tr_out = "model.json";
    spmvlab::TrainConfig tr_cfg;
    CLI::App* train = app.add_subcommand("train", "fit the scalability model");
    train->add_option("--features", tr_features)->required();
    train->add_option("--out", tr_out);
    train->add_option("--train-frac", tr_cfg.train_fraction);
    train->add_option("--max-depth", tr_cfg.max_depth);
    train->add_option("--min-leaf", tr_cfg.min_samples_leaf);
    train->add_option("--trees", tr_cfg.n_trees);
    train->add_option("--seed", tr_cfg.seed);

    // importance
    std::string im_model, im_out;
    CLI::App* importance = app.add_subcommand("importance", "rank model feature importance");
    importance->add_option("--model", im_model)->required();
    importance->add_option("--out", im_out, "CSV output (default: stdout)");

    // advise
    AdviseOptions adv_opt;
    CLI::App* advise = app.add_subcommand("advise", "recommend optimizations");
    advise->add_option("--features", adv_opt.features_path, "feature CSV to advise on");
    advise->add_option("--matrix", adv_opt.matrix_name, "restrict to one matrix name");
    advise->add_option("--matrix-file", adv_opt.matrix_file,
                       "compute features for this file instead");
    advise->add_option("--topology", adv_opt.topology);
    advise->add_option("--threads", adv_opt.threads);
    advise->add_option("--out", adv_opt.out, "JSON output");
    advise->add_flag("--evaluate", adv_opt.evaluate,
                     "simulate before/after for each fired rule (needs --matrix-file)");
    advise->add_option("--job-var-min", adv_opt.thresholds.job_var_min);
    advise->add_option("--l2-change-min", adv_opt.thresholds.l2_change_min);
    advise->add_option("--nnz-avg-min", adv_opt.thresholds.nnz_avg_min);
    advise->add_option("--nnz-var-min", adv_opt.thresholds.nnz_var_min);

    // generate
    GenerateOptions gen_opt;
    CLI::App* generate = app.add_subcommand("generate", "synthesize a matrix");
    generate->add_option("--kind", gen_opt.kind, "poor-locality|clustered");
    generate->add_option("--seed", gen_opt.seed);
    generate->add_option("--out", gen_opt.out);
    generate->add_option("--groups", gen_opt.groups);
    generate->add_option("--rows-per-group", gen_opt.rows_per_group);
    generate->add_option("--cols", gen_opt.cols);
    generate->add_option("--nnz-per-row", gen_opt.nnz_per_row);
    generate->add_option("--rows", gen_opt.rows);
    generate->add_option("--hot-rows", gen_opt.hot_rows);
    generate->add_option("--nnz-hot", gen_opt.nnz_hot);
    generate->add_option("--nnz-cold", gen_opt.nnz_cold);

    // reorder
    std::string ro_matrix, ro_topology, ro_out = "reordered.mtx", ro_perm;
    index_t ro_window = 0;
    CLI::App* reorder = app.add_subcommand("reorder", "locality-reorder a matrix's rows");
    reorder->add_option("--matrix", ro_matrix)->required();
    reorder->add_option("--window", ro_window, "column window (default from topology)");
    reorder->add_option("--topology", ro_topology);
    reorder->add_option("--out", ro_out);
    reorder->add_option("--perm", ro_perm, "write the row permutation here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*convert) return cmd_convert(cv_input, cv_to, cv_omega, cv_sigma, cv_out);
        if (*bench) return cmd_bench(bench_opt);
        if (*simulate)
            return cmd_simulate(sm_matrix, sm_format, sm_threads, sm_placement, sm_scheme,
                                sm_topology, sm_omega, sm_sigma, sm_out);
        if (*features) return cmd_features(feat_opt);
        if (*train) return cmd_train(tr_features, tr_out, tr_cfg);
        if (*importance) return cmd_importance(im_model, im_out);
        if (*advise) return cmd_advise(adv_opt);
        if (*generate) return cmd_generate(gen_opt);
        if (*reorder) return cmd_reorder(ro_matrix, ro_window, ro_topology, ro_out, ro_perm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
