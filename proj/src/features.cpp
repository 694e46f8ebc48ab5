#include "spmvlab/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spmvlab {

const std::vector<std::string>& FeatureVector::names() {
    static const std::vector<std::string> kNames = {
        "n_rows",  "nnz_max", "nnz_avg", "nnz_var", "L1_DCA",  "L1_DCM",
        "L2_DCA",  "L2_DCM",  "FR_INS",  "TOT_INS", "TOT_CYC", "L1_DCMR",
        "L2_DCMR", "IPC",     "L2_DCMR_change", "job_var"};
    return kNames;
}

std::optional<double> FeatureVector::get(const std::string& name) const {
    if (name == "n_rows") return n_rows;
    if (name == "nnz_max") return nnz_max;
    if (name == "nnz_avg") return nnz_avg;
    if (name == "nnz_var") return nnz_var;
    if (name == "L1_DCA") return L1_DCA;
    if (name == "L1_DCM") return L1_DCM;
    if (name == "L2_DCA") return L2_DCA;
    if (name == "L2_DCM") return L2_DCM;
    if (name == "FR_INS") return FR_INS;
    if (name == "TOT_INS") return TOT_INS;
    if (name == "TOT_CYC") return TOT_CYC;
    if (name == "L1_DCMR") return L1_DCMR;
    if (name == "L2_DCMR") return L2_DCMR;
    if (name == "IPC") return IPC;
    if (name == "L2_DCMR_change") return L2_DCMR_change;
    if (name == "job_var") return job_var;
    throw ValidationError("unknown feature: " + name);
}

void FeatureVector::set(const std::string& name, double value) {
    if (name == "n_rows") n_rows = value;
    else if (name == "nnz_max") nnz_max = value;
    else if (name == "nnz_avg") nnz_avg = value;
    else if (name == "nnz_var") nnz_var = value;
    else if (name == "L1_DCA") L1_DCA = value;
    else if (name == "L1_DCM") L1_DCM = value;
    else if (name == "L2_DCA") L2_DCA = value;
    else if (name == "L2_DCM") L2_DCM = value;
    else if (name == "FR_INS") FR_INS = value;
    else if (name == "TOT_INS") TOT_INS = value;
    else if (name == "TOT_CYC") TOT_CYC = value;
    else if (name == "L1_DCMR") L1_DCMR = value;
    else if (name == "L2_DCMR") L2_DCMR = value;
    else if (name == "IPC") IPC = value;
    else if (name == "L2_DCMR_change") L2_DCMR_change = value;
    else if (name == "job_var") job_var = value;
    else throw ValidationError("unknown feature: " + name);
}

double compute_job_var(const PartitionPlan& plan) { return plan.max_share(); }

namespace {

double thread_l2_dcmr(const ThreadCounters& c, const std::string& which) {
    if (c.l2_dca == 0)
        throw ValidationError("L2 miss rate undefined: " + which + " run has no L2 accesses");
    return static_cast<double>(c.l2_dcm) / static_cast<double>(c.l2_dca);
}

} // namespace

double compute_l2_dcmr_change(const SimResult& sim1, const SimResult& simT) {
    if (sim1.n_threads() != 1)
        throw ValidationError("baseline simulation must be a 1-thread result");
    const double base = thread_l2_dcmr(sim1.per_thread[0], "1-thread");
    const double slow = thread_l2_dcmr(
        simT.per_thread[static_cast<std::size_t>(simT.slowest_thread)], "slowest-thread");
    return slow - base;
}

ImportedCounters ImportedCounters::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open counter file: " + path);

    ImportedCounters out;
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty counter file");
    ++lineno;
    if (line.rfind("matrix,threads,thread_id,event,value", 0) != 0)
        throw ParseError(path + ": expected header matrix,threads,thread_id,event,value", lineno);

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream row(line);
        std::string matrix, threads_s, thread_s, event, value_s;
        if (!std::getline(row, matrix, ',') || !std::getline(row, threads_s, ',') ||
            !std::getline(row, thread_s, ',') || !std::getline(row, event, ',') ||
            !std::getline(row, value_s))
            throw ParseError(path + ": expected 5 comma-separated fields", lineno);
        try {
            out.data_[{matrix, std::stoi(threads_s)}][event][std::stoi(thread_s)] =
                std::stod(value_s);
        } catch (const std::exception&) {
            throw ParseError(path + ": malformed number", lineno);
        }
    }
    return out;
}

bool ImportedCounters::has(const std::string& matrix, int threads) const {
    return data_.count({matrix, threads}) > 0;
}

std::optional<double> ImportedCounters::total(const std::string& matrix, int threads,
                                              const std::string& event) const {
    const auto rec = data_.find({matrix, threads});
    if (rec == data_.end()) return std::nullopt;
    const auto ev = rec->second.find(event);
    if (ev == rec->second.end()) return std::nullopt;
    double sum = 0.0;
    for (const auto& [tid, v] : ev->second) sum += v;
    return sum;
}

const std::map<int, double>* ImportedCounters::per_thread(const std::string& matrix, int threads,
                                                          const std::string& event) const {
    const auto rec = data_.find({matrix, threads});
    if (rec == data_.end()) return nullptr;
    const auto ev = rec->second.find(event);
    return ev == rec->second.end() ? nullptr : &ev->second;
}

namespace {

double require(const std::optional<double>& v, const std::string& what) {
    if (!v) throw ValidationError("counter import missing event " + what);
    return *v;
}

// The slowest thread of an imported record: by TOT_CYC when available,
// otherwise by per-thread L2 miss rate.
int imported_slowest(const ImportedCounters& imp, const std::string& matrix, int threads) {
    if (const auto* cyc = imp.per_thread(matrix, threads, "TOT_CYC")) {
        int best = cyc->begin()->first;
        double worst = cyc->begin()->second;
        for (const auto& [tid, v] : *cyc)
            if (v > worst) {
                worst = v;
                best = tid;
            }
        return best;
    }
    const auto* dcm = imp.per_thread(matrix, threads, "L2_DCM");
    const auto* dca = imp.per_thread(matrix, threads, "L2_DCA");
    if (!dcm || !dca) throw ValidationError("counter import lacks L2_DCM/L2_DCA for " + matrix);
    int best = dcm->begin()->first;
    double worst = -1.0;
    for (const auto& [tid, v] : *dcm) {
        const auto a = dca->find(tid);
        if (a == dca->end() || a->second == 0.0)
            throw ValidationError("counter import has zero L2 accesses for " + matrix);
        const double rate = v / a->second;
        if (rate > worst) {
            worst = rate;
            best = tid;
        }
    }
    return best;
}

double imported_thread_rate(const ImportedCounters& imp, const std::string& matrix, int threads,
                            int tid) {
    const auto* dcm = imp.per_thread(matrix, threads, "L2_DCM");
    const auto* dca = imp.per_thread(matrix, threads, "L2_DCA");
    if (!dcm || !dca || !dcm->count(tid) || !dca->count(tid) || dca->at(tid) == 0.0)
        throw ValidationError("counter import has zero L2 accesses for " + matrix);
    return dcm->at(tid) / dca->at(tid);
}

} // namespace

FeatureVector build_feature_vector(const CsrMatrix& m, const PartitionPlan& plan,
                                   const SimResult* sim1, const SimResult* simT,
                                   const std::string& matrix_name, int n_threads,
                                   const ImportedCounters* imported,
                                   std::optional<CounterSource> precedence) {
    const MatrixStats stats = matrix_stats(m);

    FeatureVector fv;
    fv.n_rows = static_cast<double>(stats.n_rows);
    fv.nnz_max = static_cast<double>(stats.nnz_max);
    fv.nnz_avg = stats.nnz_avg;
    fv.nnz_var = stats.nnz_var;
    fv.job_var = compute_job_var(plan);

    const bool have_sim = sim1 != nullptr && simT != nullptr;
    const bool have_import = imported != nullptr && imported->has(matrix_name, n_threads);
    if (have_sim && have_import && !precedence)
        throw ValidationError("both simulated and imported counters available for '" +
                              matrix_name +
                              "': pass an explicit precedence (simulation or import)");

    const bool use_import =
        have_import && (!have_sim || precedence == CounterSource::Import);
    if (use_import) {
        fv.L1_DCA = require(imported->total(matrix_name, n_threads, "L1_DCA"), "L1_DCA");
        fv.L1_DCM = require(imported->total(matrix_name, n_threads, "L1_DCM"), "L1_DCM");
        fv.L2_DCA = require(imported->total(matrix_name, n_threads, "L2_DCA"), "L2_DCA");
        fv.L2_DCM = require(imported->total(matrix_name, n_threads, "L2_DCM"), "L2_DCM");
        fv.FR_INS = require(imported->total(matrix_name, n_threads, "FR_INS"), "FR_INS");
        fv.TOT_INS = imported->total(matrix_name, n_threads, "TOT_INS");
        fv.TOT_CYC = imported->total(matrix_name, n_threads, "TOT_CYC");
        if (fv.TOT_INS && fv.TOT_CYC && *fv.TOT_CYC > 0.0) fv.IPC = *fv.TOT_INS / *fv.TOT_CYC;
        if (fv.L1_DCA <= 0.0 || fv.L2_DCA <= 0.0)
            throw ValidationError("imported counters have zero cache accesses for " + matrix_name);
        fv.L1_DCMR = fv.L1_DCM / fv.L1_DCA;
        const int slow = imported_slowest(*imported, matrix_name, n_threads);
        fv.L2_DCMR = imported_thread_rate(*imported, matrix_name, n_threads, slow);
        if (!imported->has(matrix_name, 1))
            throw ValidationError("counter import lacks the 1-thread record for " + matrix_name);
        const int slow1 = imported_slowest(*imported, matrix_name, 1);
        fv.L2_DCMR_change = fv.L2_DCMR - imported_thread_rate(*imported, matrix_name, 1, slow1);
        return fv;
    }

    if (!have_sim)
        throw ValidationError("no counter source for '" + matrix_name +
                              "': provide simulation results or a matching import");

    fv.L1_DCA = static_cast<double>(simT->total.l1_dca);
    fv.L1_DCM = static_cast<double>(simT->total.l1_dcm);
    fv.L2_DCA = static_cast<double>(simT->total.l2_dca);
    fv.L2_DCM = static_cast<double>(simT->total.l2_dcm);
    fv.FR_INS = 2.0 * static_cast<double>(m.nnz());  // one multiply + one add per nonzero
    if (fv.L1_DCA <= 0.0 || fv.L2_DCA <= 0.0)
        throw ValidationError("simulation produced zero cache accesses for " + matrix_name);
    fv.L1_DCMR = fv.L1_DCM / fv.L1_DCA;
    fv.L2_DCMR = thread_l2_dcmr(
        simT->per_thread[static_cast<std::size_t>(simT->slowest_thread)], "slowest-thread");
    fv.L2_DCMR_change = compute_l2_dcmr_change(*sim1, *simT);
    return fv;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_features_csv(const std::vector<Sample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write feature file: " + path);

    out << "matrix";
    for (const std::string& name : FeatureVector::names()) out << "," << name;
    out << ",speedup,label_source\n";
    for (const Sample& s : samples) {
        out << s.matrix;
        for (const std::string& name : FeatureVector::names()) {
            const std::optional<double> v = s.features.get(name);
            out << ",";
            if (v) out << fmt(*v);
        }
        out << "," << fmt(s.speedup) << "," << s.label_source << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<Sample> read_features_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature file: " + path);

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty feature file");
    ++lineno;

    std::vector<std::string> header;
    {
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == '\n'))
                cell.pop_back();
            header.push_back(cell);
        }
    }
    if (header.empty() || header[0] != "matrix")
        throw ParseError(path + ": first column must be 'matrix'", lineno);

    std::vector<Sample> samples;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == '\n'))
                cell.pop_back();
            cells.push_back(cell);
        }
        while (cells.size() < header.size()) cells.push_back("");
        if (cells.size() != header.size())
            throw ParseError(path + ": column count mismatch", lineno);

        Sample s;
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string& key = header[i];
            const std::string& value = cells[i];
            try {
                if (key == "matrix")
                    s.matrix = value;
                else if (key == "speedup")
                    s.speedup = std::stod(value);
                else if (key == "label_source")
                    s.label_source = value;
                else if (!value.empty())
                    s.features.set(key, std::stod(value));
            } catch (const ValidationError&) {
                throw ParseError(path + ": unknown column '" + key + "'", lineno);
            } catch (const std::exception&) {
                throw ParseError(path + ": malformed number in column '" + key + "'", lineno);
            }
        }
        if (!(s.speedup > 0.0) || !std::isfinite(s.speedup))
            throw ParseError(path + ": speedup label must be finite and positive", lineno);
        samples.push_back(std::move(s));
    }
    return samples;
}

} // namespace spmvlab
