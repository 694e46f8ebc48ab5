#include "spmvlab/exec.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <thread>

#include "spmvlab/spmv.hpp"
#include "spmvlab/stats.hpp"

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

namespace spmvlab {

std::string to_string(Format f) { return f == Format::Csr ? "csr" : "csr5"; }

Format format_from_string(const std::string& s) {
    if (s == "csr") return Format::Csr;
    if (s == "csr5") return Format::Csr5;
    throw ValidationError("unknown format: " + s);
}

namespace {

double steady_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

bool pin_to_core(int core) {
#if defined(__linux__)
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(core, &set);
    return pthread_setaffinity_np(pthread_self(), sizeof(set), &set) == 0;
#else
    (void)core;
    return false;
#endif
}

struct Csr5ThreadWork {
    // Rows at the chunk edges may be shared with a neighbour thread;
    // their contributions are buffered and folded in by the coordinator
    // in thread order, which keeps the result deterministic.
    std::int32_t first_row = -1;
    std::int32_t last_row = -1;
    double first_sum = 0.0;
    double last_sum = 0.0;

    void reset() { first_sum = last_sum = 0.0; }
};

// Returns the row of the last nonzero a csr5 chunk touches (tail included
// for the final thread).
std::int32_t chunk_last_row(const Csr5Matrix& m, const ThreadRange& range, bool with_tail) {
    if (with_tail && m.tail_nnz() > 0) return m.tail_rows.back();
    if (range.end <= range.begin) return -1;
    const index_t last_entry = range.end * m.tile_entries() - 1;
    index_t r = m.tile_ptr[static_cast<std::size_t>(range.end - 1)];
    while (last_entry >= m.row_ptr[static_cast<std::size_t>(r) + 1]) ++r;
    return static_cast<std::int32_t>(r);
}

std::vector<Csr5ThreadWork> setup_csr5_works(const Csr5Matrix& m, const PartitionPlan& plan) {
    std::vector<Csr5ThreadWork> works(static_cast<std::size_t>(plan.n_threads));
    for (int t = 0; t < plan.n_threads; ++t) {
        const ThreadRange& r = plan.ranges[static_cast<std::size_t>(t)];
        const bool with_tail = t == plan.n_threads - 1 && m.tail_nnz() > 0;
        Csr5ThreadWork& w = works[static_cast<std::size_t>(t)];
        if (r.end > r.begin)
            w.first_row = m.tile_ptr[static_cast<std::size_t>(r.begin)];
        else if (with_tail)
            w.first_row = m.tail_rows.front();
        w.last_row = chunk_last_row(m, r, with_tail);
    }
    return works;
}

void run_csr5_chunk(const Csr5Matrix& m, const DenseVector& x, DenseVector& y,
                    const ThreadRange& range, bool with_tail, Csr5ThreadWork& work) {
    auto emit = [&](std::int32_t row, double sum) {
        if (row == work.first_row)
            work.first_sum += sum;
        else if (row == work.last_row)
            work.last_sum += sum;
        else
            y[static_cast<std::size_t>(row)] += sum;
    };
    csr5_tile_range(m, x, range.begin, range.end, emit);
    if (with_tail) csr5_tail(m, x, emit);
}

} // namespace

DenseVector spmv_parallel(const CsrMatrix& csr, const Csr5Matrix* csr5, Format format,
                          const PartitionPlan& plan, const DenseVector& x) {
    if (format == Format::Csr5 && csr5 == nullptr)
        throw ValidationError("csr5 structure missing for csr5 execution");

    DenseVector y(static_cast<std::size_t>(csr.n_rows), 0.0);
    const int T = plan.n_threads;

    if (format == Format::Csr) {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t)
            workers.emplace_back([&, t] {
                const ThreadRange& r = plan.ranges[static_cast<std::size_t>(t)];
                spmv_csr_rows(csr, x, y, r.begin, r.end);
            });
        for (std::thread& w : workers) w.join();
        return y;
    }

    std::vector<Csr5ThreadWork> works = setup_csr5_works(*csr5, plan);
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        workers.emplace_back([&, t] {
            run_csr5_chunk(*csr5, x, y, plan.ranges[static_cast<std::size_t>(t)], t == T - 1,
                           works[static_cast<std::size_t>(t)]);
        });
    for (std::thread& w : workers) w.join();
    for (const Csr5ThreadWork& w : works) {
        if (w.first_row >= 0) y[static_cast<std::size_t>(w.first_row)] += w.first_sum;
        if (w.last_row >= 0 && w.last_row != w.first_row)
            y[static_cast<std::size_t>(w.last_row)] += w.last_sum;
    }
    return y;
}

RunRecord run_benchmark(const std::string& matrix_name, const CsrMatrix& csr,
                        const Csr5Matrix* csr5, Format format, int n_threads,
                        const Placement& placement, const TimingConfig& timing,
                        std::optional<double> baseline_mean_seconds, Scheme csr_scheme) {
    if (n_threads < 1) throw ValidationError("thread count must be at least 1");
    if (format == Format::Csr5 && csr5 == nullptr)
        throw ValidationError("csr5 structure missing for csr5 benchmark");
    if (timing.min_reps < 2 || timing.max_reps < timing.min_reps)
        throw ValidationError("repetition bounds must satisfy 2 <= min <= max");

    const PartitionPlan plan =
        format == Format::Csr
            ? (csr_scheme == Scheme::NnzBalanced ? partition_nnz_balanced(csr, n_threads)
                                                 : partition_rows_static(csr, n_threads))
            : partition_csr5_tiles(*csr5, n_threads);

    const std::function<double()> clock = timing.clock ? timing.clock : steady_seconds;
    const DenseVector x(static_cast<std::size_t>(csr.n_cols), 1.0);
    DenseVector y(static_cast<std::size_t>(csr.n_rows), 0.0);

    std::vector<Csr5ThreadWork> works;
    if (format == Format::Csr5)
        works = setup_csr5_works(*csr5, plan);
    else
        works.resize(static_cast<std::size_t>(n_threads));

    std::vector<int> cores;
    try {
        cores = placement.map_cores(n_threads, static_cast<int>(std::thread::hardware_concurrency()),
                                    1);
    } catch (const ValidationError&) {
        cores.clear();  // host too small; run unpinned, placement stays advisory
    }

    std::barrier sync(n_threads + 1);
    std::atomic<bool> stop{false};
    std::atomic<int> pinned{0};

    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
        workers.emplace_back([&, t] {
            if (static_cast<std::size_t>(t) < cores.size() &&
                pin_to_core(cores[static_cast<std::size_t>(t)]))
                pinned.fetch_add(1);
            const ThreadRange& range = plan.ranges[static_cast<std::size_t>(t)];
            for (;;) {
                sync.arrive_and_wait();
                if (stop.load()) break;
                if (format == Format::Csr)
                    spmv_csr_rows(csr, x, y, range.begin, range.end);
                else
                    run_csr5_chunk(*csr5, x, y, range, t == n_threads - 1,
                                   works[static_cast<std::size_t>(t)]);
                sync.arrive_and_wait();
            }
        });

    std::vector<double> samples;
    for (;;) {
        if (format == Format::Csr5) {
            std::fill(y.begin(), y.end(), 0.0);
            for (Csr5ThreadWork& w : works) w.reset();
        }
        sync.arrive_and_wait();
        const double t0 = clock();
        sync.arrive_and_wait();
        const double t1 = clock();
        samples.push_back(t1 - t0);
        if (format == Format::Csr5) {
            for (const Csr5ThreadWork& w : works) {
                if (w.first_row >= 0) y[static_cast<std::size_t>(w.first_row)] += w.first_sum;
                if (w.last_row >= 0 && w.last_row != w.first_row)
                    y[static_cast<std::size_t>(w.last_row)] += w.last_sum;
            }
        }

        const int n = static_cast<int>(samples.size());
        if (n >= timing.max_reps ||
            (n >= timing.min_reps &&
             ci_gap_ok(samples, timing.confidence, timing.rel_ci_limit))) {
            stop.store(true);
            sync.arrive_and_wait();
            break;
        }
    }
    for (std::thread& w : workers) w.join();

    RunRecord rec;
    rec.matrix = matrix_name;
    rec.format = to_string(format);
    rec.n_threads = n_threads;
    rec.placement = placement.label();
    rec.repetitions = static_cast<int>(samples.size());
    rec.times = samples;
    rec.mean_time = mean(samples);
    rec.gflops = rec.mean_time > 0.0
                     ? 2.0 * static_cast<double>(csr.nnz()) / rec.mean_time / 1e9
                     : 0.0;
    rec.timer_warning = rec.mean_time < 100.0 * timing.tick_seconds;
    rec.affinity_applied = pinned.load() == n_threads && !cores.empty();
    if (baseline_mean_seconds.has_value() && rec.mean_time > 0.0)
        rec.speedup = *baseline_mean_seconds / rec.mean_time;
    else if (n_threads == 1)
        rec.speedup = 1.0;
    return rec;
}

} // namespace spmvlab
