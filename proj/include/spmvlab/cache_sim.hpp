#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spmvlab/error.hpp"
#include "spmvlab/placement.hpp"

namespace spmvlab {

struct CacheConfig {
    std::int64_t capacity_bytes = 0;
    int associativity = 1;
};

// Core-group memory hierarchy: private L1 per core, one L2 shared by each
// group of group_size cores. Latencies are abstract cycles; only their
// ratios matter for modeled speedups.
struct Topology {
    int cores = 64;
    int group_size = 4;
    CacheConfig l1{32 * 1024, 4};
    CacheConfig l2{2 * 1024 * 1024, 16};
    int line_size = 64;
    double lat_l1 = 1.0;
    double lat_l2 = 10.0;
    double lat_mem = 100.0;
    int l2_quantum = 64;  // round-robin interleave quantum at the shared L2

    void validate() const;
    int n_groups() const { return cores / group_size; }

    // Keys: cores, group_size, l1_kb, l2_kb, assoc_l1, assoc_l2, line_b,
    // lat_l1, lat_l2, lat_mem (one "key = value" per line, # comments).
    static Topology from_file(const std::string& path);
};

struct MemAccess {
    std::uint64_t addr = 0;
    std::uint8_t size = 8;
    bool is_write = false;
};

using ThreadTrace = std::vector<MemAccess>;

struct ThreadCounters {
    std::uint64_t l1_dca = 0;
    std::uint64_t l1_dcm = 0;
    std::uint64_t l2_dca = 0;
    std::uint64_t l2_dcm = 0;
    double modeled_cost = 0.0;
};

struct SimResult {
    std::vector<ThreadCounters> per_thread;
    ThreadCounters total;
    int slowest_thread = 0;  // argmax modeled_cost, lowest id on ties

    int n_threads() const { return static_cast<int>(per_thread.size()); }
};

// Set-associative LRU cache over line addresses. Replacement state is a
// monotone use-counter per line; writes are write-allocate/write-back and
// affect occupancy exactly like reads.
class SetAssocLru {
public:
    SetAssocLru(const CacheConfig& cfg, int line_size);

    // True on hit; a miss installs the line, evicting the set's LRU way.
    bool access(std::uint64_t line);

    std::int64_t n_sets() const { return n_sets_; }

private:
    struct Way {
        std::uint64_t tag = 0;
        std::uint64_t last_use = 0;
        bool valid = false;
    };
    std::int64_t n_sets_;
    int ways_;
    std::vector<Way> slots_;
    std::uint64_t tick_ = 0;
};

// Runs every thread's trace through its private L1; L1 misses feed the L2
// of the thread's core-group. Threads sharing an L2 are interleaved
// deterministically, round-robin in quanta of topology.l2_quantum
// L2-level accesses per thread. Write-backs of dirty lines are silent
// (they do not count as L2 accesses, so L2_DCA == L1_DCM per thread).
SimResult simulate(const std::vector<ThreadTrace>& traces, const Topology& topo,
                   const Placement& placement);

} // namespace spmvlab
