#include "spmvlab/cache_sim.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace spmvlab {

void Topology::validate() const {
    if (cores < 1 || group_size < 1) throw ValidationError("core counts must be positive");
    if (cores % group_size != 0)
        throw ValidationError("group_size must divide the core count");
    if (line_size < 1 || (line_size & (line_size - 1)) != 0)
        throw ValidationError("line size must be a power of two");
    for (const CacheConfig* c : {&l1, &l2}) {
        if (c->associativity < 1) throw ValidationError("associativity must be positive");
        if (c->capacity_bytes <= 0 ||
            c->capacity_bytes % (static_cast<std::int64_t>(line_size) * c->associativity) != 0)
            throw ValidationError("cache capacity must be divisible by line_size * ways");
    }
    if (l2_quantum < 1) throw ValidationError("L2 quantum must be positive");
}

Topology Topology::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topology config: " + path);

    std::map<std::string, double> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), '=', ' ');
        std::istringstream row(line);
        std::string key;
        double value = 0.0;
        if (!(row >> key >> value))
            throw ParseError(path + ": expected 'key = value'", lineno);
        kv[key] = value;
    }

    Topology t;
    auto take = [&kv](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const double v = it->second;
        kv.erase(it);
        return v;
    };
    t.cores = static_cast<int>(take("cores", t.cores));
    t.group_size = static_cast<int>(take("group_size", t.group_size));
    t.l1.capacity_bytes = static_cast<std::int64_t>(take("l1_kb", 32.0) * 1024.0);
    t.l2.capacity_bytes = static_cast<std::int64_t>(take("l2_kb", 2048.0) * 1024.0);
    t.l1.associativity = static_cast<int>(take("assoc_l1", t.l1.associativity));
    t.l2.associativity = static_cast<int>(take("assoc_l2", t.l2.associativity));
    t.line_size = static_cast<int>(take("line_b", t.line_size));
    t.lat_l1 = take("lat_l1", t.lat_l1);
    t.lat_l2 = take("lat_l2", t.lat_l2);
    t.lat_mem = take("lat_mem", t.lat_mem);
    t.l2_quantum = static_cast<int>(take("l2_quantum", t.l2_quantum));
    if (!kv.empty())
        throw ParseError(path + ": unknown topology key '" + kv.begin()->first + "'");
    t.validate();
    return t;
}

SetAssocLru::SetAssocLru(const CacheConfig& cfg, int line_size)
    : n_sets_(cfg.capacity_bytes / (static_cast<std::int64_t>(line_size) * cfg.associativity)),
      ways_(cfg.associativity),
      slots_(static_cast<std::size_t>(n_sets_) * ways_) {}

bool SetAssocLru::access(std::uint64_t line) {
    ++tick_;
    const std::size_t base =
        static_cast<std::size_t>(line % static_cast<std::uint64_t>(n_sets_)) * ways_;
    const std::uint64_t tag = line / static_cast<std::uint64_t>(n_sets_);

    int victim = 0;
    std::uint64_t oldest = ~0ull;
    for (int w = 0; w < ways_; ++w) {
        Way& way = slots_[base + w];
        if (way.valid && way.tag == tag) {
            way.last_use = tick_;
            return true;
        }
        if (!way.valid) {
            victim = w;
            oldest = 0;
        } else if (way.last_use < oldest) {
            victim = w;
            oldest = way.last_use;
        }
    }
    Way& way = slots_[base + victim];
    way.valid = true;
    way.tag = tag;
    way.last_use = tick_;
    return false;
}

SimResult simulate(const std::vector<ThreadTrace>& traces, const Topology& topo,
                   const Placement& placement) {
    topo.validate();
    const int n_threads = static_cast<int>(traces.size());
    if (n_threads < 1) throw ValidationError("need at least one trace");
    const std::vector<int> cores = placement.map_cores(n_threads, topo.cores, topo.group_size);

    SimResult result;
    result.per_thread.resize(static_cast<std::size_t>(n_threads));

    // Pass 1: private L1 per thread; misses become the L2-level stream.
    std::vector<std::vector<std::uint64_t>> l2_stream(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        SetAssocLru l1(topo.l1, topo.line_size);
        ThreadCounters& c = result.per_thread[static_cast<std::size_t>(t)];
        for (const MemAccess& a : traces[static_cast<std::size_t>(t)]) {
            const std::uint64_t line = a.addr / static_cast<std::uint64_t>(topo.line_size);
            ++c.l1_dca;
            if (!l1.access(line)) {
                ++c.l1_dcm;
                l2_stream[static_cast<std::size_t>(t)].push_back(line);
            }
        }
    }

    // Pass 2: shared L2 per core-group, members interleaved round-robin
    // in fixed quanta, in core-id order.
    std::map<int, std::vector<int>> group_members;
    for (int t = 0; t < n_threads; ++t)
        group_members[cores[static_cast<std::size_t>(t)] / topo.group_size].push_back(t);
    for (auto& [group, members] : group_members) {
        std::sort(members.begin(), members.end(), [&cores](int a, int b) {
            return cores[static_cast<std::size_t>(a)] < cores[static_cast<std::size_t>(b)];
        });
        SetAssocLru l2(topo.l2, topo.line_size);
        std::vector<std::size_t> pos(members.size(), 0);
        bool any = true;
        while (any) {
            any = false;
            for (std::size_t i = 0; i < members.size(); ++i) {
                const int t = members[i];
                const auto& stream = l2_stream[static_cast<std::size_t>(t)];
                ThreadCounters& c = result.per_thread[static_cast<std::size_t>(t)];
                int quantum = topo.l2_quantum;
                while (quantum-- > 0 && pos[i] < stream.size()) {
                    ++c.l2_dca;
                    if (!l2.access(stream[pos[i]])) ++c.l2_dcm;
                    ++pos[i];
                }
                if (pos[i] < stream.size()) any = true;
            }
        }
    }

    double worst = -1.0;
    for (int t = 0; t < n_threads; ++t) {
        ThreadCounters& c = result.per_thread[static_cast<std::size_t>(t)];
        const std::uint64_t l1_hits = c.l1_dca - c.l1_dcm;
        const std::uint64_t l2_hits = c.l2_dca - c.l2_dcm;
        c.modeled_cost = topo.lat_l1 * static_cast<double>(l1_hits) +
                         topo.lat_l2 * static_cast<double>(l2_hits) +
                         topo.lat_mem * static_cast<double>(c.l2_dcm);
        result.total.l1_dca += c.l1_dca;
        result.total.l1_dcm += c.l1_dcm;
        result.total.l2_dca += c.l2_dca;
        result.total.l2_dcm += c.l2_dcm;
        result.total.modeled_cost += c.modeled_cost;
        if (c.modeled_cost > worst) {
            worst = c.modeled_cost;
            result.slowest_thread = t;
        }
    }
    return result;
}

} // namespace spmvlab
