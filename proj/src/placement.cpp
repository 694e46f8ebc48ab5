#include "spmvlab/placement.hpp"

#include <set>

namespace spmvlab {

std::vector<int> Placement::map_cores(int n_threads, int total_cores, int group_size) const {
    if (n_threads < 1) throw ValidationError("thread count must be at least 1");
    if (n_threads > total_cores)
        throw ValidationError("thread count " + std::to_string(n_threads) +
                              " exceeds available cores " + std::to_string(total_cores));

    std::vector<int> cores;
    switch (mode) {
        case Mode::Compact:
            for (int t = 0; t < n_threads; ++t) cores.push_back(t);
            break;
        case Mode::Scatter:
            for (int t = 0; t < n_threads; ++t) {
                const int c = t * group_size;
                if (c >= total_cores)
                    throw ValidationError("scatter placement needs " +
                                          std::to_string(n_threads) + " core-groups");
                cores.push_back(c);
            }
            break;
        case Mode::Explicit: {
            if (static_cast<int>(core_ids.size()) < n_threads)
                throw ValidationError("explicit placement lists too few cores");
            std::set<int> seen;
            for (int t = 0; t < n_threads; ++t) {
                const int c = core_ids[static_cast<std::size_t>(t)];
                if (c < 0 || c >= total_cores)
                    throw ValidationError("core id " + std::to_string(c) + " out of range");
                if (!seen.insert(c).second)
                    throw ValidationError("explicit core ids must be unique");
                cores.push_back(c);
            }
            break;
        }
    }
    return cores;
}

std::string Placement::label() const {
    switch (mode) {
        case Mode::Compact: return "compact";
        case Mode::Scatter: return "scatter";
        case Mode::Explicit: {
            std::string s = "explicit:";
            for (std::size_t i = 0; i < core_ids.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(core_ids[i]);
            }
            return s;
        }
    }
    return "?";
}

Placement placement_from_string(const std::string& s) {
    if (s == "compact") return Placement::compact();
    if (s == "scatter") return Placement::scatter();
    if (s.rfind("explicit:", 0) == 0) {
        std::vector<int> ids;
        std::string rest = s.substr(9);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            ids.push_back(std::stoi(rest.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        if (ids.empty()) throw ValidationError("explicit placement lists no cores");
        return Placement::explicit_cores(std::move(ids));
    }
    throw ValidationError("unknown placement: " + s);
}

} // namespace spmvlab
