#pragma once

#include <string>
#include <vector>

#include "spmvlab/error.hpp"

namespace spmvlab {

// Thread-to-core binding policy. Compact fills one core-group before the
// next; scatter gives each thread its own group (private L2).
struct Placement {
    enum class Mode { Compact, Scatter, Explicit };

    Mode mode = Mode::Compact;
    std::vector<int> core_ids;  // Explicit mode only; must be unique

    static Placement compact() { return {Mode::Compact, {}}; }
    static Placement scatter() { return {Mode::Scatter, {}}; }
    static Placement explicit_cores(std::vector<int> ids) {
        return {Mode::Explicit, std::move(ids)};
    }

    // Deterministic core assignment for n_threads threads; throws
    // ValidationError when the topology cannot host the placement.
    std::vector<int> map_cores(int n_threads, int total_cores, int group_size) const;

    std::string label() const;
};

Placement placement_from_string(const std::string& s);

} // namespace spmvlab
