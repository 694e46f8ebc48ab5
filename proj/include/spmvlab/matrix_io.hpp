#pragma once

#include <string>
#include <vector>

#include "spmvlab/matrix.hpp"

namespace spmvlab {

// Matrix Market, coordinate format only. Field: real / integer / pattern
// (complex rejected); symmetry: general / symmetric / skew-symmetric.
// File indices are 1-based and converted to 0-based. Symmetric storage is
// expanded to full (skew negates the mirrored value; diagonal entries are
// not duplicated); pattern entries get value 1.0.
CooMatrix read_matrix_market(const std::string& path);

// Writes a general real coordinate file. Values carry 17 significant
// digits so read(write(m)) reproduces m exactly.
void write_matrix_market(const CooMatrix& m, const std::string& path);

struct ManifestEntry {
    std::string name;
    std::string path;
    std::string group;
};

// Batch-campaign driver input: one record per line, "name<TAB>path<TAB>group".
// Names must be unique and every path must exist at load time.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    static DatasetManifest load(const std::string& path);
};

} // namespace spmvlab
