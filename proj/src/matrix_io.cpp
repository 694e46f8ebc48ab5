#include "spmvlab/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace spmvlab {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

} // namespace

CooMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file: " + path);

    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    ++lineno;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket")
        throw ParseError(path + ": missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);

    if (object != "matrix")
        throw ParseError(path + ": unsupported object '" + object + "'", lineno);
    if (format != "coordinate")
        throw ParseError(path + ": unsupported format '" + format + "' (coordinate only)",
                         lineno);
    if (field != "real" && field != "integer" && field != "pattern")
        throw ParseError(path + ": unsupported field '" + field + "'", lineno);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw ParseError(path + ": unsupported symmetry '" + symmetry + "'", lineno);

    // Skip comments and blank lines up to the size line.
    index_t n_rows = 0, n_cols = 0, n_entries = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError(path + ": missing size line", lineno);
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> n_rows >> n_cols >> n_entries))
            throw ParseError(path + ": malformed size line", lineno);
        break;
    }
    if (n_rows < 0 || n_cols < 0 || n_entries < 0)
        throw ParseError(path + ": negative size", lineno);

    CooMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.entries.reserve(static_cast<std::size_t>(n_entries));

    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";
    const bool skew = symmetry == "skew-symmetric";

    index_t seen = 0;
    while (seen < n_entries) {
        if (!std::getline(in, line))
            throw ParseError(path + ": expected " + std::to_string(n_entries) +
                                 " entries, found " + std::to_string(seen),
                             lineno);
        ++lineno;
        if (blank(line) || line[0] == '%') continue;

        std::istringstream row(line);
        index_t i = 0, j = 0;
        double v = 1.0;
        if (!(row >> i >> j)) throw ParseError(path + ": malformed entry", lineno);
        if (!pattern && !(row >> v)) throw ParseError(path + ": missing value", lineno);

        if (i < 1 || i > n_rows || j < 1 || j > n_cols)
            throw ParseError(path + ": index out of range", lineno);
        --i;
        --j;

        m.entries.push_back({i, j, v});
        if ((symmetric || skew) && i != j) m.entries.push_back({j, i, skew ? -v : v});
        ++seen;
    }
    return m;
}

void write_matrix_market(const CooMatrix& m, const std::string& path) {
    std::vector<CooEntry> sorted = m.entries;
    std::sort(sorted.begin(), sorted.end(), [](const CooEntry& a, const CooEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::ofstream out(path);
    if (!out) throw IoError("cannot write matrix file: " + path);

    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.n_rows << " " << m.n_cols << " " << sorted.size() << "\n";
    char buf[64];
    for (const CooEntry& e : sorted) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out << (e.row + 1) << " " << (e.col + 1) << " " << buf << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

DatasetManifest DatasetManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);

    DatasetManifest mf;
    std::set<std::string> names;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '#') continue;

        const std::size_t t1 = line.find('\t');
        const std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw ParseError(path + ": expected name<TAB>path<TAB>group", lineno);

        ManifestEntry e;
        e.name = line.substr(0, t1);
        e.path = line.substr(t1 + 1, t2 - t1 - 1);
        e.group = line.substr(t2 + 1);
        while (!e.group.empty() && (e.group.back() == '\r' || e.group.back() == '\n'))
            e.group.pop_back();

        if (!names.insert(e.name).second)
            throw ParseError(path + ": duplicate dataset name '" + e.name + "'", lineno);
        if (!std::filesystem::exists(e.path))
            throw IoError(path + ": dataset path does not exist: " + e.path);
        mf.entries.push_back(std::move(e));
    }
    return mf;
}

} // namespace spmvlab
