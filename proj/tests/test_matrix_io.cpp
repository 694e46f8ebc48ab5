#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "spmvlab/matrix_io.hpp"
#include "spmvlab/matrix.hpp"
#include "spmvlab/rng.hpp"
#include "support/fixtures.hpp"

using namespace spmvlab;
using namespace spmvlab::testing;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("spmvlab_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::vector<CooEntry> normalized(const CooMatrix& m) {
    return csr_to_coo(coo_to_csr(m)).entries;
}

} // namespace

TEST_CASE("reads the worked example from coordinate format") {
    TempDir dir;
    write_text(dir.file("fig1.mtx"),
               "%%MatrixMarket matrix coordinate real general\n"
               "% comment line\n"
               "4 4 8\n"
               "1 2 5\n1 3 2\n2 1 6\n2 3 8\n2 4 3\n3 3 4\n4 2 7\n4 3 1\n");
    const CooMatrix m = read_matrix_market(dir.file("fig1.mtx"));
    CHECK(m.n_rows == 4);
    CHECK(m.nnz() == 8);
    const CsrMatrix csr = coo_to_csr(m);
    CHECK(csr.row_ptr == std::vector<std::int64_t>{0, 2, 5, 6, 8});
    CHECK(csr.col_idx == std::vector<std::int32_t>{1, 2, 0, 2, 3, 2, 1, 2});
    CHECK(csr.values == std::vector<double>{5, 2, 6, 8, 3, 4, 7, 1});
}

TEST_CASE("symmetric storage expands without duplicating the diagonal") {
    TempDir dir;
    write_text(dir.file("sym.mtx"),
               "%%MatrixMarket matrix coordinate real symmetric\n"
               "3 3 3\n"
               "2 1 5\n"
               "2 2 7\n"
               "3 2 9\n");
    const CooMatrix m = read_matrix_market(dir.file("sym.mtx"));
    CHECK(m.nnz() == 5);  // two mirrored off-diagonals plus one diagonal
    const CsrMatrix csr = coo_to_csr(m);
    CHECK(csr.values[static_cast<std::size_t>(csr.row_ptr[0])] == 5.0);  // (0,1)
    CHECK(csr.nnz() == 5);
}

TEST_CASE("skew-symmetric storage negates the mirrored value") {
    TempDir dir;
    write_text(dir.file("skew.mtx"),
               "%%MatrixMarket matrix coordinate real skew-symmetric\n"
               "3 3 1\n"
               "3 1 2.5\n");
    const CooMatrix m = read_matrix_market(dir.file("skew.mtx"));
    REQUIRE(m.nnz() == 2);
    const CsrMatrix csr = coo_to_csr(m);
    CHECK(csr.values == std::vector<double>{-2.5, 2.5});  // (0,2) then (2,0)
}

TEST_CASE("pattern entries get value one") {
    TempDir dir;
    write_text(dir.file("pat.mtx"),
               "%%MatrixMarket matrix coordinate pattern general\n"
               "3 3 1\n"
               "3 1\n");
    const CooMatrix m = read_matrix_market(dir.file("pat.mtx"));
    REQUIRE(m.nnz() == 1);
    CHECK(m.entries[0].row == 2);
    CHECK(m.entries[0].col == 0);
    CHECK(m.entries[0].value == 1.0);
}

TEST_CASE("integer values widen to real") {
    TempDir dir;
    write_text(dir.file("int.mtx"),
               "%%MatrixMarket matrix coordinate integer general\n"
               "2 2 1\n"
               "1 1 -3\n");
    CHECK(read_matrix_market(dir.file("int.mtx")).entries[0].value == -3.0);
}

TEST_CASE("unsupported and malformed inputs fail loudly") {
    TempDir dir;
    write_text(dir.file("complex.mtx"),
               "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
    CHECK_THROWS_AS(read_matrix_market(dir.file("complex.mtx")), ParseError);

    write_text(dir.file("dense.mtx"), "%%MatrixMarket matrix array real general\n1 1\n1\n");
    CHECK_THROWS_AS(read_matrix_market(dir.file("dense.mtx")), ParseError);

    write_text(dir.file("short.mtx"),
               "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n");
    CHECK_THROWS_AS(read_matrix_market(dir.file("short.mtx")), ParseError);

    write_text(dir.file("bad.mtx"),
               "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1\n");
    try {
        read_matrix_market(dir.file("bad.mtx"));
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    CHECK_THROWS_AS(read_matrix_market(dir.file("missing.mtx")), IoError);
}

TEST_CASE("write then read reproduces the matrix exactly") {
    TempDir dir;
    Rng rng(5);
    for (int it = 0; it < 15; ++it) {
        CooMatrix m = random_coo(rng, 1 + rng.range(0, 30), 1 + rng.range(0, 30), 0.2);
        m.entries = normalized(m);
        const std::string path = dir.file("roundtrip.mtx");
        write_matrix_market(m, path);
        const CooMatrix back = read_matrix_market(path);
        REQUIRE(back.nnz() == m.nnz());
        for (std::size_t i = 0; i < m.entries.size(); ++i) {
            CHECK(back.entries[i].row == m.entries[i].row);
            CHECK(back.entries[i].col == m.entries[i].col);
            CHECK(back.entries[i].value == m.entries[i].value);
        }
    }
}

TEST_CASE("degenerate writes") {
    TempDir dir;
    CooMatrix empty;
    empty.n_rows = empty.n_cols = 3;
    write_matrix_market(empty, dir.file("empty.mtx"));
    {
        std::ifstream in(dir.file("empty.mtx"));
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        CHECK(line == "3 3 0");
    }

    CooMatrix tiny;
    tiny.n_rows = tiny.n_cols = 1;
    tiny.entries = {{0, 0, 2.5}};
    write_matrix_market(tiny, dir.file("tiny.mtx"));
    {
        std::ifstream in(dir.file("tiny.mtx"));
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        std::getline(in, line);
        CHECK(line == "1 1 2.5");
    }
}

TEST_CASE("manifest loading checks names and paths") {
    TempDir dir;
    write_matrix_market(fig1_coo(), dir.file("a.mtx"));
    write_matrix_market(identity_coo(3), dir.file("b.mtx"));

    write_text(dir.file("good.tsv"), "a\t" + dir.file("a.mtx") + "\tgroup1\n" +  //
                                         "b\t" + dir.file("b.mtx") + "\tgroup2\n");
    const DatasetManifest mf = DatasetManifest::load(dir.file("good.tsv"));
    REQUIRE(mf.entries.size() == 2);
    CHECK(mf.entries[0].name == "a");
    CHECK(mf.entries[1].group == "group2");

    write_text(dir.file("dup.tsv"), "a\t" + dir.file("a.mtx") + "\tg\n" +  //
                                        "a\t" + dir.file("b.mtx") + "\tg\n");
    CHECK_THROWS_AS(DatasetManifest::load(dir.file("dup.tsv")), ParseError);

    write_text(dir.file("gone.tsv"), "a\t" + dir.file("nope.mtx") + "\tg\n");
    CHECK_THROWS_AS(DatasetManifest::load(dir.file("gone.tsv")), IoError);
}
