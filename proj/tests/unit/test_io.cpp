#include <filesystem>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qev/io.hpp"

using namespace qev;
namespace fs = std::filesystem;

namespace {

const std::string kData = QEV_DATA_DIR;

Errc parse_code(const std::string& text) {
    try {
        io::parse_cbba_document(text);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Io;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qev_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("example fixtures load and validate") {
    for (int ex = 1; ex <= 5; ++ex) {
        for (int k = 1; k <= 2; ++k) {
            const std::string file = kData + "/examples/example" + std::to_string(ex) + "_m" + std::to_string(k) + ".json";
            CAPTURE(file);
            CHECK_NOTHROW(io::load_cbba(file));
        }
    }
    const Cbba m = io::load_cbba(kData + "/examples/example1_m1.json");
    CHECK(m.frame().labels() == std::vector<std::string>{"A", "B"});
    CHECK(std::abs(m.mass(m.frame().hypothesis({"A"})).im + std::sqrt(2.0) / 8) <= 1e-12);
}

TEST_CASE("CBBA document round trip") {
    std::mt19937_64 rng(41);
    const Frame f({"A", "B", "C"});
    for (int i = 0; i < 200; ++i) {
        const io::CbbaDocument doc = io::to_document(oracle::random_cbba(rng, f, false), 1e-6);
        const io::CbbaDocument back = io::parse_cbba_document(io::serialize(doc));
        CHECK(back == doc);
    }
}

TEST_CASE("CBBA document errors") {
    CHECK(parse_code("{") == Errc::Parse);
    CHECK(parse_code("[]") == Errc::Parse);
    CHECK(parse_code(R"({"masses": []})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A"], "masses": [{"focal": [], "re": 1, "im": 0}]})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A"], "masses": [{"focal": ["Z"], "re": 1, "im": 0}]})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A","B"], "masses": [{"focal": ["A","B"], "re": 0.5, "im": 0},
                                                        {"focal": ["B","A"], "re": 0.5, "im": 0}]})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A"], "masses": [{"focal": ["A"], "re": "1", "im": 0}]})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A"], "masses": [{"focal": ["A"], "re": 1}]})") == Errc::Parse);
    CHECK(parse_code(R"({"frame": ["A"], "tolerance": -1, "masses": []})") == Errc::Parse);

    const io::CbbaDocument dup = io::parse_cbba_document(R"({"frame": ["A","A"], "masses": []})");
    try {
        io::to_cbba(dup);
        FAIL("duplicate labels accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Parse);
    }
}

TEST_CASE("loading reports validation failures") {
    TempDir dir;
    const fs::path p = dir.path / "bad.json";
    io::write_file_atomic(p, R"({"frame": ["A","B"], "masses": [{"focal": ["A"], "re": 0.7, "im": 0},
                                                           {"focal": ["B"], "re": 0.7, "im": 0}]})");
    try {
        io::load_cbba(p);
        FAIL("invalid CBBA accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Validation);
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }
    try {
        io::load_cbba(dir.path / "missing.json");
        FAIL("missing file accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Io);
    }
}

TEST_CASE("dataset documents") {
    const ObservedDataset d = io::load_dataset(kData + "/datasets/wang_exp1.json");
    CHECK(d.name == "wang2016-exp1");
    CHECK(d.p_g == 0.21);
    const ObservedDataset back = io::parse_dataset_document(io::serialize(d));
    CHECK(back.name == d.name);
    CHECK(back.p_a_given_b == d.p_a_given_b);
    CHECK(back.p_a == d.p_a);
    CHECK_THROWS_AS(io::parse_dataset_document(R"({"name": "x"})"), Error);

    TempDir dir;
    const fs::path p = dir.path / "ds.json";
    io::write_file_atomic(p, R"({"name": "x", "p_g": 0.5, "p_a_given_g": 0.5, "p_b": 0.6,
                                 "p_a_given_b": 0.5, "p_t": 0.55, "p_a": 0.5})");
    try {
        io::load_dataset(p);
        FAIL("inconsistent dataset accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Validation);
    }
}

TEST_CASE("atomic write") {
    TempDir dir;
    const fs::path p = dir.path / "out.txt";
    io::write_file_atomic(p, "first");
    io::write_file_atomic(p, "second");
    CHECK(io::read_file(p) == "second");
    fs::path tmp = p;
    tmp += ".tmp";
    CHECK_FALSE(fs::exists(tmp));
    CHECK_THROWS_AS(io::write_file_atomic(dir.path / "no" / "such" / "dir.txt", "x"), Error);
}

TEST_CASE("fixed-point formatting") {
    CHECK(io::fixed(0.5, 4) == "0.5000");
    CHECK(io::fixed(-0.00001, 4) == "0.0000");
    CHECK(io::fixed(-0.0, 2) == "0.00");
    CHECK(io::fixed(-1.23456, 3) == "-1.235");
    CHECK(io::fixed(Complex{0.097875, -0.018630}, 4) == "0.0979 - 0.0186i");
    CHECK(io::fixed(Complex{-0.001, 0.163377}, 4) == "-0.0010 + 0.1634i");
    CHECK(io::fixed(Complex{1.0, -1e-9}, 6) == "1.000000 + 0.000000i");
}

TEST_CASE("surface CSV") {
    const std::string csv = io::surface_csv(conflict_surface(0.5));
    CHECK(csv.rfind("x,y,k_abs\n", 0) == 0);
    CHECK(csv.find("\n0.000000,0.000000,0.707107\n") != std::string::npos);
    CHECK(csv.find("\n0.500000,-0.500000,0.000000\n") != std::string::npos);
}

TEST_CASE("row tables") {
    const std::vector<ReportRow> rows{{"d", "observed", 0.17, 0.41, 0.83, 0.63, 0.5926, 0.69}};
    CHECK(io::rows_csv(rows) == "dataset,method,p_g,p_a_given_g,p_b,p_a_given_b,p_t,p_a\n"
                                "d,observed,0.1700,0.4100,0.8300,0.6300,0.5926,0.6900\n");
    const std::string table = io::rows_table(rows);
    CHECK(table.find("P(A|G)") != std::string::npos);
    CHECK(table.find("0.5926") != std::string::npos);
}
