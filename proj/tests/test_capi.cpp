// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "psk/psk.h"

namespace fs = std::filesystem;

namespace {

struct Handle {
    psk_prestack* p = nullptr;
    ~Handle() { psk_prestack_free(p); }
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("psk_capi_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long dim(psk_prestack* p, psk_complex c, int n, bool cohomology) {
    long out = -1;
    psk_status s = cohomology ? psk_cohomology_dim(p, c, n, &out) : psk_cochain_dim(p, c, n, &out);
    REQUIRE(s == PSK_OK);
    return out;
}

}  // namespace

TEST_CASE("library metadata") {
    CHECK(std::string(psk_version()).size() > 0);
    CHECK(std::string(psk_status_name(PSK_OK)) == "ok");
    CHECK(std::string(psk_status_name(PSK_ERR_NOT_COCYCLE)) == "not a cocycle");
    REQUIRE(psk_fixture_count() == 6);
    std::vector<std::string> names;
    for (int i = 0; i < psk_fixture_count(); ++i) names.emplace_back(psk_fixture_name(i));
    CHECK(std::find(names.begin(), names.end(), "rank2-fiber") != names.end());
    CHECK(psk_fixture_name(-1) == nullptr);
    CHECK(psk_fixture_name(6) == nullptr);
}

TEST_CASE("fixtures load, validate and report cohomology") {
    Handle h;
    REQUIRE(psk_prestack_fixture("rank2-fiber", &h.p) == PSK_OK);
    CHECK(psk_validate(h.p) == PSK_OK);
    char ring[16];
    REQUIRE(psk_prestack_ring(h.p, ring, sizeof ring) == PSK_OK);
    CHECK(std::string(ring) == "Q");
    long expect[] = {4, 24, 112};
    for (int n = 0; n <= 2; ++n) CHECK(dim(h.p, PSK_COMPLEX_GS, n, false) == expect[n]);
    for (int n = 0; n <= 2; ++n) CHECK(dim(h.p, PSK_COMPLEX_GRADED, n, false) == (1L << (3 * n + 2)));
    CHECK(dim(h.p, PSK_COMPLEX_NR, 2, true) == 1);
    CHECK(dim(h.p, PSK_COMPLEX_GS, 2, true) == 1);
    CHECK(dim(h.p, PSK_COMPLEX_GRADED, 2, true) == 1);

    Handle bad;
    REQUIRE(psk_prestack_fixture("scalar-twist-3chain-bad", &bad.p) == PSK_OK);
    CHECK(psk_validate(bad.p) == PSK_ERR_INVALID);
    CHECK(std::string(psk_last_error()).find("twist coherence") != std::string::npos);
}

TEST_CASE("differential matrices compose to zero in rank") {
    Handle h;
    REQUIRE(psk_prestack_fixture("scalar-twist-3chain", &h.p) == PSK_OK);
    psk_matrix *d1 = nullptr, *d2 = nullptr;
    REQUIRE(psk_differential(h.p, PSK_COMPLEX_GS, 1, &d1) == PSK_OK);
    REQUIRE(psk_differential(h.p, PSK_COMPLEX_GS, 2, &d2) == PSK_OK);
    long r1 = 0, c1 = 0, r2 = 0, c2 = 0, k1 = 0, k2 = 0, nnz = 0;
    psk_matrix_dims(d1, &r1, &c1);
    psk_matrix_dims(d2, &r2, &c2);
    CHECK(r1 == c2);
    CHECK(c1 == dim(h.p, PSK_COMPLEX_GS, 1, false));
    psk_matrix_rank(d1, &k1);
    psk_matrix_rank(d2, &k2);
    CHECK(c2 - k2 - k1 == dim(h.p, PSK_COMPLEX_GS, 2, true));
    psk_matrix_nnz(d1, &nnz);
    CHECK(nnz > 0);

    TempDir tmp;
    REQUIRE(psk_matrix_write_file(d1, tmp.file("d1.txt").c_str()) == PSK_OK);
    std::istringstream in(slurp(tmp.file("d1.txt")));
    long rows = 0, cols = 0, count = 0;
    in >> rows >> cols >> count;
    CHECK(rows == r1);
    CHECK(cols == c1);
    CHECK(count == nnz);
    psk_matrix_free(d1);
    psk_matrix_free(d2);
}

TEST_CASE("verify runs every law") {
    Handle h;
    REQUIRE(psk_prestack_fixture("scalar-twist-2chain", &h.p) == PSK_OK);
    char report[512];
    for (psk_law law : {PSK_LAW_D2, PSK_LAW_DELTA2, PSK_LAW_FD, PSK_LAW_GD, PSK_LAW_GF, PSK_LAW_HOMOTOPY, PSK_LAW_PATHS,
                        PSK_LAW_SHUFFLES})
        CHECK_MESSAGE(psk_verify(h.p, law, 2, 2, 7, report, sizeof report) == PSK_OK, law << ": " << report);

    Handle bad;
    REQUIRE(psk_prestack_fixture("scalar-twist-3chain-bad", &bad.p) == PSK_OK);
    CHECK(psk_verify(bad.p, PSK_LAW_PATHS, 3, 1, 1, report, sizeof report) == PSK_ERR_VERIFY_FAILED);
}

TEST_CASE("deformation classes and cocycle files") {
    TempDir tmp;
    Handle h;
    REQUIRE(psk_prestack_fixture("rank2-fiber", &h.p) == PSK_OK);
    long d = -1;
    REQUIRE(psk_deform_classify(h.p, &d) == PSK_OK);
    CHECK(d == 1);
    REQUIRE(psk_deform_write_class(h.p, 0, tmp.file("class.json").c_str()) == PSK_OK);
    CHECK(psk_deform_write_class(h.p, 1, tmp.file("none.json").c_str()) == PSK_ERR_ARG);

    Handle q;
    REQUIRE(psk_prestack_load_file(tmp.file("class.json").c_str(), &q.p) == PSK_OK);
    char ring[16];
    psk_prestack_ring(q.p, ring, sizeof ring);
    CHECK(std::string(ring) == "Q[e]");
    CHECK(psk_validate(q.p) == PSK_OK);
    long unused = 0;
    CHECK(psk_cochain_dim(q.p, PSK_COMPLEX_GS, 0, &unused) == PSK_ERR_ARG);

    REQUIRE(psk_cochain_write_file(h.p, 2, nullptr, 0, tmp.file("zero.txt").c_str()) == PSK_OK);
    CHECK(psk_deform_from_cocycle(h.p, tmp.file("zero.txt").c_str(), tmp.file("zero.json").c_str()) == PSK_OK);

    long n2 = dim(h.p, PSK_COMPLEX_GS, 2, false);
    std::vector<std::string> text(static_cast<std::size_t>(n2), "0");
    text[0] = "1";
    std::vector<const char*> vals;
    for (const auto& t : text) vals.push_back(t.c_str());
    CHECK(psk_cochain_write_file(h.p, 2, vals.data(), n2 - 1, tmp.file("short.txt").c_str()) == PSK_ERR_ARG);
    REQUIRE(psk_cochain_write_file(h.p, 2, vals.data(), n2, tmp.file("one.txt").c_str()) == PSK_OK);
    CHECK(psk_deform_from_cocycle(h.p, tmp.file("one.txt").c_str(), tmp.file("one.json").c_str()) ==
          PSK_ERR_NOT_COCYCLE);
    CHECK(std::string(psk_last_error()).find("not a cocycle") != std::string::npos);
}

TEST_CASE("prestack files round-trip") {
    TempDir tmp;
    REQUIRE(psk_fixture_write("scalar-twist-3chain", tmp.file("a.json").c_str()) == PSK_OK);
    Handle h;
    REQUIRE(psk_prestack_load_file(tmp.file("a.json").c_str(), &h.p) == PSK_OK);
    REQUIRE(psk_prestack_write_file(h.p, tmp.file("b.json").c_str()) == PSK_OK);
    CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
    Handle j;
    REQUIRE(psk_prestack_load_json(slurp(tmp.file("a.json")).c_str(), &j.p) == PSK_OK);
    CHECK(psk_validate(j.p) == PSK_OK);
}

TEST_CASE("errors are reported through status codes") {
    Handle h;
    CHECK(psk_prestack_load_file("/nonexistent/p.json", &h.p) == PSK_ERR_IO);
    CHECK(h.p == nullptr);
    CHECK(std::string(psk_last_error()).size() > 0);
    CHECK(psk_prestack_load_json("{\"base\":", &h.p) == PSK_ERR_PARSE);
    CHECK(psk_prestack_load_json("{\"ring\": \"Q\"}", &h.p) == PSK_ERR_PARSE);
    CHECK(psk_prestack_load_json("{\"ring\": {\"Fp\": 8}}", &h.p) == PSK_ERR_PARSE);
    CHECK(psk_prestack_fixture("no-such-fixture", &h.p) == PSK_ERR_ARG);
    CHECK(psk_prestack_fixture("triv-A2", nullptr) == PSK_ERR_ARG);
    CHECK(psk_validate(nullptr) == PSK_ERR_ARG);
    long out = 0;
    CHECK(psk_cochain_dim(nullptr, PSK_COMPLEX_GS, 0, &out) == PSK_ERR_ARG);
    psk_prestack_free(nullptr);
    psk_matrix_free(nullptr);

    REQUIRE(psk_prestack_fixture("triv-A2", &h.p) == PSK_OK);
    CHECK(psk_last_error() == std::string());
    CHECK(psk_cochain_dim(h.p, PSK_COMPLEX_GS, -1, &out) == PSK_ERR_ARG);
    CHECK(psk_set_enum_cap(0) == PSK_ERR_ARG);
    REQUIRE(psk_set_enum_cap(2) == PSK_OK);
    char report[256];
    CHECK(psk_verify(h.p, PSK_LAW_PATHS, 4, 1, 1, report, sizeof report) == PSK_ERR_CAP);
    REQUIRE(psk_set_enum_cap(8) == PSK_OK);
}
