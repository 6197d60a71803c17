// SPDX-License-Identifier: MIT
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "psk/psk.h"

namespace {

// Exit codes: 0 success, 1 a check failed, 2 bad input, 3 cap exceeded,
// 4 internal error.
int exit_code(psk_status s) {
    switch (s) {
        case PSK_OK: return 0;
        case PSK_ERR_INVALID:
        case PSK_ERR_VERIFY_FAILED:
        case PSK_ERR_NOT_COCYCLE: return 1;
        case PSK_ERR_PARSE:
        case PSK_ERR_ARG:
        case PSK_ERR_IO: return 2;
        case PSK_ERR_CAP: return 3;
        default: return 4;
    }
}

int report(psk_status s) {
    if (s != PSK_OK) std::fprintf(stderr, "psk: %s: %s\n", psk_status_name(s), psk_last_error());
    return exit_code(s);
}

// Owns a loaded prestack handle.
struct Loaded {
    psk_prestack* p = nullptr;
    ~Loaded() { psk_prestack_free(p); }
};

const std::map<std::string, psk_complex> kComplexes = {
    {"gs", PSK_COMPLEX_GS}, {"nr", PSK_COMPLEX_NR}, {"graded", PSK_COMPLEX_GRADED}};

const std::map<std::string, psk_law> kLaws = {
    {"d2", PSK_LAW_D2},           {"delta2", PSK_LAW_DELTA2},     {"fd", PSK_LAW_FD},
    {"gd", PSK_LAW_GD},           {"gf", PSK_LAW_GF},             {"homotopy", PSK_LAW_HOMOTOPY},
    {"paths", PSK_LAW_PATHS},     {"shuffles", PSK_LAW_SHUFFLES}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cohomology and first-order deformations of prestacks over finite categories"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(psk_version()));
    int enum_cap = 0;
    app.add_option("--enum-cap", enum_cap, "Maximum size of enumerated paths and shuffles")->check(CLI::PositiveNumber);

    std::string file, out, complex_name = "gs", law_name, cocycle;
    int degree = 0, max_degree = 3, trials = 5;
    std::uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "Check the prestack axioms");
    validate->add_option("file", file, "Prestack JSON file")->required();

    auto* cohom = app.add_subcommand("cohomology", "Print cohomology dimensions as TSV");
    cohom->add_option("file", file, "Prestack JSON file")->required();
    cohom->add_option("--max-degree", max_degree, "Highest degree")->check(CLI::NonNegativeNumber);
    cohom->add_option("--complex", complex_name, "gs, nr or graded")->check(CLI::IsMember({"gs", "nr", "graded"}));

    auto* verify = app.add_subcommand("verify", "Check an identity on random cochains");
    verify->add_option("file", file, "Prestack JSON file")->required();
    verify->add_option("--law", law_name, "d2, delta2, fd, gd, gf, homotopy, paths or shuffles")
        ->required()
        ->check(CLI::IsMember({"d2", "delta2", "fd", "gd", "gf", "homotopy", "paths", "shuffles"}));
    verify->add_option("--degree", degree, "Degree")->check(CLI::NonNegativeNumber);
    verify->add_option("--trials", trials, "Number of random cochains")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Random seed");

    auto* deform = app.add_subcommand("deform", "Classify or build first-order deformations");
    deform->add_option("file", file, "Prestack JSON file")->required();
    deform->add_option("--from-cocycle", cocycle, "Degree-2 cochain file defining the deformation");
    deform->add_option("--out", out, "Output file (with --from-cocycle) or prefix for class files");

    auto* exportm = app.add_subcommand("export-matrix", "Write the differential C^n -> C^(n+1) as triplets");
    exportm->add_option("file", file, "Prestack JSON file")->required();
    exportm->add_option("--degree", degree, "Source degree n")->check(CLI::NonNegativeNumber);
    exportm->add_option("--complex", complex_name, "gs, nr or graded")->check(CLI::IsMember({"gs", "nr", "graded"}));
    exportm->add_option("--out", out, "Output file")->required();

    std::string fixture_name;
    auto* fixture = app.add_subcommand("fixture", "Write a shipped fixture, or list them");
    fixture->add_option("name", fixture_name, "Fixture name, or 'list'")->required();
    fixture->add_option("--out", out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (enum_cap > 0 && psk_set_enum_cap(enum_cap) != PSK_OK) return report(PSK_ERR_ARG);

    if (*fixture) {
        if (fixture_name == "list") {
            for (int i = 0; i < psk_fixture_count(); ++i) std::printf("%s\n", psk_fixture_name(i));
            return 0;
        }
        if (out.empty()) {
            std::fprintf(stderr, "psk: fixture needs --out\n");
            return 2;
        }
        return report(psk_fixture_write(fixture_name.c_str(), out.c_str()));
    }

    Loaded h;
    if (psk_status s = psk_prestack_load_file(file.c_str(), &h.p); s != PSK_OK) return report(s);

    if (*validate) {
        psk_status s = psk_validate(h.p);
        if (s == PSK_OK) {
            std::printf("OK\n");
            return 0;
        }
        if (s == PSK_ERR_INVALID) {
            std::printf("INVALID: %s\n", psk_last_error());
            return 1;
        }
        return report(s);
    }

    if (*cohom) {
        psk_complex c = kComplexes.at(complex_name);
        std::printf("degree\tdim\tcochains\n");
        for (int n = 0; n <= max_degree; ++n) {
            long dim = 0, size = 0;
            if (psk_status s = psk_cohomology_dim(h.p, c, n, &dim); s != PSK_OK) return report(s);
            if (psk_status s = psk_cochain_dim(h.p, c, n, &size); s != PSK_OK) return report(s);
            std::printf("%d\t%ld\t%ld\n", n, dim, size);
            std::fflush(stdout);
        }
        return 0;
    }

    if (*verify) {
        char buf[1024];
        psk_status s = psk_verify(h.p, kLaws.at(law_name), degree, trials, seed, buf, sizeof buf);
        if (s == PSK_OK || s == PSK_ERR_VERIFY_FAILED) {
            std::printf("%s %s degree %d: %s\n", s == PSK_OK ? "PASS" : "FAIL", law_name.c_str(), degree, buf);
            return exit_code(s);
        }
        return report(s);
    }

    if (*deform) {
        if (!cocycle.empty()) {
            if (out.empty()) {
                std::fprintf(stderr, "psk: deform --from-cocycle needs --out\n");
                return 2;
            }
            psk_status s = psk_deform_from_cocycle(h.p, cocycle.c_str(), out.c_str());
            if (s == PSK_ERR_NOT_COCYCLE) {
                std::printf("%s", psk_last_error());
                return 1;
            }
            if (s == PSK_OK) std::printf("wrote %s\n", out.c_str());
            return report(s);
        }
        long dim = 0;
        if (psk_status s = psk_deform_classify(h.p, &dim); s != PSK_OK) return report(s);
        std::printf("H2 dimension: %ld\n", dim);
        if (!out.empty())
            for (long i = 0; i < dim; ++i) {
                std::string path = out + "-" + std::to_string(i) + ".json";
                if (psk_status s = psk_deform_write_class(h.p, i, path.c_str()); s != PSK_OK) return report(s);
                std::printf("wrote %s\n", path.c_str());
            }
        return 0;
    }

    if (*exportm) {
        psk_matrix* m = nullptr;
        if (psk_status s = psk_differential(h.p, kComplexes.at(complex_name), degree, &m); s != PSK_OK) return report(s);
        long rows = 0, cols = 0, nnz = 0;
        psk_matrix_dims(m, &rows, &cols);
        psk_matrix_nnz(m, &nnz);
        psk_status s = psk_matrix_write_file(m, out.c_str());
        psk_matrix_free(m);
        if (s == PSK_OK) std::printf("%ld x %ld, %ld nonzeros -> %s\n", rows, cols, nnz, out.c_str());
        return report(s);
    }
    return 0;
}
