// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "gscomplex.hpp"
#include "sparse.hpp"

using namespace psk;

TEST_CASE("fixtures validate") {
    for (const auto& name : fixture_names()) {
        auto P = make_fixture<Rational>(name);
        auto err = P.validate();
        if (name == "scalar-twist-3chain-bad") CHECK(err.has_value());
        else CHECK_MESSAGE(!err.has_value(), name << ": " << err.value_or(""));
    }
}

TEST_CASE("total differential squares to zero") {
    for (const auto& name : fixture_names()) {
        if (name == "scalar-twist-3chain-bad") continue;
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GSComplex<Rational> G(P, M);
        for (int n = 1; n <= 4; ++n) {
            auto D1 = G.matrix(n), D2 = G.matrix(n + 1);
            CHECK_MESSAGE((D2 * D1).is_zero_matrix(), name << " n=" << n);
        }
    }
}

namespace {

// Upper triangular 2x2 matrices with basis e11, e12, e22; g o f is the
// matrix product g f.
const int kRow[3] = {0, 0, 1};
const int kCol[3] = {0, 1, 1};

int product_index(int g, int f) {
    if (kCol[g] != kRow[f]) return -1;
    int r = kRow[g], c = kCol[f];
    return r == 0 && c == 0 ? 0 : (r == 1 ? 2 : 1);
}

Prestack<Rational> triangular_over_point() {
    Prestack<Rational> P;
    int o = P.base.add_object("*");
    int one = P.base.add_arrow("1", o, o);
    P.base.set_identity(o, one);
    P.base.set_compose(one, one, one);
    LinearCategory<Rational> C({"A"}, {3});
    for (int f = 0; f < 3; ++f)
        for (int g = 0; g < 3; ++g)
            if (int k = product_index(g, f); k >= 0) C.set_compose(0, 0, 0, f, g, {{k, Rational(1)}});
    C.set_identity(0, {Rational(1), Rational(0), Rational(1)});
    P.fibers.push_back(C);
    P.restrictions.push_back(LinFunctor<Rational>::identity(C));
    P.reset_twists();
    return P;
}

oracle::Algebra<Rational> triangular_oracle() {
    oracle::Algebra<Rational> A;
    A.dim = 3;
    A.mult.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (int k = product_index(j, i); k >= 0) A.mult[i][j][k] = 1;
    return A;
}

}  // namespace

TEST_CASE("Hochschild part on a point agrees with the classical differential") {
    auto P = triangular_over_point();
    REQUIRE_FALSE(P.validate().has_value());
    auto M = diagonal_bimodule(P);
    GSComplex<Rational> G(P, M);
    auto A = triangular_oracle();
    for (int q = 0; q <= 2; ++q) {
        const auto& Lin = G.layout(q);
        const auto& Lout = G.layout(q + 1);
        REQUIRE(Lin.block(0).p == 0);
        REQUIRE(Lout.block(0).p == 0);
        long in_size = Lin.block(0).count, out_size = Lout.block(0).count;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto phi_flat = random_coords<Rational>(in_size, seed);
            std::vector<Rational> x(static_cast<std::size_t>(Lin.size()), Rational(0));
            std::copy(phi_flat.begin(), phi_flat.end(), x.begin());
            auto y = G.apply(x, q + 1, GSParts::hochschild());
            std::vector<std::vector<Rational>> phi(in_size / 3, std::vector<Rational>(3));
            for (long c = 0; c < in_size; ++c) phi[c / 3][c % 3] = phi_flat[c];
            auto expect = oracle::hochschild(A, phi, q);
            // The two conventions differ by the global sign (-1)^(q+1).
            Rational sign = (q + 1) % 2 ? -1 : 1;
            for (long c = 0; c < out_size; ++c) CHECK(y[c] == sign * expect[c / 3][c % 3]);
            auto dd = oracle::hochschild(A, expect, q + 1);
            for (const auto& v : dd)
                for (const auto& z : v) CHECK(z == 0);
        }
    }
}

TEST_CASE("matrix columns reproduce pointwise evaluation") {
    for (const char* name : {"scalar-twist-3chain", "rank2-fiber"}) {
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GSComplex<Rational> G(P, M);
        for (int n = 1; n <= 3; ++n) {
            auto D = G.matrix(n);
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                auto x = random_coords<Rational>(G.layout(n - 1).size(), seed * 17 + n);
                CHECK(D.apply(x) == G.apply(x, n));
            }
        }
    }
}

TEST_CASE("random cochains are reproducible from the seed") {
    auto a = random_coords<Rational>(50, 42), b = random_coords<Rational>(50, 42), c = random_coords<Rational>(50, 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("the total differential is the sum of its parts") {
    auto P = make_fixture<Rational>("scalar-twist-3chain");
    auto M = diagonal_bimodule(P);
    GSComplex<Rational> G(P, M);
    for (int n = 1; n <= 4; ++n) {
        auto sum = G.matrix(n, GSParts::hochschild());
        auto simp = G.matrix(n, GSParts::simplicial());
        sum = n % 2 ? sum - simp : sum + simp;
        for (int j = 2; j <= n; ++j) sum = sum + G.matrix(n, GSParts::higher(j));
        CHECK(sum == G.matrix(n));
    }
}

TEST_CASE("higher differentials vanish on reduced cochains without twists") {
    auto P = make_fixture<Rational>("triv-A3");
    auto M = diagonal_bimodule(P);
    GSComplex<Rational> G(P, M);
    for (int n = 2; n <= 4; ++n) {
        auto mask = G.nr_mask(n - 1);
        for (int j = 2; j <= n; ++j) {
            auto D = G.matrix(n, GSParts::higher(j));
            for (int i = 0; i < D.rows(); ++i)
                for (const auto& [c, v] : D.row(i)) CHECK_MESSAGE(!mask[c], "n=" << n << " j=" << j);
        }
    }
}

TEST_CASE("the normalized reduced subcomplex is closed under d") {
    for (const char* name : {"scalar-twist-3chain", "rank2-fiber", "triv-A3"}) {
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GSComplex<Rational> G(P, M);
        int top = std::string(name) == "rank2-fiber" ? 3 : 4;
        for (int n = 1; n <= top; ++n) {
            auto mask = G.nr_mask(n - 1);
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                auto x = random_coords<Rational>(G.layout(n - 1).size(), seed);
                for (std::size_t c = 0; c < x.size(); ++c)
                    if (!mask[c]) x[c] = 0;
                CHECK(G.is_reduced(x, n - 1));
                CHECK(G.is_normalized(x, n - 1));
                auto y = G.apply(x, n);
                CHECK_MESSAGE(G.is_reduced(y, n), name << " n=" << n);
                CHECK_MESSAGE(G.is_normalized(y, n), name << " n=" << n);
            }
        }
    }
}

TEST_CASE("d squares to zero on random cochains over a large prime field") {
    FpModulus guard(2147483629u);
    auto P = make_fixture<Fp>("rank2-fiber");
    auto M = diagonal_bimodule(P);
    GSComplex<Fp> G(P, M);
    for (int n = 0; n <= 3; ++n)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto x = random_coords<Fp>(G.layout(n).size(), seed, -1000, 1000);
            CHECK(all_zero(G.apply(G.apply(x, n + 1), n + 2)));
        }
}

TEST_CASE("cochain dimensions of the rank2 fixture") {
    auto P = make_fixture<Rational>("rank2-fiber");
    auto M = diagonal_bimodule(P);
    GSComplex<Rational> G(P, M);
    // 2^p simplices of length p, 2^(q+1) object tuples, 2^q basis tuples and
    // a rank 2 value space.
    for (int n = 0; n <= 4; ++n) {
        long expect = 0;
        for (int p = 0; p <= n; ++p) expect += (1L << p) * (1L << (2 * (n - p) + 2));
        CHECK(G.layout(n).size() == expect);
    }
    CHECK(G.layout(3).size() == 480);
}
