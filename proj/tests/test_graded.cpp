// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "graded.hpp"
#include "gscomplex.hpp"
#include "oracles.hpp"

using namespace psk;

namespace {

bool same(const GradedString<Rational>& a, const GradedString<Rational>& b) {
    if (a.start != b.start || a.length() != b.length()) return false;
    for (int i = 0; i < a.length(); ++i) {
        const auto &x = a.entries[i], &y = b.entries[i];
        if (x.u != y.u || x.src != y.src || x.tgt != y.tgt || x.m != y.m) return false;
    }
    return true;
}

// Hochschild differential of the one-object algebra as a dense matrix from
// arity q to arity q + 1, column by column through the oracle.
std::vector<std::vector<Rational>> hochschild_matrix(const oracle::Algebra<Rational>& A, int q) {
    long in = A.dim, out = A.dim;
    for (int i = 0; i < q; ++i) in *= A.dim;
    for (int i = 0; i <= q; ++i) out *= A.dim;
    std::vector<std::vector<Rational>> m(out, std::vector<Rational>(in, Rational(0)));
    for (long c = 0; c < in; ++c) {
        std::vector<std::vector<Rational>> phi(in / A.dim, std::vector<Rational>(A.dim, Rational(0)));
        phi[c / A.dim][c % A.dim] = 1;
        auto d = oracle::hochschild(A, phi, q);
        for (long r = 0; r < out; ++r) m[r][c] = d[r / A.dim][r % A.dim];
    }
    return m;
}

// Path algebra of 0 -> 1 with basis e0, a, e1 and e_j followed by e_i
// written as mult[i][j].
oracle::Algebra<Rational> incidence_a2() {
    oracle::Algebra<Rational> A;
    A.dim = 3;
    A.mult.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
    A.mult[0][0][0] = 1;  // e0 then e0
    A.mult[0][1][1] = 1;  // e0 then a
    A.mult[1][2][1] = 1;  // a then e1
    A.mult[2][2][2] = 1;  // e1 then e1
    return A;
}

}  // namespace

TEST_CASE("graded homs of a constant prestack have rank one") {
    auto P = make_fixture<Rational>("triv-A2");
    Grothendieck<Rational> G(P);
    for (int u = 0; u < P.base.num_arrows(); ++u) CHECK(G.hom_rank(u, 0, 0) == 1);
    CHECK_FALSE(G.validate().has_value());
}

TEST_CASE("Grothendieck composition is associative exactly when twists are coherent") {
    for (const auto& name : fixture_names()) {
        auto P = make_fixture<Rational>(name);
        Grothendieck<Rational> G(P);
        auto err = G.validate();
        if (name == "scalar-twist-3chain-bad") {
            REQUIRE(err.has_value());
            CHECK(err->find("not associative") != std::string::npos);
        } else {
            CHECK_MESSAGE(!err.has_value(), name << ": " << err.value_or(""));
        }
    }
}

TEST_CASE("composition over a twisted pair picks up the twist") {
    auto P = make_fixture<Rational>("scalar-twist-3chain");
    Grothendieck<Rational> G(P);
    int a01 = P.base.find_arrow("a01"), a12 = P.base.find_arrow("a12");
    GradedMor<Rational> a{a01, 0, 0, {Rational(1)}}, b{a12, 0, 0, {Rational(1)}};
    auto c = G.compose(b, a);
    CHECK(c.u == P.base.find_arrow("a02"));
    CHECK(c.m == Mor<Rational>{Rational(6, 7)});
    CHECK_THROWS_AS(G.compose(a, b), std::invalid_argument);
}

TEST_CASE("delta squares to zero") {
    for (const auto& name : fixture_names()) {
        if (name == "scalar-twist-3chain-bad") continue;
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GradedComplex<Rational> C(P, M);
        int top = name == "rank2-fiber" ? 3 : 4;
        for (int n = 1; n <= top; ++n) CHECK_MESSAGE((C.matrix(n + 1) * C.matrix(n)).is_zero_matrix(), name << " n=" << n);
    }
}

TEST_CASE("delta squares to zero on random rank2 cochains of degree 4") {
    auto P = make_fixture<Rational>("rank2-fiber");
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> C(P, M);
    auto x = random_coords<Rational>(C.layout(4).size(), 1);
    auto y = C.apply(x, 5);
    DenseSource<Rational> src{&y};
    const auto& L6 = C.layout(6);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(L6.blocks().size()) - 1);
    for (int t = 0; t < 300; ++t) {
        int b = pick(rng);
        std::vector<int> basis;
        for (int r : L6.block(b).ranks) basis.push_back(std::uniform_int_distribution<int>(0, r - 1)(rng));
        CHECK(all_zero(C.value(src, 6, b, basis)));
    }
}

TEST_CASE("graded cochain dimensions of the rank2 fixture") {
    auto P = make_fixture<Rational>("rank2-fiber");
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> C(P, M);
    // 2^n simplices, 2^(n+1) object tuples, 2^n basis tuples, rank 2 values.
    for (int n = 0; n <= 4; ++n) CHECK(C.layout(n).size() == (1L << (3 * n + 2)));
}

TEST_CASE("cohomology of the A2 incidence category matches the algebra") {
    auto P = make_fixture<Rational>("triv-A2");
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> C(P, M);
    GSComplex<Rational> S(P, M);
    auto A = incidence_a2();
    std::vector<std::vector<std::vector<Rational>>> d;
    for (int q = 0; q <= 3; ++q) d.push_back(hochschild_matrix(A, q));
    for (int n = 0; n <= 3; ++n) {
        long dim = static_cast<long>(d[n].front().size());
        int rank_out = oracle::dense_rank(d[n], static_cast<int>(dim));
        int rank_in = n == 0 ? 0 : oracle::dense_rank(d[n - 1], static_cast<int>(d[n - 1].front().size()));
        long expect = dim - rank_out - rank_in;
        CHECK_MESSAGE(betti(C.matrix(n), C.matrix(n + 1)) == expect, "graded n=" << n);
        CHECK_MESSAGE(betti(S.matrix(n), S.matrix(n + 1)) == expect, "gs n=" << n);
    }
}

TEST_CASE("face maps satisfy the simplicial identities") {
    for (const char* name : {"scalar-twist-3chain", "rank2-fiber"}) {
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GradedComplex<Rational> C(P, M);
        const auto& G = C.category();
        for (int n = 3; n <= 4; ++n) {
            const auto& L = C.layout(n);
            int checked = 0;
            L.for_each_key([&](int b, const std::vector<int>& basis) {
                if (checked > 400) return;
                ++checked;
                auto x = C.key_string(n, b, basis);
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(same(chain_face(G, chain_face(G, x, j), i), chain_face(G, chain_face(G, x, i), j - 1)));
            });
            CHECK(checked > 0);
        }
    }
}

TEST_CASE("faces and concatenation reject malformed input") {
    auto P = make_fixture<Rational>("triv-A3");
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> C(P, M);
    const auto& G = C.category();
    auto x = C.key_string(2, 0, {0, 0});
    CHECK_THROWS_AS(chain_face(G, x, 3), std::out_of_range);
    GradedString<Rational> one{x.start, {x.entries[0]}};
    CHECK_THROWS_AS(chain_face(G, one, 0), std::invalid_argument);
    auto whole = chain_concat(P.base, one, GradedString<Rational>{P.base.tgt(x.entries[0].u), {x.entries[1]}});
    CHECK(same(whole, x));
    int end = P.base.tgt(x.entries[0].u);
    CHECK_THROWS_AS(chain_concat(P.base, one, GradedString<Rational>{(end + 1) % 3, {}}), std::invalid_argument);
}

TEST_CASE("evaluation is linear in chains and in each argument") {
    auto P = rank2_fiber<Rational>();
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> C(P, M);
    auto psi = random_coords<Rational>(C.layout(2).size(), 9);
    DenseSource<Rational> src{&psi};
    const auto& L = C.layout(2);
    auto s1 = C.key_string(2, 0, {0, 1});
    auto s2 = C.key_string(2, 0, {1, 1});
    int dim = L.block(0).dim;
    GradedChain<Rational> ch;
    ch.add(2, s1);
    ch.add(-3, s2);
    ch.add(5, C.key_string(1, 0, {0}));
    auto v = C.eval_on_chain(src, 2, ch, dim);
    auto e1 = C.eval(src, s1), e2 = C.eval(src, s2);
    for (int k = 0; k < dim; ++k) CHECK(v[k] == 2 * e1[k] - 3 * e2[k]);

    auto mixed = s1;
    mixed.entries[0].m = {Rational(4), Rational(-1)};
    auto first = s1, second = s1;
    first.entries[0].m = {Rational(1), Rational(0)};
    second.entries[0].m = {Rational(0), Rational(1)};
    auto em = C.eval(src, mixed), ef = C.eval(src, first), es = C.eval(src, second);
    for (int k = 0; k < dim; ++k) CHECK(em[k] == 4 * ef[k] - es[k]);
}
