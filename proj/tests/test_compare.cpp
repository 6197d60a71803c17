// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "compare.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace psk;

namespace {

long fact(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct Setup {
    Prestack<Rational> P;
    Bimodule<Rational> M;
    GSComplex<Rational> gs;
    GradedComplex<Rational> gr;
    Comparison<Rational> cmp;

    explicit Setup(const std::string& name)
        : P(make_fixture<Rational>(name)), M(diagonal_bimodule(P)), gs(P, M), gr(P, M), cmp(gs, gr) {}
    Setup(const Setup&) = delete;
};

SparseMatrix<Rational> masked_identity(const std::vector<char>& mask) {
    SparseMatrix<Rational> m(static_cast<int>(mask.size()), static_cast<int>(mask.size()));
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) m.add(static_cast<int>(i), static_cast<int>(i), Rational(1));
    return m;
}

const char* const kFixtures[] = {"triv-A3", "scalar-twist-2chain", "scalar-twist-3chain", "rank2-fiber"};

}  // namespace

TEST_CASE("Seq sizes follow the product formula") {
    Setup S("scalar-twist-3chain");
    const auto& B = S.P.base;
    Simplex s{0, {B.find_arrow("a01"), B.find_arrow("a12"), B.find_arrow("a23")}};
    std::vector<int> objs(4, 0);
    std::vector<Mor<Rational>> z(3, Mor<Rational>{Rational(1)});
    for (const auto& part : partitions(3)) {
        auto seq = seq_enumerate(S.P, s, objs, z, part.blocks);
        CHECK_MESSAGE(static_cast<long>(seq.size()) == oracle::seq_count(part.blocks), "blocks " << part.blocks.size());
        for (const auto& e : seq) CHECK(static_cast<int>(e.items.size()) == 3);
    }
    CHECK(seq_enumerate(S.P, s, objs, z, {2, 1}).size() == 2);
    CHECK(seq_enumerate(S.P, s, objs, z, {3}).size() == 2);
    CHECK_THROWS_AS(seq_enumerate(S.P, s, objs, z, {}), std::invalid_argument);
}

TEST_CASE("Seq for a single block has (n-1)! elements") {
    Setup S("rank2-fiber");
    int e = S.P.base.find_arrow("e");
    for (int n = 1; n <= 5; ++n) {
        Simplex s{0, std::vector<int>(n, e)};
        std::vector<int> objs(n + 1, 0);
        for (int i = 1; i <= n; ++i) objs[i] = i % 2;
        std::vector<Mor<Rational>> z(n, Mor<Rational>{Rational(1), Rational(0)});
        CHECK(static_cast<long>(seq_enumerate(S.P, s, objs, z, {n}).size()) == fact(n - 1));
    }
}

TEST_CASE("Seqq sizes are conditioned shuffles times block paths") {
    for (const auto& blocks : std::vector<std::vector<int>>{{1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}, {1, 1, 1}, {2, 1, 1}}) {
        std::vector<int> rev(blocks.rbegin(), blocks.rend());
        long expect = oracle::brute_shuffles(rev, true);
        for (int m : blocks) expect *= fact(m - 1);
        auto seqq = seqq_enumerate(blocks);
        CHECK(static_cast<long>(seqq.size()) == expect);
        for (const auto& e : seqq) {
            int heads = 0;
            for (auto [b, t] : e.formal) heads += t == 0;
            CHECK(heads == static_cast<int>(blocks.size()));
        }
    }
}

TEST_CASE("c_sigma of a partition is the product of scalar twists") {
    Setup S("scalar-twist-3chain");
    const auto& B = S.P.base;
    Simplex s{0, {B.find_arrow("a01"), B.find_arrow("a12"), B.find_arrow("a23")}};
    // h(a01) h(a12) h(a23) = 30, h(a03) = 13; blocks (2, 1) see h(a02) = 7.
    CHECK(c_sigma_partition(S.P, s, {1, 1, 1}, 0).m == Mor<Rational>{Rational(30, 13)});
    CHECK(c_sigma_partition(S.P, s, {2, 1}, 0).m == Mor<Rational>{Rational(7 * 5, 13)});
    CHECK(c_sigma_partition(S.P, s, {3}, 0).m == Mor<Rational>{Rational(1)});
    CHECK_THROWS_AS(c_sigma_partition(S.P, s, {1, 1}, 0), std::invalid_argument);
}

TEST_CASE("F and G are chain maps") {
    for (const char* name : kFixtures) {
        Setup S(name);
        for (int n = 0; n <= 3; ++n) {
            auto dgs = S.gs.matrix(n + 1), dgr = S.gr.matrix(n + 1);
            CHECK_MESSAGE(S.cmp.F_matrix(n + 1) * dgs == dgr * S.cmp.F_matrix(n), name << " F n=" << n);
            CHECK_MESSAGE(S.cmp.G_matrix(n + 1) * dgr == dgs * S.cmp.G_matrix(n), name << " G n=" << n);
        }
    }
}

TEST_CASE("G F is the identity on normalized reduced cochains") {
    for (const char* name : kFixtures) {
        Setup S(name);
        for (int n = 0; n <= 4; ++n) {
            auto I = masked_identity(S.gs.nr_mask(n));
            CHECK_MESSAGE(S.cmp.G_matrix(n) * S.cmp.F_matrix(n) * I == I, name << " n=" << n);
        }
        auto x = random_coords<Rational>(S.gs.layout(2).size(), 3);
        CHECK_THROWS_AS(S.cmp.check_gf_identity(x, 2), std::invalid_argument);
    }
}

TEST_CASE("F G - 1 = delta T + T delta") {
    for (const char* name : kFixtures) {
        Setup S(name);
        int top = std::string(name) == "rank2-fiber" ? 2 : 3;
        for (int n = 0; n <= top; ++n) {
            long dim = S.gr.layout(n).size();
            auto lhs = S.cmp.F_matrix(n) * S.cmp.G_matrix(n) - SparseMatrix<Rational>::identity(static_cast<int>(dim));
            auto rhs = S.cmp.T_matrix(n) * S.gr.matrix(n + 1);
            if (n > 0) rhs = rhs + S.gr.matrix(n) * S.cmp.T_matrix(n - 1);
            CHECK_MESSAGE(lhs == rhs, name << " n=" << n);
        }
    }
}

TEST_CASE("homotopy on random rank2 cochains of degree 3") {
    Setup S("rank2-fiber");
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        auto y = random_coords<Rational>(S.gr.layout(3).size(), seed);
        auto lhs = S.cmp.apply_F(S.cmp.apply_G(y, 3), 3);
        auto a = S.cmp.apply_T(S.gr.apply(y, 4), 3);
        auto b = S.gr.apply(S.cmp.apply_T(y, 2), 3);
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(lhs[i] - y[i] == a[i] + b[i]);
    }
}

TEST_CASE("T vanishes on degree one") {
    for (const char* name : kFixtures) {
        Setup S(name);
        CHECK(S.cmp.T_matrix(0).is_zero_matrix());
    }
}

TEST_CASE("degree caps are enforced") {
    Setup S("triv-A2");
    CompareCaps caps{2, 1};
    Comparison<Rational> small(S.gs, S.gr, caps);
    CHECK_THROWS_AS(small.F_matrix(3), std::length_error);
    CHECK_THROWS_AS(small.T_matrix(2), std::length_error);
}

TEST_CASE("Delta has one term per Seq element plus the string itself") {
    Setup S("scalar-twist-3chain");
    const auto& B = S.P.base;
    Simplex s{0, {B.find_arrow("a01"), B.find_arrow("a12"), B.find_arrow("a23")}};
    std::vector<int> objs(4, 0);
    std::vector<Mor<Rational>> z(3, Mor<Rational>{Rational(1)});
    long expect = 1;
    for (const auto& part : partitions(3)) expect += oracle::seq_count(part.blocks);
    auto terms = S.cmp.delta_terms(s, objs, z);
    CHECK(static_cast<long>(terms.size()) == expect);
    CHECK(terms.back().coef == -1);
    for (const auto& t : terms) CHECK(B.composite(t.string.simp()) == (&t == &terms.back() ? B.composite(s) : B.identity(s.start)));
}

TEST_CASE("chain-level homotopy identity") {
    auto defect = [](Setup& S, int n) {
        FormSource<Rational> src;
        return collect_matrix<Rational>(S.gr.layout(n), S.gr.layout(n).size(), [&](int b, const std::vector<int>& basis) {
            return S.cmp.homotopy_lemma_defect(src, n, b, basis);
        });
    };
    for (const char* name : {"scalar-twist-2chain", "rank2-fiber"})
        for (int n = 1; n <= 2; ++n) {
            Setup S(name);
            CHECK_MESSAGE(defect(S, n).is_zero_matrix(), name << " n=" << n);
        }
    Setup bad("scalar-twist-3chain-bad");
    CHECK_FALSE(defect(bad, 3).is_zero_matrix());
    CHECK_THROWS_AS(defect(bad, 0), std::invalid_argument);
}
