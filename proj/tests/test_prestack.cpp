// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "prestack.hpp"

using namespace psk;

namespace {

// Scalar attached to each arrow of the four-object chain fixture.
Rational height(const std::string& name) {
    static const std::map<std::string, int> h = {{"a01", 2}, {"a12", 3}, {"a23", 5},
                                                 {"a02", 7}, {"a13", 11}, {"a03", 13}};
    auto it = h.find(name);
    return Rational(it == h.end() ? 1 : it->second);
}

Rational scalar_of(const Comp<Rational>& c) {
    REQUIRE(c.m.size() == 1);
    return c.m[0];
}

Simplex word(const BaseCategory& B, std::initializer_list<const char*> names) {
    Simplex s;
    for (const char* n : names) s.arrows.push_back(B.find_arrow(n));
    s.start = B.src(s.arrows.front());
    return s;
}

}  // namespace

TEST_CASE("shipped prestacks validate") {
    for (const auto& name : fixture_names()) {
        auto P = make_fixture<Rational>(name);
        auto err = P.validate();
        if (name == "scalar-twist-3chain-bad") {
            REQUIRE(err.has_value());
            CHECK(err->find("twist coherence fails") != std::string::npos);
        } else {
            CHECK_MESSAGE(!err.has_value(), name << ": " << err.value_or(""));
        }
    }
}

TEST_CASE("validation pinpoints broken twists and restrictions") {
    SUBCASE("non-invertible twist") {
        auto P = make_fixture<Rational>("scalar-twist-2chain");
        set_scalar_twist(P, P.base.find_arrow("a01"), P.base.find_arrow("a12"), Rational(0));
        auto err = P.validate();
        REQUIRE(err.has_value());
        CHECK(err->find("not invertible") != std::string::npos);
    }
    SUBCASE("twist with an identity leg") {
        auto P = make_fixture<Rational>("triv-A2");
        set_scalar_twist(P, P.base.find_arrow("1_0"), P.base.find_arrow("a01"), Rational(2));
        auto err = P.validate();
        REQUIRE(err.has_value());
        CHECK(err->find("identity leg") != std::string::npos);
    }
    SUBCASE("restriction along an identity") {
        auto P = make_fixture<Rational>("triv-A2");
        LinFunctor<Rational> two({0}, 1);
        DenseMat<Rational> m(1, 1);
        m.at(0, 0) = 2;
        two.set_matrix(0, 0, m);
        P.restrictions[P.base.find_arrow("1_1")] = two;
        auto err = P.validate();
        REQUIRE(err.has_value());
        CHECK(err->find("restriction along") != std::string::npos);
    }
    SUBCASE("wrong table sizes") {
        auto P = make_fixture<Rational>("triv-A2");
        P.fibers.pop_back();
        CHECK(P.validate().has_value());
        auto Q = make_fixture<Rational>("triv-A2");
        Q.twists.pop_back();
        CHECK(Q.validate().has_value());
    }
    SUBCASE("twist not natural") {
        auto P = rank2_fiber<Rational>();
        int e = P.base.find_arrow("e");
        // 2 + x at X and 2 at Y is invertible but not natural.
        P.twists[e * P.base.num_arrows() + e] = {Mor<Rational>{Rational(2), Rational(1)},
                                                 Mor<Rational>{Rational(2), Rational(0)}};
        auto err = P.validate();
        REQUIRE(err.has_value());
        CHECK(err->find("naturality") != std::string::npos);
    }
}

TEST_CASE("c_sigma is the identity at the ends and the twist in between") {
    auto P = make_fixture<Rational>("scalar-twist-3chain");
    const auto& B = P.base;
    for (int p = 1; p <= 3; ++p)
        for (const auto& s : B.nerve(p)) {
            CHECK(scalar_of(P.c_sigma(s, 0, 0)) == 1);
            CHECK(scalar_of(P.c_sigma(s, p, 0)) == 1);
        }
    auto s = word(B, {"a01", "a12"});
    CHECK(scalar_of(P.c_sigma(s, 1, 0)) == Rational(2 * 3, 7));
    auto t = word(B, {"a01", "a12", "a23"});
    CHECK(scalar_of(P.c_sigma(t, 1, 0)) == Rational(2 * 11, 13));
    CHECK(scalar_of(P.c_sigma(t, 2, 0)) == Rational(7 * 5, 13));
    CHECK_THROWS_AS(P.c_sigma(t, 4, 0), std::out_of_range);
}

TEST_CASE("path composites are independent of the path") {
    for (const auto& name : {"scalar-twist-3chain", "rank2-fiber", "scalar-twist-2chain"}) {
        auto P = make_fixture<Rational>(name);
        const auto& B = P.base;
        for (int n = 2; n <= 4; ++n) {
            auto paths = enumerate_paths(n);
            for (const auto& s : B.nerve(n))
                for (int X = 0; X < P.fiber(B.target(s)).num_objects(); ++X) {
                    auto first = P.path_comp(s.arrows, paths[0], X);
                    for (const auto& r : paths) {
                        auto c = P.path_comp(s.arrows, r, X);
                        CHECK(c.src == first.src);
                        CHECK(c.tgt == first.tgt);
                        CHECK(c.m == first.m);
                    }
                }
        }
    }
}

TEST_CASE("broken coherence makes path composites disagree") {
    auto P = make_fixture<Rational>("scalar-twist-3chain-bad");
    auto s = word(P.base, {"a01", "a12", "a23"});
    auto paths = enumerate_paths(3);
    CHECK(P.path_comp(s.arrows, paths[0], 0).m != P.path_comp(s.arrows, paths[1], 0).m);
}

TEST_CASE("scalar twists compose to the product of their values") {
    auto P = make_fixture<Rational>("scalar-twist-3chain");
    const auto& B = P.base;
    for (int n = 2; n <= 3; ++n)
        for (const auto& s : B.nerve(n)) {
            Rational expect = 1;
            for (int a : s.arrows) expect *= height(B.arrow(a).name);
            expect /= height(B.arrow(B.composite(s)).name);
            for (const auto& r : enumerate_paths(n)) CHECK(scalar_of(P.path_comp(s.arrows, r, 0)) == expect);
        }
}

TEST_CASE("rank2 twist composes to powers of two") {
    auto P = rank2_fiber<Rational>();
    int e = P.base.find_arrow("e");
    for (int n = 2; n <= 4; ++n) {
        std::vector<int> w(n, e);
        for (int X = 0; X < 2; ++X) {
            auto c = P.path_comp(w, enumerate_paths(n)[0], X);
            CHECK(c.m == Mor<Rational>{Rational(1 << (n - 1)), Rational(0)});
            CHECK(c.src == (n % 2 ? 1 - X : X));
            CHECK(c.tgt == 1 - X);
        }
    }
}

TEST_CASE("merge rejects out of range positions") {
    auto P = make_fixture<Rational>("triv-A3");
    auto s = word(P.base, {"a01", "a12"});
    CHECK_THROWS_AS(P.merge(s.arrows, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(P.merge(s.arrows, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(P.path_comp({}, Path{}, 0), std::invalid_argument);
}
