// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "graded.hpp"
#include "gscomplex.hpp"
#include "io.hpp"

using namespace psk;
using nlohmann::json;

namespace {

FiberOf gs_fiber(const BaseCategory& B) {
    return [&B](const Simplex& s, int) { return B.target(s); };
}

FiberOf graded_fiber(const BaseCategory& B) {
    return [&B](const Simplex& s, int i) { return B.object_at(s, i); };
}

}  // namespace

TEST_CASE("prestack JSON round-trips over Q") {
    for (const auto& name : fixture_names()) {
        auto P = make_fixture<Rational>(name);
        auto doc = prestack_to_json(P, Ring{});
        auto Q = load_prestack<Rational>(parse_json_text(doc.dump()));
        CHECK_MESSAGE(prestack_to_json(Q, Ring{}) == doc, name);
        CHECK(P.validate().has_value() == Q.validate().has_value());
        auto M = diagonal_bimodule(P);
        auto N = diagonal_bimodule(Q);
        GSComplex<Rational> a(P, M), b(Q, N);
        for (int n = 0; n <= 2; ++n) CHECK(a.matrix(n) == b.matrix(n));
    }
}

TEST_CASE("prestack JSON round-trips over F_p") {
    FpModulus guard(101);
    Ring r{Ring::Fp, 101};
    auto P = make_fixture<Fp>("scalar-twist-3chain");
    auto doc = prestack_to_json(P, r);
    CHECK(parse_ring(doc["ring"]).p == 101);
    auto Q = load_prestack<Fp>(doc);
    CHECK(prestack_to_json(Q, r) == doc);
    CHECK_FALSE(Q.validate().has_value());
}

TEST_CASE("ring descriptors") {
    CHECK(parse_ring("Q").kind == Ring::Q);
    CHECK(parse_ring("Q[e]").kind == Ring::QDual);
    auto f = parse_ring(json{{"Fp", 7}});
    CHECK(f.kind == Ring::Fp);
    CHECK(f.p == 7);
    CHECK(f.name() == "F_7");
    CHECK(parse_ring(json{{"Fp[e]", 2147483629u}}).name() == "F_2147483629[e]");
    CHECK(ring_to_json(f) == json{{"Fp", 7}});
    CHECK_THROWS_AS(parse_ring(json{{"Fp", 9}}), ParseError);
    CHECK_THROWS_AS(parse_ring(json{{"Fp", -3}}), ParseError);
    CHECK_THROWS_AS(parse_ring(json{{"Fp", 4294967311ull}}), ParseError);
    CHECK_THROWS_AS(parse_ring("Z"), ParseError);
    CHECK_THROWS_AS(parse_ring(json{{"Zp", 7}}), ParseError);
}

TEST_CASE("malformed prestack files are parse errors") {
    auto doc = prestack_to_json(make_fixture<Rational>("scalar-twist-2chain"), Ring{});
    SUBCASE("missing field") {
        auto d = doc;
        d.erase("fibers");
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
    }
    SUBCASE("unknown arrow in a twist") {
        auto d = doc;
        d["twists"][0]["first"] = "nope";
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
    }
    SUBCASE("unknown restriction arrow") {
        auto d = doc;
        d["restrictions"][0]["arrow"] = "nope";
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
    }
    SUBCASE("bad scalar") {
        auto d = doc;
        d["twists"][0]["components"].begin().value()[0] = "1/0";
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
        d["twists"][0]["components"].begin().value()[0] = true;
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
    }
    SUBCASE("wrong coordinate count") {
        auto d = doc;
        d["twists"][0]["components"].begin().value().push_back(1);
        CHECK_THROWS_AS(load_prestack<Rational>(d), ParseError);
    }
    SUBCASE("malformed text") {
        CHECK_THROWS_AS(parse_json_text("{\"base\": "), ParseError);
    }
}

TEST_CASE("missing files are I/O errors") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/dir/prestack.json"), IoError);
}

TEST_CASE("dual scalars") {
    using D = Dual<Rational>;
    auto x = ScalarJson<D>::read(json::array({"1/2", -3}));
    CHECK(x == D{Rational(1, 2), Rational(-3)});
    CHECK(ScalarJson<D>::read(json(4)) == D{Rational(4), Rational(0)});
    CHECK(ScalarJson<D>::read(ScalarJson<D>::write(x)) == x);
    CHECK_THROWS_AS(ScalarJson<D>::read(json::array({1, 2, 3})), ParseError);
}

TEST_CASE("GS cochains round-trip through the text format") {
    for (const char* name : {"scalar-twist-3chain", "rank2-fiber"}) {
        auto P = make_fixture<Rational>(name);
        auto M = diagonal_bimodule(P);
        GSComplex<Rational> gs(P, M);
        for (int n = 0; n <= 2; ++n) {
            const auto& L = gs.layout(n);
            auto x = random_coords<Rational>(L.size(), 10 + n);
            std::stringstream ss;
            write_cochain(ss, P, L, gs_fiber(P.base), x);
            CHECK(read_cochain(ss, P, L, gs_fiber(P.base)) == x);
        }
    }
}

TEST_CASE("graded cochains round-trip through the text format") {
    auto P = make_fixture<Rational>("rank2-fiber");
    auto M = diagonal_bimodule(P);
    GradedComplex<Rational> gr(P, M);
    const auto& L = gr.layout(2);
    auto x = random_coords<Rational>(L.size(), 4);
    std::stringstream ss;
    write_cochain(ss, P, L, graded_fiber(P.base), x);
    CHECK(read_cochain(ss, P, L, graded_fiber(P.base)) == x);
}

TEST_CASE("bad cochain lines are parse errors") {
    auto P = make_fixture<Rational>("scalar-twist-2chain");
    auto M = diagonal_bimodule(P);
    GSComplex<Rational> gs(P, M);
    const auto& L = gs.layout(1);
    auto fib = gs_fiber(P.base);
    auto reads = [&](const std::string& text) {
        std::istringstream is(text);
        return read_cochain(is, P, L, fib);
    };
    std::vector<Rational> zero(static_cast<std::size_t>(L.size()), Rational(0));
    CHECK(reads("degree 1\n# nothing\n") == zero);
    CHECK_THROWS_AS(reads(""), ParseError);
    CHECK_THROWS_AS(reads("degree 2\n"), ParseError);
    CHECK_THROWS_AS(reads("degree x\n"), ParseError);
    CHECK_THROWS_AS(reads("degree 1\n1 | a01 | A A | 0 | 1\n"), ParseError);
    CHECK_THROWS_AS(reads("degree 1\n1 | zz | A | 0 | 1\n"), ParseError);
    CHECK_THROWS_AS(reads("degree 1\n1 | a01 a01 | A | 0 | 1\n"), ParseError);
    CHECK_THROWS_AS(reads("degree 1\n1 | a01 | A |\n"), ParseError);

    std::stringstream ss;
    auto x = random_coords<Rational>(L.size(), 2);
    write_cochain(ss, P, L, fib, x);
    std::string text = ss.str();
    auto bar = text.rfind('|');
    CHECK_THROWS_AS(reads(text.substr(0, bar) + "| 1/0\n"), ParseError);
    CHECK_THROWS_AS(reads(text.substr(0, bar) + "| 1 2\n"), ParseError);
}
