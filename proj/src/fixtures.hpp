// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "prestack.hpp"

namespace psk {

// Names of the shipped fixtures.
std::vector<std::string> fixture_names();

// Poset 0 < 1 < ... < n-1 with identities "1_i" and arrows "a<i><j>".
BaseCategory chain_poset(int n);
// Poset with objects 0, 1, 2, 3 and 0 < 1 < 3, 0 < 2 < 3.
BaseCategory square_poset();

// One-object fiber with endomorphisms k.
template <class K>
LinearCategory<K> ground_fiber() {
    LinearCategory<K> C({"A"}, {1});
    C.set_compose(0, 0, 0, 0, 0, {{0, from_int<K>(1)}});
    C.set_identity(0, {from_int<K>(1)});
    return C;
}

// Prestack with every fiber equal to k and every restriction the identity.
template <class K>
Prestack<K> constant_prestack(const BaseCategory& base) {
    Prestack<K> P;
    P.base = base;
    for (int U = 0; U < base.num_objects(); ++U) P.fibers.push_back(ground_fiber<K>());
    for (int u = 0; u < base.num_arrows(); ++u) P.restrictions.push_back(LinFunctor<K>::identity(P.fibers[0]));
    P.reset_twists();
    return P;
}

template <class K>
void set_scalar_twist(Prestack<K>& P, int first, int second, const K& value) {
    P.twists[first * P.base.num_arrows() + second] = {Mor<K>{value}};
}

// Scalar twists f, g -> h(f) h(g) / h(g f) on the 4-chain; `break_cocycle`
// rescales one value so that coherence fails on the triple (a01, a12, a23).
template <class K>
Prestack<K> scalar_twist_3chain(bool break_cocycle) {
    Prestack<K> P = constant_prestack<K>(chain_poset(4));
    const auto& B = P.base;
    auto h = [&](int a) -> long long {
        const std::string& n = B.arrow(a).name;
        if (n == "a01") return 2;
        if (n == "a12") return 3;
        if (n == "a23") return 5;
        if (n == "a02") return 7;
        if (n == "a13") return 11;
        if (n == "a03") return 13;
        return 1;
    };
    for (int f = 0; f < B.num_arrows(); ++f)
        for (int g = 0; g < B.num_arrows(); ++g) {
            if (B.tgt(f) != B.src(g) || B.is_identity(f) || B.is_identity(g)) continue;
            K v = from_int<K>(h(f) * h(g)) * inverse(from_int<K>(h(B.compose(f, g))));
            if (break_cocycle && B.arrow(f).name == "a01" && B.arrow(g).name == "a12") v *= from_int<K>(2);
            set_scalar_twist(P, f, g, v);
        }
    return P;
}

// One base object with arrows {1, e}, e e = e. The fiber has objects X, Y
// with Hom(A,B) = k{1_AB, x_AB}, x x = 0; e* swaps X and Y and the twist of
// (e, e) is 2 * 1_{A, e*A}.
template <class K>
Prestack<K> rank2_fiber() {
    Prestack<K> P;
    BaseCategory& B = P.base;
    int o = B.add_object("*");
    int one = B.add_arrow("1", o, o);
    int e = B.add_arrow("e", o, o);
    B.set_identity(o, one);
    B.set_compose(one, one, one);
    B.set_compose(one, e, e);
    B.set_compose(e, one, e);
    B.set_compose(e, e, e);
    LinearCategory<K> C({"X", "Y"}, {2, 2, 2, 2});
    for (int A = 0; A < 2; ++A)
        for (int Bo = 0; Bo < 2; ++Bo)
            for (int Co = 0; Co < 2; ++Co)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        if (i + j < 2) C.set_compose(A, Bo, Co, i, j, {{i + j, from_int<K>(1)}});
    C.set_identity(0, {from_int<K>(1), from_int<K>(0)});
    C.set_identity(1, {from_int<K>(1), from_int<K>(0)});
    P.fibers.push_back(C);
    P.restrictions.push_back(LinFunctor<K>::identity(C));
    LinFunctor<K> swap({1, 0}, 2);
    for (int A = 0; A < 2; ++A)
        for (int Bo = 0; Bo < 2; ++Bo) {
            DenseMat<K> m(2, 2);
            m.at(0, 0) = from_int<K>(1);
            m.at(1, 1) = from_int<K>(1);
            swap.set_matrix(A, Bo, m);
        }
    P.restrictions.push_back(swap);
    P.reset_twists();
    P.twists[e * B.num_arrows() + e] = {Mor<K>{from_int<K>(2), from_int<K>(0)},
                                        Mor<K>{from_int<K>(2), from_int<K>(0)}};
    return P;
}

// Builds a named fixture: "triv-A2", "triv-A3", "scalar-twist-2chain"
// (twist 3 on the composable pair of non-identities), "scalar-twist-3chain",
// "scalar-twist-3chain-bad", "rank2-fiber".
template <class K>
Prestack<K> make_fixture(const std::string& name) {
    if (name == "triv-A2") return constant_prestack<K>(chain_poset(2));
    if (name == "triv-A3") return constant_prestack<K>(chain_poset(3));
    if (name == "scalar-twist-2chain") {
        Prestack<K> P = constant_prestack<K>(chain_poset(3));
        set_scalar_twist(P, P.base.find_arrow("a01"), P.base.find_arrow("a12"), from_int<K>(3));
        return P;
    }
    if (name == "scalar-twist-3chain") return scalar_twist_3chain<K>(false);
    if (name == "scalar-twist-3chain-bad") return scalar_twist_3chain<K>(true);
    if (name == "rank2-fiber") return rank2_fiber<K>();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace psk
