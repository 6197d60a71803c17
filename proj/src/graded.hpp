// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochain.hpp"
#include "prestack.hpp"

namespace psk {

// ---- Grothendieck construction --------------------------------------------
//
// Objects are pairs (U, A) with A in A(U). A morphism (V, A) -> (U, B)
// graded by u : V -> U is a morphism A -> u*B of the domain fiber A(V).

// One morphism of the Grothendieck construction.
template <class K>
struct GradedMor {
    int u = 0;    // grading arrow
    int src = 0;  // object of A(src u)
    int tgt = 0;  // object of A(tgt u)
    Mor<K> m;     // in Hom_{A(src u)}(src, u* tgt)
};

template <class K>
class Grothendieck {
public:
    explicit Grothendieck(const Prestack<K>& P) : P_(P) {}

    const Prestack<K>& prestack() const { return P_; }

    // Rank of the hom space graded by u from A in A(src u) to B in A(tgt u).
    int hom_rank(int u, int A, int B) const {
        return P_.fiber(P_.base.src(u)).rank(A, P_.restrict_obj(u, B));
    }

    GradedMor<K> identity(int U, int A) const {
        int id = P_.base.identity(U);
        return {id, A, A, P_.fiber(U).identity(A)};
    }

    // b after a: twist(u, v)_C . u*(b) . a.
    GradedMor<K> compose(const GradedMor<K>& b, const GradedMor<K>& a) const {
        const auto& B = P_.base;
        if (B.tgt(a.u) != B.src(b.u) || a.tgt != b.src) throw std::invalid_argument("graded morphisms do not compose");
        int u = a.u, v = b.u;
        int vu = B.compose(u, v);
        const auto& F = P_.fiber(B.src(u));
        int uB = P_.restrict_obj(u, b.src);
        int uvC = P_.restrict_obj(u, P_.restrict_obj(v, b.tgt));
        int cC = P_.restrict_obj(vu, b.tgt);
        Mor<K> ub = P_.restrict_mor(u, b.src, P_.restrict_obj(v, b.tgt), b.m);
        Mor<K> x = F.compose(a.src, uB, uvC, ub, a.m);
        return {vu, a.src, b.tgt, F.compose(a.src, uvC, cC, P_.twist(u, v, b.tgt), x)};
    }

    // Exhaustive associativity and unit check on basis morphisms.
    std::optional<std::string> validate() const {
        const auto& B = P_.base;
        auto basis = [&](int u, int A, int Bo) {
            std::vector<GradedMor<K>> out;
            int r = hom_rank(u, A, Bo);
            for (int i = 0; i < r; ++i) out.push_back({u, A, Bo, unit_vector<K>(r, i)});
            return out;
        };
        for (int u = 0; u < B.num_arrows(); ++u) {
            int V = B.src(u), U = B.tgt(u);
            for (int A = 0; A < P_.fiber(V).num_objects(); ++A)
                for (int Bo = 0; Bo < P_.fiber(U).num_objects(); ++Bo)
                    for (const auto& a : basis(u, A, Bo)) {
                        auto l = compose(identity(U, Bo), a), r = compose(a, identity(V, A));
                        if (l.u != u || l.m != a.m || r.u != u || r.m != a.m)
                            return "unit law fails for arrow '" + B.arrow(u).name + "'";
                        for (int v = 0; v < B.num_arrows(); ++v) {
                            if (B.src(v) != U) continue;
                            for (int C = 0; C < P_.fiber(B.tgt(v)).num_objects(); ++C)
                                for (const auto& b : basis(v, Bo, C)) {
                                    auto ba = compose(b, a);
                                    for (int w = 0; w < B.num_arrows(); ++w) {
                                        if (B.src(w) != B.tgt(v)) continue;
                                        for (int D = 0; D < P_.fiber(B.tgt(w)).num_objects(); ++D)
                                            for (const auto& c : basis(w, C, D))
                                                if (compose(c, ba).m != compose(compose(c, b), a).m)
                                                    return "composition is not associative on ('" + B.arrow(u).name +
                                                           "', '" + B.arrow(v).name + "', '" + B.arrow(w).name + "')";
                                    }
                                }
                        }
                    }
        }
        return std::nullopt;
    }

private:
    const Prestack<K>& P_;
};

// ---- tilde bimodule -------------------------------------------------------
//
// The graded piece over u : V -> U from A to B is M^V(A, u*B). Elements are
// handled as coordinate vectors (scalars or linear forms).

template <class K>
class TildeBimodule {
public:
    TildeBimodule(const Prestack<K>& P, const Bimodule<K>& M) : P_(P), M_(M) {}

    int rank(int u, int A, int B) const { return M_.rank(P_.base.src(u), A, P_.restrict_obj(u, B)); }

    // b . x for x over u from A to B and b : B -> v*C over v.
    template <class V>
    std::vector<V> left(const GradedMor<K>& b, int u, int A, const std::vector<V>& x) const {
        const auto& Bc = P_.base;
        int v = b.u, X = Bc.src(u);
        int vu = Bc.compose(u, v);
        const auto& F = P_.fiber(X);
        int uB = P_.restrict_obj(u, b.src);
        int vC = P_.restrict_obj(v, b.tgt);
        int uvC = P_.restrict_obj(u, vC);
        int cC = P_.restrict_obj(vu, b.tgt);
        auto ub = P_.restrict_mor(u, b.src, vC, b.m);
        auto y = M_.left_act(F, X, A, uB, uvC, ub, x);
        return M_.left_act(F, X, A, uvC, cC, P_.twist(u, v, b.tgt), y);
    }

    // x . a for a : A -> u*B over u and x over v from B to C.
    template <class V>
    std::vector<V> right(const std::vector<V>& x, int v, int C, const GradedMor<K>& a) const {
        const auto& Bc = P_.base;
        int u = a.u, X = Bc.src(u);
        int vu = Bc.compose(u, v);
        const auto& F = P_.fiber(X);
        int vC = P_.restrict_obj(v, C);
        int uB = P_.restrict_obj(u, a.tgt);
        int uvC = P_.restrict_obj(u, vC);
        int cC = P_.restrict_obj(vu, C);
        auto rx = M_.restrict(u, a.tgt, vC, x);
        auto y = M_.right_act(F, X, a.src, uB, uvC, rx, a.m);
        return M_.left_act(F, X, a.src, uvC, cC, P_.twist(u, v, C), y);
    }

private:
    const Prestack<K>& P_;
    const Bimodule<K>& M_;
};

// ---- graded chains --------------------------------------------------------

// A string of composable graded morphisms starting over the object `start`.
template <class K>
struct GradedString {
    int start = 0;
    std::vector<GradedMor<K>> entries;

    int length() const { return static_cast<int>(entries.size()); }
    Simplex simp() const {
        Simplex s{start, {}};
        for (const auto& e : entries) s.arrows.push_back(e.u);
        return s;
    }
};

// Integer combination of graded strings.
template <class K>
struct GradedChain {
    std::vector<std::pair<long, GradedString<K>>> terms;

    void add(long c, GradedString<K> s) {
        if (c != 0) terms.push_back({c, std::move(s)});
    }
    void add(long c, const GradedChain& o) {
        for (const auto& [d, s] : o.terms) add(c * d, s);
    }
};

// Face i of a string of length n: drops the first entry (i = 0), composes
// entries i-1 and i (0 < i < n), or drops the last entry (i = n).
template <class K>
GradedString<K> chain_face(const Grothendieck<K>& G, const GradedString<K>& x, int i) {
    int n = x.length();
    if (n < 2) throw std::invalid_argument("face of a string of length < 2");
    if (i < 0 || i > n) throw std::out_of_range("face index out of range");
    GradedString<K> y;
    if (i == 0) {
        y.start = G.prestack().base.tgt(x.entries[0].u);
        y.entries.assign(x.entries.begin() + 1, x.entries.end());
    } else if (i == n) {
        y.start = x.start;
        y.entries.assign(x.entries.begin(), x.entries.end() - 1);
    } else {
        y.start = x.start;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            if (k == i - 1) y.entries.push_back(G.compose(x.entries[i], x.entries[i - 1]));
            else y.entries.push_back(x.entries[k]);
        }
    }
    return y;
}

template <class K>
GradedChain<K> chain_face(const Grothendieck<K>& G, const GradedChain<K>& x, int i) {
    GradedChain<K> y;
    for (const auto& [c, s] : x.terms) y.add(c, chain_face(G, s, i));
    return y;
}

template <class K>
GradedString<K> chain_concat(const BaseCategory& B, const GradedString<K>& x, const GradedString<K>& y) {
    int end = x.entries.empty() ? x.start : B.tgt(x.entries.back().u);
    if (end != y.start) throw std::invalid_argument("strings do not concatenate: base objects differ");
    if (!x.entries.empty() && !y.entries.empty() && x.entries.back().tgt != y.entries.front().src)
        throw std::invalid_argument("strings do not concatenate: fiber objects differ");
    GradedString<K> z = x;
    z.entries.insert(z.entries.end(), y.entries.begin(), y.entries.end());
    return z;
}

template <class K>
GradedChain<K> chain_concat(const BaseCategory& B, const GradedChain<K>& x, const GradedChain<K>& y) {
    GradedChain<K> z;
    for (const auto& [c, s] : x.terms)
        for (const auto& [d, t] : y.terms) z.add(c * d, chain_concat(B, s, t));
    return z;
}

// ---- graded Hochschild complex --------------------------------------------
//
// Cochains of degree n: for each n-simplex s, objects A_i of A(U_i) and basis
// morphisms y_j : A_j -> u_{j+1}* A_{j+1}, a value in M^{U_0}(A_0, |s|* A_n).

template <class K>
class GradedComplex {
public:
    GradedComplex(const Prestack<K>& P, const Bimodule<K>& M) : P_(P), M_(M), G_(P), T_(P, M) {}

    const Prestack<K>& prestack() const { return P_; }
    const Grothendieck<K>& category() const { return G_; }
    const TildeBimodule<K>& tilde() const { return T_; }

    const CochainLayout& layout(int n) const {
        auto it = layouts_.find(n);
        if (it != layouts_.end()) return *it->second;
        const auto& B = P_.base;
        auto L = std::make_unique<CochainLayout>(B, n);
        L->add_length(n, B.nerve(n));
        for (int sig = 0; sig < static_cast<int>(L->nerve(n).size()); ++sig) {
            const Simplex s = L->nerve(n)[sig];
            std::vector<int> counts;
            for (int i = 0; i <= n; ++i) counts.push_back(P_.fiber(B.object_at(s, i)).num_objects());
            int comp = B.composite(s);
            L->add_sigma(n, sig, counts, [&](const std::vector<int>& objs) {
                std::vector<int> ranks;
                for (int i = 0; i < n; ++i) ranks.push_back(G_.hom_rank(s.arrows[i], objs[i], objs[i + 1]));
                return std::make_pair(ranks, T_.rank(comp, objs[0], objs[n]));
            });
        }
        auto& ref = *L;
        layouts_[n] = std::move(L);
        return ref;
    }

    // Basis string of one key.
    GradedString<K> key_string(int n, int block, const std::vector<int>& basis) const {
        const auto& L = layout(n);
        const auto& b = L.block(block);
        const Simplex& s = L.simplex_of(block);
        GradedString<K> x{s.start, {}};
        for (int i = 0; i < n; ++i)
            x.entries.push_back({s.arrows[i], b.objs[i], b.objs[i + 1], unit_vector<K>(b.ranks[i], basis[i])});
        return x;
    }

    // Cochain of degree x.length() evaluated on a string.
    template <class Src>
    std::vector<typename Src::V> eval(const Src& src, const GradedString<K>& x) const {
        int n = x.length();
        const auto& L = layout(n);
        std::vector<int> objs;
        std::vector<Mor<K>> args;
        if (n == 0) throw std::invalid_argument("evaluation on an empty string needs an object");
        for (const auto& e : x.entries) {
            objs.push_back(e.src);
            args.push_back(e.m);
        }
        objs.push_back(x.entries.back().tgt);
        return eval_block<K>(L, src, L.find_block(x.simp(), objs), args);
    }

    // Degree-0 value at the object A of A(U).
    template <class Src>
    std::vector<typename Src::V> eval0(const Src& src, int U, int A) const {
        const auto& L = layout(0);
        return eval_block<K>(L, src, L.find_block(Simplex{U, {}}, {A}), {});
    }

    // Linear extension over a chain; strings of the wrong length are ignored.
    template <class Src>
    std::vector<typename Src::V> eval_on_chain(const Src& src, int n, const GradedChain<K>& x, int dim) const {
        std::vector<typename Src::V> out(static_cast<std::size_t>(dim));
        for (const auto& [c, s] : x.terms)
            if (s.length() == n) axpy_vec(out, from_int<K>(c), eval(src, s));
        tidy_all(out);
        return out;
    }

    // delta(Psi) at one output key of degree n.
    template <class Src>
    std::vector<typename Src::V> value(const Src& src, int n, int block, const std::vector<int>& basis) const {
        using V = typename Src::V;
        const auto& Lo = layout(n);
        const auto& b = Lo.block(block);
        std::vector<V> out(static_cast<std::size_t>(b.dim));
        if (n == 0) return out;
        const auto& B = P_.base;
        GradedString<K> y = key_string(n, block, basis);
        int m = n - 1;
        // y_m . Psi(y_0..y_{m-1})
        {
            std::vector<V> v;
            int u;
            if (m == 0) {
                v = eval0(src, y.start, b.objs[0]);
                u = B.identity(y.start);
            } else {
                GradedString<K> h = chain_face(G_, y, n);
                v = eval(src, h);
                u = B.composite(h.simp());
            }
            axpy_vec(out, from_int<K>(1), T_.left(y.entries[m], u, b.objs[0], v));
        }
        for (int j = 0; j < m; ++j) {
            auto v = eval(src, chain_face(G_, y, j + 1));
            axpy_vec(out, from_int<K>((m - j) % 2 ? -1 : 1), v);
        }
        // Psi(y_1..y_m) . y_0
        {
            std::vector<V> v;
            int u;
            int U1 = B.tgt(y.entries[0].u);
            if (m == 0) {
                v = eval0(src, U1, b.objs[1]);
                u = B.identity(U1);
            } else {
                GradedString<K> t = chain_face(G_, y, 0);
                v = eval(src, t);
                u = B.composite(t.simp());
            }
            axpy_vec(out, from_int<K>((m + 1) % 2 ? -1 : 1), T_.right(v, u, b.objs[n], y.entries[0]));
        }
        tidy_all(out);
        return out;
    }

    std::vector<K> apply(const std::vector<K>& psi, int n) const {
        if (n > 0 && static_cast<long>(psi.size()) != layout(n - 1).size())
            throw std::invalid_argument("cochain has the wrong dimension");
        DenseSource<K> src{&psi};
        return collect_dense<K>(layout(n), [&](int b, const std::vector<int>& basis) { return value(src, n, b, basis); });
    }

    // Matrix of delta : C^{n-1} -> C^n.
    SparseMatrix<K> matrix(int n) const {
        long in = n > 0 ? layout(n - 1).size() : 0;
        FormSource<K> src;
        return collect_matrix<K>(layout(n), in, [&](int b, const std::vector<int>& basis) {
            return value(src, n, b, basis);
        });
    }

private:
    const Prestack<K>& P_;
    const Bimodule<K>& M_;
    Grothendieck<K> G_;
    TildeBimodule<K> T_;
    mutable std::map<int, std::unique_ptr<CochainLayout>> layouts_;
};

}  // namespace psk
