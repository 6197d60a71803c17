// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "basecat.hpp"
#include "combinatorics.hpp"
#include "lincat.hpp"

namespace psk {

// A morphism together with its endpoints in some fiber.
template <class K>
struct Comp {
    int src = 0;
    int tgt = 0;
    Mor<K> m;
};

// Prestack over a finite base category. For an arrow u : V -> U the
// restriction u* goes from A(U) to A(V). The twist for a composable pair
// (first f : X -> Y, second g : Y -> Z) has components
// f* g* A -> (g f)* A in A(X) for A in A(Z).
//
// Words are lists of composable arrows (w_1, ..., w_k) in path order; the
// associated functor is w_1* ... w_k*, so w_k* is applied first.
template <class K>
class Prestack {
public:
    BaseCategory base;
    std::vector<LinearCategory<K>> fibers;
    std::vector<LinFunctor<K>> restrictions;
    // Indexed by first * num_arrows + second; an empty list means identity.
    std::vector<std::vector<Mor<K>>> twists;

    void reset_twists() {
        twists.assign(static_cast<std::size_t>(base.num_arrows()) * base.num_arrows(), {});
    }

    const LinearCategory<K>& fiber(int U) const { return fibers.at(U); }
    int restrict_obj(int u, int A) const { return restrictions[u].obj(A); }

    template <class V>
    std::vector<V> restrict_mor(int u, int A, int B, const std::vector<V>& x) const {
        return restrictions[u].apply(A, B, x);
    }

    // Object reached by applying the functor of a word to A.
    int word_obj(const std::vector<int>& word, int A) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) A = restrict_obj(*it, A);
        return A;
    }

    template <class V>
    std::vector<V> word_mor(const std::vector<int>& word, int A, int B, std::vector<V> x) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            x = restrict_mor(*it, A, B, x);
            A = restrict_obj(*it, A);
            B = restrict_obj(*it, B);
        }
        return x;
    }

    bool has_twist(int f, int g) const { return !twists[f * base.num_arrows() + g].empty(); }

    // Component of the twist of (f, g) at A in A(tgt g).
    Mor<K> twist(int f, int g, int A) const {
        const auto& t = twists[f * base.num_arrows() + g];
        if (!t.empty()) return t.at(A);
        return fiber(base.src(f)).identity(restrict_obj(base.compose(f, g), A));
    }

    // Merge of positions i, i+1 (1-based) of `word` at X: the whiskered
    // twist from word* X to the functor of the shortened word at X.
    Comp<K> merge(const std::vector<int>& word, int i, int X) const {
        int k = static_cast<int>(word.size());
        if (i < 1 || i >= k) throw std::out_of_range("merge index out of range");
        std::vector<int> suffix(word.begin() + i + 1, word.end());
        std::vector<int> prefix(word.begin(), word.begin() + i - 1);
        int f = word[i - 1], g = word[i];
        int Y = word_obj(suffix, X);
        int s = restrict_obj(f, restrict_obj(g, Y));
        int t = restrict_obj(base.compose(f, g), Y);
        Comp<K> c;
        c.m = word_mor(prefix, s, t, twist(f, g, Y));
        c.src = word_obj(prefix, s);
        c.tgt = word_obj(prefix, t);
        return c;
    }

    static std::vector<int> merged_word(const BaseCategory& b, std::vector<int> word, int i) {
        word[i - 1] = b.compose(word[i - 1], word[i]);
        word.erase(word.begin() + i);
        return word;
    }

    // c^{s,k} at A: (L_k s)* (R_k s)* A -> (s)* A in the fiber over the
    // start of s; identity for k = 0 and k = p.
    Comp<K> c_sigma(const Simplex& s, int k, int A) const {
        int p = s.length();
        if (k < 0 || k > p) throw std::out_of_range("c_sigma index out of range");
        int l = base.composite(base.left(s, k));
        int r = base.composite(base.right(s, k));
        Comp<K> c;
        c.src = restrict_obj(l, restrict_obj(r, A));
        c.tgt = restrict_obj(base.composite(s), A);
        c.m = twist(l, r, A);
        return c;
    }

    // Composite of the entries of a path on `word`, evaluated at X.
    Comp<K> path_comp(const std::vector<int>& word, const Path& r, int X) const {
        int n = static_cast<int>(word.size());
        if (n == 0) throw std::invalid_argument("path_comp needs a non-empty word");
        if (r.length() != n) throw std::invalid_argument("path length does not match word");
        const auto& fib = fiber(base.src(word[0]));
        Comp<K> acc;
        acc.src = acc.tgt = word_obj(word, X);
        acc.m = fib.identity(acc.src);
        std::vector<int> w = word;
        for (int k = n - 1; k >= 1; --k) {
            Comp<K> e = merge(w, r.idx[k - 1], X);
            acc.m = fib.compose(acc.src, e.src, e.tgt, e.m, acc.m);
            acc.tgt = e.tgt;
            w = merged_word(base, w, r.idx[k - 1]);
        }
        return acc;
    }

    std::optional<std::string> validate() const;
};

template <class K>
std::optional<std::string> Prestack<K>::validate() const {
    if (auto e = base.validate()) return "base category: " + *e;
    int nb = base.num_objects(), na = base.num_arrows();
    if (static_cast<int>(fibers.size()) != nb) return std::string("fiber count does not match base objects");
    if (static_cast<int>(restrictions.size()) != na) return std::string("restriction count does not match arrows");
    if (static_cast<int>(twists.size()) != na * na) return std::string("twist table has wrong size");
    for (int U = 0; U < nb; ++U)
        if (auto e = fibers[U].validate()) return "fiber over '" + base.object_name(U) + "': " + *e;
    for (int u = 0; u < na; ++u) {
        const auto& C = fiber(base.tgt(u));
        const auto& D = fiber(base.src(u));
        if (auto e = validate_functor(restrictions[u], C, D))
            return "restriction along '" + base.arrow(u).name + "': " + *e;
        if (base.is_identity(u)) {
            for (int A = 0; A < C.num_objects(); ++A)
                if (restrictions[u].obj(A) != A)
                    return "restriction along identity '" + base.arrow(u).name + "' moves objects";
            const auto id = LinFunctor<K>::identity(C);
            for (int A = 0; A < C.num_objects(); ++A)
                for (int B = 0; B < C.num_objects(); ++B)
                    if (!(restrictions[u].matrix(A, B) == id.matrix(A, B)))
                        return "restriction along identity '" + base.arrow(u).name + "' is not the identity";
        }
    }
    for (int f = 0; f < na; ++f)
        for (int g = 0; g < na; ++g) {
            if (base.tgt(f) != base.src(g)) continue;
            std::string pair = "('" + base.arrow(f).name + "', '" + base.arrow(g).name + "')";
            const auto& Z = fiber(base.tgt(g));
            const auto& X = fiber(base.src(f));
            int gf = base.compose(f, g);
            const auto& t = twists[f * na + g];
            if (!t.empty() && static_cast<int>(t.size()) != Z.num_objects())
                return "twist " + pair + " has the wrong number of components";
            NatTransform<K> nt;
            for (int A = 0; A < Z.num_objects(); ++A) {
                int s = restrict_obj(f, restrict_obj(g, A));
                int d = restrict_obj(gf, A);
                if (t.empty() && s != d)
                    return "twist " + pair + " omitted but objects differ at '" + Z.object_name(A) + "'";
                Mor<K> c = twist(f, g, A);
                if (static_cast<int>(c.size()) != X.rank(s, d))
                    return "twist " + pair + " component at '" + Z.object_name(A) + "' has wrong length";
                if ((base.is_identity(f) || base.is_identity(g)) && (s != d || c != X.identity(s)))
                    return "twist " + pair + " with an identity leg is not the identity at '" + Z.object_name(A) + "'";
                if (!X.inverse_of(s, d, c))
                    return "twist " + pair + " is not invertible at '" + Z.object_name(A) + "'";
                nt.components.push_back(std::move(c));
            }
            LinFunctor<K> fg = compose_functors(restrictions[f], restrictions[g]);
            if (auto e = validate_nat_transform(nt, fg, restrictions[gf], Z, X)) return "twist " + pair + ": " + *e;
        }
    for (int f1 = 0; f1 < na; ++f1)
        for (int f2 = 0; f2 < na; ++f2) {
            if (base.tgt(f1) != base.src(f2)) continue;
            for (int f3 = 0; f3 < na; ++f3) {
                if (base.tgt(f2) != base.src(f3)) continue;
                const auto& Z = fiber(base.tgt(f3));
                const auto& X = fiber(base.src(f1));
                int f21 = base.compose(f1, f2), f32 = base.compose(f2, f3), f321 = base.compose(f21, f3);
                for (int A = 0; A < Z.num_objects(); ++A) {
                    int a3 = restrict_obj(f3, A);
                    int start = restrict_obj(f1, restrict_obj(f2, a3));
                    int mid_l = restrict_obj(f21, a3);
                    int mid_r = restrict_obj(f1, restrict_obj(f32, A));
                    int end = restrict_obj(f321, A);
                    Mor<K> lhs = X.compose(start, mid_l, end, twist(f21, f3, A), twist(f1, f2, a3));
                    int g_s = restrict_obj(f2, a3), g_t = restrict_obj(f32, A);
                    Mor<K> rhs = X.compose(start, mid_r, end, twist(f1, f32, A),
                                           restrict_mor(f1, g_s, g_t, twist(f2, f3, A)));
                    if (lhs != rhs)
                        return "twist coherence fails for ('" + base.arrow(f1).name + "', '" + base.arrow(f2).name +
                               "', '" + base.arrow(f3).name + "') at object '" + Z.object_name(A) + "'";
                }
            }
        }
    return std::nullopt;
}

// The prestack viewed as a bimodule over itself.
template <class K>
Bimodule<K> diagonal_bimodule(const Prestack<K>& P) {
    Bimodule<K> M;
    for (int U = 0; U < P.base.num_objects(); ++U) {
        const auto& C = P.fiber(U);
        typename Bimodule<K>::Fiber f;
        f.n = C.num_objects();
        for (int A = 0; A < f.n; ++A)
            for (int B = 0; B < f.n; ++B) f.rank.push_back(C.rank(A, B));
        std::size_t n3 = static_cast<std::size_t>(f.n) * f.n * f.n;
        f.left.resize(n3);
        f.right.resize(n3);
        for (int A = 0; A < f.n; ++A)
            for (int B = 0; B < f.n; ++B)
                for (int D = 0; D < f.n; ++D) {
                    auto& l = f.left[Bimodule<K>::tri(f.n, A, B, D)];
                    auto& r = f.right[Bimodule<K>::tri(f.n, A, B, D)];
                    int rab = C.rank(A, B), rbd = C.rank(B, D);
                    l.resize(static_cast<std::size_t>(rab) * rbd);
                    r.resize(static_cast<std::size_t>(rab) * rbd);
                    for (int i = 0; i < rab; ++i)
                        for (int j = 0; j < rbd; ++j) {
                            l[static_cast<std::size_t>(j) * rab + i] = C.compose_basis(A, B, D, i, j);
                            r[static_cast<std::size_t>(j) * rab + i] = C.compose_basis(A, B, D, i, j);
                        }
                }
        M.fibers.push_back(std::move(f));
    }
    M.restrictions = P.restrictions;
    return M;
}

// Exhaustive check of the bimodule axioms, restriction compatibility and
// twist coherence of the restriction maps.
template <class K>
std::optional<std::string> validate_bimodule(const Prestack<K>& P, const Bimodule<K>& M) {
    int nb = P.base.num_objects();
    if (static_cast<int>(M.fibers.size()) != nb) return std::string("bimodule fiber count mismatch");
    auto unit = [](int r, int i) { return unit_vector<K>(r, i); };
    for (int U = 0; U < nb; ++U) {
        const auto& C = P.fiber(U);
        int n = C.num_objects();
        std::string at = " over '" + P.base.object_name(U) + "'";
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B)
                for (int i = 0; i < M.rank(U, A, B); ++i) {
                    Mor<K> m = unit(M.rank(U, A, B), i);
                    if (M.left_act(C, U, A, B, B, C.identity(B), m) != m) return "left unit fails" + at;
                    if (M.right_act(C, U, A, A, B, m, C.identity(A)) != m) return "right unit fails" + at;
                    for (int D = 0; D < n; ++D)
                        for (int E = 0; E < n; ++E)
                            for (int j = 0; j < C.rank(B, D); ++j)
                                for (int k = 0; k < C.rank(D, E); ++k) {
                                    Mor<K> a = unit(C.rank(B, D), j), b = unit(C.rank(D, E), k);
                                    auto l = M.left_act(C, U, A, D, E, b, M.left_act(C, U, A, B, D, a, m));
                                    auto r = M.left_act(C, U, A, B, E, C.compose(B, D, E, b, a), m);
                                    if (l != r) return "left action is not associative" + at;
                                }
                    for (int D = 0; D < n; ++D)
                        for (int E = 0; E < n; ++E)
                            for (int j = 0; j < C.rank(D, A); ++j)
                                for (int k = 0; k < C.rank(E, D); ++k) {
                                    Mor<K> a = unit(C.rank(D, A), j), a2 = unit(C.rank(E, D), k);
                                    auto l = M.right_act(C, U, E, D, B, M.right_act(C, U, D, A, B, m, a), a2);
                                    auto r = M.right_act(C, U, E, A, B, m, C.compose(E, D, A, a, a2));
                                    if (l != r) return "right action is not associative" + at;
                                }
                    for (int D = 0; D < n; ++D)
                        for (int E = 0; E < n; ++E)
                            for (int j = 0; j < C.rank(B, D); ++j)
                                for (int k = 0; k < C.rank(E, A); ++k) {
                                    Mor<K> a = unit(C.rank(B, D), j), a2 = unit(C.rank(E, A), k);
                                    auto l = M.right_act(C, U, E, A, D, M.left_act(C, U, A, B, D, a, m), a2);
                                    auto r = M.left_act(C, U, E, B, D, a, M.right_act(C, U, E, A, B, m, a2));
                                    if (l != r) return "left and right actions do not commute" + at;
                                }
                }
    }
    int na = P.base.num_arrows();
    for (int u = 0; u < na; ++u) {
        int U = P.base.tgt(u), V = P.base.src(u);
        const auto& C = P.fiber(U);
        const auto& D = P.fiber(V);
        const auto& R = M.restrictions[u];
        int n = C.num_objects();
        std::string at = " along '" + P.base.arrow(u).name + "'";
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B) {
                const auto& mat = R.matrix(A, B);
                if (mat.cols != M.rank(U, A, B) || mat.rows != M.rank(V, R.obj(A), R.obj(B)))
                    return "restriction matrix has wrong shape" + at;
            }
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B)
                for (int i = 0; i < M.rank(U, A, B); ++i) {
                    Mor<K> m = unit(M.rank(U, A, B), i);
                    auto rm = M.restrict(u, A, B, m);
                    if (P.base.is_identity(u) && rm != m) return "restriction is not the identity" + at;
                    for (int E = 0; E < n; ++E) {
                        for (int j = 0; j < C.rank(B, E); ++j) {
                            Mor<K> a = unit(C.rank(B, E), j);
                            auto l = M.restrict(u, A, E, M.left_act(C, U, A, B, E, a, m));
                            auto r = M.left_act(D, V, R.obj(A), R.obj(B), R.obj(E), P.restrict_mor(u, B, E, a), rm);
                            if (l != r) return "restriction does not commute with the left action" + at;
                        }
                        for (int j = 0; j < C.rank(E, A); ++j) {
                            Mor<K> a = unit(C.rank(E, A), j);
                            auto l = M.restrict(u, E, B, M.right_act(C, U, E, A, B, m, a));
                            auto r = M.right_act(D, V, R.obj(E), R.obj(A), R.obj(B), rm, P.restrict_mor(u, E, A, a));
                            if (l != r) return "restriction does not commute with the right action" + at;
                        }
                    }
                }
    }
    for (int f = 0; f < na; ++f)
        for (int g = 0; g < na; ++g) {
            if (P.base.tgt(f) != P.base.src(g)) continue;
            int Z = P.base.tgt(g), X = P.base.src(f);
            int gf = P.base.compose(f, g);
            const auto& CZ = P.fiber(Z);
            const auto& CX = P.fiber(X);
            for (int A = 0; A < CZ.num_objects(); ++A)
                for (int B = 0; B < CZ.num_objects(); ++B)
                    for (int i = 0; i < M.rank(Z, A, B); ++i) {
                        Mor<K> m = unit(M.rank(Z, A, B), i);
                        int gA = P.restrict_obj(g, A), gB = P.restrict_obj(g, B);
                        int fgA = P.restrict_obj(f, gA), fgB = P.restrict_obj(f, gB);
                        int cA = P.restrict_obj(gf, A), cB = P.restrict_obj(gf, B);
                        auto two = M.restrict(f, gA, gB, M.restrict(g, A, B, m));
                        auto one = M.restrict(gf, A, B, m);
                        auto l = M.left_act(CX, X, fgA, fgB, cB, P.twist(f, g, B), two);
                        auto r = M.right_act(CX, X, fgA, cA, cB, one, P.twist(f, g, A));
                        if (l != r)
                            return "restriction is not coherent with the twist of ('" + P.base.arrow(f).name + "', '" +
                                   P.base.arrow(g).name + "')";
                    }
        }
    return std::nullopt;
}

}  // namespace psk
