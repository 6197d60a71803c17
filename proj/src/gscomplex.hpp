// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochain.hpp"
#include "combinatorics.hpp"
#include "prestack.hpp"

namespace psk {

// Selects summands of the GS differential. In total mode the simplicial
// part carries the sign (-1)^n of the output degree n.
struct GSParts {
    bool hoch = false;
    bool simp = false;
    int jmin = 2, jmax = 1;  // range of higher differentials d_j
    bool total = false;

    static GSParts all() { return {true, true, 2, 1 << 20, true}; }
    static GSParts hochschild() { return {true, false, 2, 1, false}; }
    static GSParts simplicial() { return {false, true, 2, 1, false}; }
    static GSParts higher(int j) { return {false, false, j, j, false}; }
    static GSParts classical() { return {true, true, 2, 1, true}; }
};

// Cochains of degree n: for each p <= n, simplex s = (u_1..u_p), objects
// A_0..A_q of A(U_p) (q = n - p) and basis morphisms x_j : A_j -> A_{j+1},
// a value in M^{U_0}(s_up A_0, s_low A_q), where s_up is the word functor
// u_1*...u_p* and s_low the restriction along the composite arrow.
template <class K>
class GSComplex {
public:
    GSComplex(const Prestack<K>& P, const Bimodule<K>& M) : P_(P), M_(M) {}

    const Prestack<K>& prestack() const { return P_; }
    const Bimodule<K>& bimodule() const { return M_; }

    const CochainLayout& layout(int n) const {
        auto it = layouts_.find(n);
        if (it != layouts_.end()) return *it->second;
        auto L = std::make_unique<CochainLayout>(P_.base, n);
        const auto& B = P_.base;
        for (int p = 0; p <= n; ++p) {
            L->add_length(p, B.nerve(p));
            int q = n - p;
            for (int sig = 0; sig < static_cast<int>(L->nerve(p).size()); ++sig) {
                const Simplex s = L->nerve(p)[sig];
                int Up = B.target(s), U0 = s.start;
                const auto& C = P_.fiber(Up);
                int comp = B.composite(s);
                std::vector<int> counts(q + 1, C.num_objects());
                L->add_sigma(p, sig, counts, [&](const std::vector<int>& objs) {
                    std::vector<int> ranks;
                    for (int i = 0; i < q; ++i) ranks.push_back(C.rank(objs[i], objs[i + 1]));
                    int a = P_.word_obj(s.arrows, objs[0]);
                    int b = P_.restrict_obj(comp, objs[q]);
                    return std::make_pair(ranks, M_.rank(U0, a, b));
                });
            }
        }
        auto& ref = *L;
        layouts_[n] = std::move(L);
        return ref;
    }

    // Value of the selected part of d(phi) at one output key of degree n.
    template <class Src>
    std::vector<typename Src::V> value(const Src& src, int n, int block, const std::vector<int>& basis,
                                       const GSParts& parts) const {
        using V = typename Src::V;
        const auto& Lo = layout(n);
        const auto& b = Lo.block(block);
        std::vector<V> out(static_cast<std::size_t>(b.dim));
        if (n == 0) return out;
        const Simplex& s = Lo.simplex_of(block);
        std::vector<Mor<K>> args;
        const auto& Cp = P_.fiber(P_.base.target(s));
        for (std::size_t i = 0; i < basis.size(); ++i)
            args.push_back(unit_vector<K>(Cp.rank(b.objs[i], b.objs[i + 1]), basis[i]));
        if (parts.hoch) add_hoch(src, n, s, b.objs, args, out);
        if (parts.simp) {
            K sign = from_int<K>((parts.total && n % 2) ? -1 : 1);
            add_simp(src, n, s, b.objs, args, sign, out);
        }
        for (int j = parts.jmin; j <= std::min(parts.jmax, s.length()); ++j)
            add_higher(src, n, j, s, b.objs, args, out);
        tidy_all(out);
        return out;
    }

    std::vector<K> apply(const std::vector<K>& phi, int n, const GSParts& parts = GSParts::all()) const {
        if (n > 0 && static_cast<long>(phi.size()) != layout(n - 1).size())
            throw std::invalid_argument("cochain has the wrong dimension");
        DenseSource<K> src{&phi};
        return collect_dense<K>(layout(n), [&](int b, const std::vector<int>& basis) {
            return value(src, n, b, basis, parts);
        });
    }

    // Matrix of the selected part of d : C^{n-1} -> C^n.
    SparseMatrix<K> matrix(int n, const GSParts& parts = GSParts::all()) const {
        long in = n > 0 ? layout(n - 1).size() : 0;
        FormSource<K> src;
        return collect_matrix<K>(layout(n), in, [&](int b, const std::vector<int>& basis) {
            return value(src, n, b, basis, parts);
        });
    }

    // Coordinates of degree n lying in the normalized reduced subcomplex.
    std::vector<char> nr_mask(int n) const {
        const auto& L = layout(n);
        std::vector<char> mask(static_cast<std::size_t>(L.size()), 0);
        for (int b = 0; b < static_cast<int>(L.blocks().size()); ++b) {
            const auto& bl = L.block(b);
            const auto& C = P_.fiber(P_.base.target(L.simplex_of(b)));
            for (std::size_t i = 0; i + 1 < bl.objs.size(); ++i)
                if (bl.objs[i] == bl.objs[i + 1] && C.rank(bl.objs[i], bl.objs[i]) > 0 &&
                    C.identity_basis(bl.objs[i]) < 0)
                    throw std::invalid_argument(
                        "normalized cochains need identity morphisms to be basis elements (object '" +
                        C.object_name(bl.objs[i]) + "')");
        }
        L.for_each_key([&](int b, const std::vector<int>& basis) {
            const auto& bl = L.block(b);
            if (P_.base.is_degenerate(L.simplex_of(b))) return;
            const auto& C = P_.fiber(P_.base.target(L.simplex_of(b)));
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (bl.objs[i] == bl.objs[i + 1] && basis[i] == C.identity_basis(bl.objs[i])) return;
            long c = L.coord(b, basis, 0);
            for (int j = 0; j < bl.dim; ++j) mask[c + j] = 1;
        });
        return mask;
    }

    bool is_reduced(const std::vector<K>& phi, int n) const {
        const auto& L = layout(n);
        for (long c = 0; c < L.size(); ++c)
            if (!is_zero(phi[c]) && P_.base.is_degenerate(L.simplex_of(L.decode(c).block))) return false;
        return true;
    }

    bool is_normalized(const std::vector<K>& phi, int n) const {
        const auto& L = layout(n);
        for (long c = 0; c < L.size(); ++c) {
            if (is_zero(phi[c])) continue;
            auto key = L.decode(c);
            const auto& bl = L.block(key.block);
            const auto& C = P_.fiber(P_.base.target(L.simplex_of(key.block)));
            for (std::size_t i = 0; i < key.basis.size(); ++i)
                if (bl.objs[i] == bl.objs[i + 1] && key.basis[i] == C.identity_basis(bl.objs[i])) return false;
        }
        return true;
    }

private:
    template <class Src>
    std::vector<typename Src::V> eval(const Src& src, int n, const Simplex& s, const std::vector<int>& objs,
                                      const std::vector<Mor<K>>& args) const {
        const auto& L = layout(n);
        return eval_block<K>(L, src, L.find_block(s, objs), args);
    }

    // d_Hoch: output has q+1 arguments x_0..x_q.
    template <class Src, class V>
    void add_hoch(const Src& src, int n, const Simplex& s, const std::vector<int>& objs,
                  const std::vector<Mor<K>>& x, std::vector<V>& out) const {
        int q = static_cast<int>(x.size()) - 1;
        if (q < 0) return;
        const auto& B = P_.base;
        int U0 = s.start, Up = B.target(s);
        const auto& C0 = P_.fiber(U0);
        const auto& Cp = P_.fiber(Up);
        int comp = B.composite(s);
        // sigma_low(x_q) . phi(x_0..x_{q-1})
        {
            std::vector<int> o(objs.begin(), objs.end() - 1);
            std::vector<Mor<K>> a(x.begin(), x.end() - 1);
            auto v = eval(src, n - 1, s, o, a);
            int a0 = P_.word_obj(s.arrows, objs[0]);
            int bq = P_.restrict_obj(comp, objs[q]), bq1 = P_.restrict_obj(comp, objs[q + 1]);
            auto m = P_.restrict_mor(comp, objs[q], objs[q + 1], x[q]);
            axpy_vec(out, from_int<K>(1), M_.left_act(C0, U0, a0, bq, bq1, m, v));
        }
        for (int j = 0; j < q; ++j) {
            std::vector<int> o = objs;
            o.erase(o.begin() + j + 1);
            std::vector<Mor<K>> a;
            for (int i = 0; i <= q; ++i) {
                if (i == j) a.push_back(Cp.compose(objs[j], objs[j + 1], objs[j + 2], x[j + 1], x[j]));
                else if (i != j + 1) a.push_back(x[i]);
            }
            auto v = eval(src, n - 1, s, o, a);
            axpy_vec(out, from_int<K>((q - j) % 2 ? -1 : 1), v);
        }
        // phi(x_1..x_q) . sigma_up(x_0)
        {
            std::vector<int> o(objs.begin() + 1, objs.end());
            std::vector<Mor<K>> a(x.begin() + 1, x.end());
            auto v = eval(src, n - 1, s, o, a);
            int a0 = P_.word_obj(s.arrows, objs[0]), a1 = P_.word_obj(s.arrows, objs[1]);
            int bq1 = P_.restrict_obj(comp, objs[q + 1]);
            auto m = P_.word_mor(s.arrows, objs[0], objs[1], x[0]);
            axpy_vec(out, from_int<K>((q + 1) % 2 ? -1 : 1), M_.right_act(C0, U0, a0, a1, bq1, v, m));
        }
    }

    // Simplicial part: output simplex of length P = p + 1.
    template <class Src, class V>
    void add_simp(const Src& src, int n, const Simplex& s, const std::vector<int>& objs,
                  const std::vector<Mor<K>>& x, const K& sign, std::vector<V>& out) const {
        int Pl = s.length();
        if (Pl < 1) return;
        const auto& B = P_.base;
        int q = static_cast<int>(x.size());
        int U0 = s.start;
        const auto& C0 = P_.fiber(U0);
        int comp = B.composite(s);
        int bq = P_.restrict_obj(comp, objs[q]);
        int a0 = P_.word_obj(s.arrows, objs[0]);
        // i = 0
        {
            Simplex f = B.face(s, 0);
            auto v = eval(src, n - 1, f, objs, x);
            int u1 = s.arrows[0];
            int X = P_.word_obj(f.arrows, objs[0]);
            int Y = P_.restrict_obj(B.composite(f), objs[q]);
            auto rv = M_.restrict(u1, X, Y, v);
            auto c = P_.c_sigma(s, 1, objs[q]);
            axpy_vec(out, sign, M_.left_act(C0, U0, a0, c.src, c.tgt, c.m, rv));
        }
        for (int i = 1; i < Pl; ++i) {
            Simplex f = B.face(s, i);
            auto v = eval(src, n - 1, f, objs, x);
            auto e = P_.merge(s.arrows, i, objs[0]);
            K sg = sign * from_int<K>(i % 2 ? -1 : 1);
            axpy_vec(out, sg, M_.right_act(C0, U0, e.src, e.tgt, bq, v, e.m));
        }
        // i = P
        {
            Simplex f = B.face(s, Pl);
            int uP = s.arrows[Pl - 1];
            std::vector<int> o;
            for (int A : objs) o.push_back(P_.restrict_obj(uP, A));
            std::vector<Mor<K>> a;
            for (int i = 0; i < q; ++i) a.push_back(P_.restrict_mor(uP, objs[i], objs[i + 1], x[i]));
            auto v = eval(src, n - 1, f, o, a);
            auto c = P_.c_sigma(s, Pl - 1, objs[q]);
            K sg = sign * from_int<K>(Pl % 2 ? -1 : 1);
            axpy_vec(out, sg, M_.left_act(C0, U0, a0, c.src, c.tgt, c.m, v));
        }
    }

    // d_j: output simplex of length p + j with t = x.size() arguments.
    template <class Src, class V>
    void add_higher(const Src& src, int n, int j, const Simplex& s, const std::vector<int>& objs,
                    const std::vector<Mor<K>>& x, std::vector<V>& out) const {
        int Pl = s.length();
        int p = Pl - j;
        int t = static_cast<int>(x.size());
        if (p < 0 || j < 2) return;
        const auto& B = P_.base;
        int U0 = s.start;
        const auto& C0 = P_.fiber(U0);
        Simplex Ls = B.left(s, p), Rs = B.right(s, p);
        auto cs = P_.c_sigma(s, p, objs[t]);
        int a0 = P_.word_obj(s.arrows, objs[0]);
        for (const Path& r : enumerate_paths(j)) {
            for (const Shuffle& beta : enumerate_shuffles({t, j - 1})) {
                std::vector<int> word = Rs.arrows;
                std::vector<int> so{P_.word_obj(word, objs[0])};
                std::vector<Mor<K>> sa;
                int cur = 0;
                for (auto [blk, idx] : beta.path_order()) {
                    if (blk == 0) {
                        sa.push_back(P_.word_mor(word, objs[cur], objs[cur + 1], x[cur]));
                        ++cur;
                        so.push_back(P_.word_obj(word, objs[cur]));
                    } else {
                        auto e = P_.merge(word, r.idx[idx], objs[cur]);
                        sa.push_back(std::move(e.m));
                        so.push_back(e.tgt);
                        word = Prestack<K>::merged_word(B, word, r.idx[idx]);
                    }
                }
                auto v = eval(src, n - 1, Ls, so, sa);
                int sg = r.sign * beta.sign * (t % 2 ? -1 : 1);
                axpy_vec(out, from_int<K>(sg), M_.left_act(C0, U0, a0, cs.src, cs.tgt, cs.m, v));
            }
        }
    }

    const Prestack<K>& P_;
    const Bimodule<K>& M_;
    mutable std::map<int, std::unique_ptr<CochainLayout>> layouts_;
};

}  // namespace psk
