// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "graded.hpp"
#include "gscomplex.hpp"

namespace psk {

// Degree caps of the exhaustive term enumeration: F and G are built up to
// degree `fg`, the homotopy T up to output degree `t`.
struct CompareCaps {
    int fg = 4;
    int t = 3;
};

// A composable string of fiber morphisms (path order) with a sign.
template <class K>
struct SeqElement {
    std::vector<Comp<K>> items;
    int sign = 1;
};

// A conditioned shuffle product: blocks in source order, the formal order
// as (block, item) pairs with item 0 the head of a block and item t >= 1 the
// entry r_t of the block's path, and the path of every block.
struct SeqqElement {
    std::vector<int> blocks;
    std::vector<std::pair<int, int>> formal;
    std::vector<Path> paths;
    int sign = 1;
};

// Composite of the fiber morphisms z_j : Z_j -> s_{j+1}* Z_{j+1}, restricted
// along the word of the first j arrows: Z_0 -> s* Z_m in the fiber over the
// start of s. The identity of Z_0 for an empty simplex.
template <class K>
Comp<K> word_composite(const Prestack<K>& P, const Simplex& s, const std::vector<int>& objs,
                       const std::vector<Mor<K>>& z) {
    int m = s.length();
    const auto& F = P.fiber(s.start);
    Comp<K> acc{objs[0], objs[0], F.identity(objs[0])};
    for (int j = 0; j < m; ++j) {
        std::vector<int> w(s.arrows.begin(), s.arrows.begin() + j);
        std::vector<int> w1(s.arrows.begin(), s.arrows.begin() + j + 1);
        int tgt_inner = P.restrict_obj(s.arrows[j], objs[j + 1]);
        Mor<K> e = P.word_mor(w, objs[j], tgt_inner, z[j]);
        int t = P.word_obj(w1, objs[j + 1]);
        acc.m = F.compose(acc.src, acc.tgt, t, e, acc.m);
        acc.tgt = t;
    }
    return acc;
}

// Block composites of a word split by a partition (source order).
inline std::vector<int> block_word(const BaseCategory& B, const Simplex& s, const std::vector<int>& blocks) {
    std::vector<int> w;
    int off = 0;
    for (int m : blocks) {
        w.push_back(B.composite(B.sub(s, off, off + m)));
        off += m;
    }
    return w;
}

// c^{s, blocks} at A: from (block word)* A to |s|* A, evaluated along the
// path that always merges the first two entries.
template <class K>
Comp<K> c_sigma_partition(const Prestack<K>& P, const Simplex& s, const std::vector<int>& blocks, int A) {
    int total = 0;
    for (int m : blocks) total += m;
    if (total != s.length()) throw std::invalid_argument("partition does not match simplex length");
    std::vector<int> w = block_word(P.base, s, blocks);
    if (w.size() <= 1) {
        int X = P.word_obj(w, A);
        return {X, X, P.fiber(s.start).identity(X)};
    }
    Path r;
    r.idx.assign(w.size() - 1, 1);
    r.sign = path_sign(r.idx);
    return P.path_comp(w, r, A);
}

// Seq(s, z, blocks): strings in the fiber over the start of s from objs[0]
// to (block word)* objs.back(), where z_j : objs[j] -> s_{j+1}* objs[j+1].
template <class K>
std::vector<SeqElement<K>> seq_enumerate(const Prestack<K>& P, const Simplex& s, const std::vector<int>& objs,
                                         const std::vector<Mor<K>>& z, const std::vector<int>& blocks) {
    const auto& B = P.base;
    int N = s.length();
    if (N == 0) {
        if (!blocks.empty()) throw std::invalid_argument("non-empty partition of an empty simplex");
        return {SeqElement<K>{}};
    }
    if (blocks.empty()) throw std::invalid_argument("empty partition of a non-empty simplex");
    int m = blocks[0];
    Simplex Lm = B.left(s, m), Rm = B.right(s, m);
    std::vector<int> lo(objs.begin(), objs.begin() + m + 1), ro(objs.begin() + m, objs.end());
    std::vector<Mor<K>> lz(z.begin(), z.begin() + m), rz(z.begin() + m, z.end());
    Comp<K> head = word_composite(P, Lm, lo, lz);
    auto sub = seq_enumerate(P, Rm, ro, rz, std::vector<int>(blocks.begin() + 1, blocks.end()));
    auto paths = paths_or_trivial(m);
    auto shuffles = enumerate_shuffles({N - m, m - 1});
    std::vector<SeqElement<K>> out;
    for (const auto& xi : sub)
        for (const auto& r : paths)
            for (const auto& beta : shuffles) {
                SeqElement<K> e;
                e.items.push_back(head);
                std::vector<int> W = Lm.arrows;
                int cur = objs[m];
                std::size_t it = 0;
                for (auto [blk, t] : beta.path_order()) {
                    if (blk == 0) {
                        const auto& x = xi.items[it++];
                        e.items.push_back({P.word_obj(W, x.src), P.word_obj(W, x.tgt), P.word_mor(W, x.src, x.tgt, x.m)});
                        cur = x.tgt;
                    } else {
                        e.items.push_back(P.merge(W, r.idx[t], cur));
                        W = Prestack<K>::merged_word(B, W, r.idx[t]);
                    }
                }
                e.sign = xi.sign * r.sign * beta.sign;
                out.push_back(std::move(e));
            }
    return out;
}

// Seqq(s, blocks): conditioned shuffles of the blocks (1, r^i), read with
// the last source block first, together with one path per block.
inline std::vector<SeqqElement> seqq_enumerate(const std::vector<int>& blocks) {
    int k = static_cast<int>(blocks.size());
    std::vector<int> paper(blocks.rbegin(), blocks.rend());
    std::vector<std::vector<Path>> choices;
    for (int m : blocks) choices.push_back(paths_or_trivial(m));
    std::vector<SeqqElement> out;
    for (const auto& g : enumerate_conditioned(paper)) {
        std::vector<std::pair<int, int>> formal;
        for (auto [pb, t] : g.formal_order()) formal.push_back({k - 1 - pb, t});
        std::vector<std::size_t> pick(k, 0);
        while (true) {
            SeqqElement e;
            e.blocks = blocks;
            e.formal = formal;
            e.sign = g.sign;
            for (int b = 0; b < k; ++b) {
                e.paths.push_back(choices[b][pick[b]]);
                e.sign *= e.paths.back().sign;
            }
            out.push_back(std::move(e));
            int i = k - 1;
            while (i >= 0 && ++pick[i] == choices[i].size()) pick[i--] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

// The graded string a *_omega zeta over s: a is a string of fiber morphisms
// over the target of s starting at `first` (used when a is empty); omega
// shuffles the items of a (block 0) with the formal sequence of zeta
// (block 1).
template <class K>
GradedString<K> graded_shuffle(const Prestack<K>& P, const Simplex& s, const std::vector<Comp<K>>& a, int first,
                               const SeqqElement& zeta, const Shuffle& omega) {
    const auto& B = P.base;
    int k = static_cast<int>(zeta.blocks.size());
    if (omega.blocks.size() != 2 || omega.blocks[0] != static_cast<int>(a.size()) ||
        omega.blocks[1] != static_cast<int>(zeta.formal.size()))
        throw std::invalid_argument("graded_shuffle: shuffle shape does not match");
    std::vector<std::vector<int>> W;
    int off = 0;
    for (int m : zeta.blocks) {
        W.emplace_back(s.arrows.begin() + off, s.arrows.begin() + off + m);
        off += m;
    }
    if (off != s.length()) throw std::invalid_argument("graded_shuffle: partition does not match simplex");
    int L = 0;
    int U = s.start;
    int cur = first;
    std::size_t ai = 0;
    auto full = [&]() {
        std::vector<int> w;
        for (int b = L; b < k; ++b) w.insert(w.end(), W[b].begin(), W[b].end());
        return w;
    };
    GradedString<K> out{s.start, {}};
    for (auto [blk, t] : omega.path_order()) {
        std::vector<int> Wf = full();
        if (blk == 0) {
            const auto& x = a[ai++];
            if (x.src != cur) throw std::invalid_argument("graded_shuffle: string is not composable");
            out.entries.push_back({B.identity(U), P.word_obj(Wf, x.src), P.word_obj(Wf, x.tgt),
                                   P.word_mor(Wf, x.src, x.tgt, x.m)});
            cur = x.tgt;
            continue;
        }
        auto [b, it] = zeta.formal[t];
        if (b < L) throw std::logic_error("graded_shuffle: item of a finished block");
        if (it >= 1) {
            int local = zeta.paths[b].idx[it - 1];
            int g = local;
            for (int c = L; c < b; ++c) g += static_cast<int>(W[c].size());
            Comp<K> e = P.merge(Wf, g, cur);
            out.entries.push_back({B.identity(U), e.src, e.tgt, std::move(e.m)});
            W[b] = Prestack<K>::merged_word(B, W[b], local);
        } else {
            if (b != L || W[L].size() != 1) throw std::logic_error("graded_shuffle: block head out of order");
            int w = W[L][0];
            ++L;
            int X = P.word_obj(full(), cur);
            int wX = P.restrict_obj(w, X);
            out.entries.push_back({w, wX, X, P.fiber(B.src(w)).identity(wX)});
            U = B.tgt(w);
        }
    }
    return out;
}

// One term of the homotopy: sign * tail . Psi(string).
template <class K>
struct OmegaTerm {
    long coef = 1;
    GradedString<K> string;
    GradedMor<K> tail;
};

template <class K>
class Comparison {
public:
    Comparison(const GSComplex<K>& gs, const GradedComplex<K>& gr, CompareCaps caps = {})
        : gs_(gs), gr_(gr), P_(gs.prestack()), caps_(caps) {}

    const CompareCaps& caps() const { return caps_; }

    // (F phi) at a graded key of degree n.
    template <class Src>
    std::vector<typename Src::V> F_value(const Src& src, int n, int block, const std::vector<int>& basis) const {
        using V = typename Src::V;
        check_cap(n, caps_.fg, "F");
        const auto& B = P_.base;
        const auto& Lo = gr_.layout(n);
        const auto& bl = Lo.block(block);
        const Simplex& s = Lo.simplex_of(block);
        std::vector<V> out(static_cast<std::size_t>(bl.dim));
        const auto& M = gs_.bimodule();
        const auto& F0 = P_.fiber(s.start);
        int U0 = s.start;
        int An = bl.objs[n];
        std::vector<Mor<K>> y;
        for (int i = 0; i < n; ++i) y.push_back(unit_vector<K>(bl.ranks[i], basis[i]));
        const auto& Lg = gs_.layout(n);
        for (int p = 0; p <= n; ++p) {
            Simplex Ls = B.left(s, p), Rs = B.right(s, p);
            int lcomp = B.composite(Ls);
            std::vector<int> lo(bl.objs.begin(), bl.objs.begin() + p + 1), ro(bl.objs.begin() + p, bl.objs.end());
            std::vector<Mor<K>> ly(y.begin(), y.begin() + p), ry(y.begin() + p, y.end());
            Comp<K> Y = word_composite(P_, Ls, lo, ly);
            Comp<K> cs = P_.c_sigma(s, p, An);
            for (const auto& mb : partitions(n - p)) {
                Comp<K> cR = c_sigma_partition(P_, Rs, mb.blocks, An);
                Mor<K> lc = P_.restrict_mor(lcomp, cR.src, cR.tgt, cR.m);
                int lsrc = P_.restrict_obj(lcomp, cR.src), ltgt = P_.restrict_obj(lcomp, cR.tgt);
                for (const auto& xi : seq_enumerate(P_, Rs, ro, ry, mb.blocks)) {
                    std::vector<int> objs{bl.objs[p]};
                    std::vector<Mor<K>> args;
                    for (const auto& it : xi.items) {
                        objs.push_back(it.tgt);
                        args.push_back(it.m);
                    }
                    auto v = eval_block<K>(Lg, src, Lg.find_block(Ls, objs), args);
                    v = M.left_act(F0, U0, Y.tgt, lsrc, ltgt, lc, v);
                    v = M.left_act(F0, U0, Y.tgt, cs.src, cs.tgt, cs.m, v);
                    v = M.right_act(F0, U0, bl.objs[0], Y.tgt, cs.tgt, v, Y.m);
                    axpy_vec(out, from_int<K>(mb.sign * xi.sign), v);
                }
            }
        }
        tidy_all(out);
        return out;
    }

    // (G Psi) at a GS key of degree n.
    template <class Src>
    std::vector<typename Src::V> G_value(const Src& src, int n, int block, const std::vector<int>& basis) const {
        using V = typename Src::V;
        check_cap(n, caps_.fg, "G");
        const auto& Lo = gs_.layout(n);
        const auto& bl = Lo.block(block);
        const Simplex& s = Lo.simplex_of(block);
        std::vector<V> out(static_cast<std::size_t>(bl.dim));
        int p = s.length(), q = n - p;
        const auto& Fp = P_.fiber(P_.base.target(s));
        std::vector<Comp<K>> a;
        for (int i = 0; i < q; ++i)
            a.push_back({bl.objs[i], bl.objs[i + 1], unit_vector<K>(Fp.rank(bl.objs[i], bl.objs[i + 1]), basis[i])});
        if (n == 0) return gr_.eval0(src, s.start, bl.objs[0]);
        for (const auto& mb : partitions(p))
            for (const auto& zeta : seqq_enumerate(mb.blocks))
                for (const auto& omega : enumerate_shuffles({q, p})) {
                    auto str = graded_shuffle(P_, s, a, bl.objs[0], zeta, omega);
                    axpy_vec(out, from_int<K>(zeta.sign * omega.sign), gr_.eval(src, str));
                }
        tidy_all(out);
        return out;
    }

    // The homotopy terms at sigma (length n) and graded arguments y.
    std::vector<OmegaTerm<K>> big_omega(const Simplex& s, const std::vector<int>& objs,
                                        const std::vector<Mor<K>>& y) const {
        int n = s.length();
        std::vector<OmegaTerm<K>> out;
        for (int k = 1; k <= n; ++k)
            for (int p = 1; p <= k; ++p)
                for (auto& t : omega(s, objs, y, k, p)) {
                    if (k % 2 == 0) t.coef = -t.coef;
                    out.push_back(std::move(t));
                }
        return out;
    }

    // Terms over the last k arrows of s with p of them on the graded side.
    std::vector<OmegaTerm<K>> omega(const Simplex& s, const std::vector<int>& objs, const std::vector<Mor<K>>& y,
                                    int k, int p) const {
        const auto& B = P_.base;
        int n = s.length();
        if (k < 1 || k > n || p < 1 || p > k) throw std::out_of_range("omega: index out of range");
        int s0 = n - k;
        Simplex gam = B.right(s, s0);
        Simplex Lg = B.left(gam, p), Rg = B.right(gam, p);
        int An = objs[n];
        GradedString<K> prefix{s.start, {}};
        for (int i = 0; i < s0; ++i) prefix.entries.push_back({s.arrows[i], objs[i], objs[i + 1], y[i]});
        std::vector<int> zo(objs.begin() + s0, objs.begin() + s0 + p + 1);
        std::vector<Mor<K>> zy(y.begin() + s0, y.begin() + s0 + p);
        Comp<K> bar = word_composite(P_, Lg, zo, zy);
        GradedString<K> head = prefix;
        head.entries.push_back({B.identity(gam.start), bar.src, bar.tgt, bar.m});
        int mid = s0 + p;
        std::vector<int> ro(objs.begin() + mid, objs.end());
        std::vector<Mor<K>> ry(y.begin() + mid, y.end());
        int rcomp = B.composite(Rg);
        std::vector<OmegaTerm<K>> out;
        for (const auto& mb : partitions(k - p)) {
            Comp<K> cR = c_sigma_partition(P_, Rg, mb.blocks, An);
            GradedMor<K> tail{rcomp, cR.src, An, cR.m};
            auto xis = seq_enumerate(P_, Rg, ro, ry, mb.blocks);
            for (const auto& xi : xis)
                for (const auto& mb2 : partitions(p))
                    for (const auto& zeta : seqq_enumerate(mb2.blocks))
                        for (const auto& om : enumerate_shuffles({k - p, p})) {
                            auto g = graded_shuffle(P_, Lg, xi.items, objs[mid], zeta, om);
                            OmegaTerm<K> t;
                            t.coef = mb.sign * xi.sign * zeta.sign * om.sign;
                            t.string = head;
                            t.string.entries.insert(t.string.entries.end(), g.entries.begin(), g.entries.end());
                            t.tail = tail;
                            out.push_back(std::move(t));
                        }
        }
        return out;
    }

    // Terms of Delta_n: the Seq strings of s with identity gradings at the
    // start of s, each under its c^{s, blocks} tail, and -y with an identity
    // tail.
    std::vector<OmegaTerm<K>> delta_terms(const Simplex& s, const std::vector<int>& objs,
                                          const std::vector<Mor<K>>& y) const {
        const auto& B = P_.base;
        int n = s.length();
        int An = objs[n], comp = B.composite(s), Un = B.target(s);
        std::vector<OmegaTerm<K>> out;
        for (const auto& mb : partitions(n)) {
            Comp<K> cR = c_sigma_partition(P_, s, mb.blocks, An);
            for (const auto& xi : seq_enumerate(P_, s, objs, y, mb.blocks)) {
                OmegaTerm<K> t;
                t.coef = mb.sign * xi.sign;
                t.string.start = s.start;
                for (const auto& it : xi.items) t.string.entries.push_back({B.identity(s.start), it.src, it.tgt, it.m});
                t.tail = {comp, cR.src, An, cR.m};
                out.push_back(std::move(t));
            }
        }
        OmegaTerm<K> self;
        self.coef = -1;
        self.string.start = s.start;
        for (int i = 0; i < n; ++i) self.string.entries.push_back({s.arrows[i], objs[i], objs[i + 1], y[i]});
        self.tail = {B.identity(Un), An, An, P_.fiber(Un).identity(An)};
        out.push_back(std::move(self));
        return out;
    }

    // Chain-level homotopy identity at a graded key of degree n >= 1, as a
    // linear form in Psi of degree n:
    //   sum_{i=0}^{n} (-1)^i d_i Omega_n(y) + sum_{i=0}^{n-1} (-1)^i Omega_{n-1}(d_i y) - Delta_n(y),
    // where d_0 moves the last entry of a string into a left action and the
    // other faces compose neighbours. Zero exactly when the identity holds.
    template <class Src>
    std::vector<typename Src::V> homotopy_lemma_defect(const Src& src, int n, int block,
                                                       const std::vector<int>& basis) const {
        using V = typename Src::V;
        if (n < 1) throw std::invalid_argument("homotopy_lemma_defect needs degree >= 1");
        check_cap(n, caps_.t, "T");
        const auto& B = P_.base;
        const auto& G = gr_.category();
        const auto& Tb = gr_.tilde();
        const auto& bl = gr_.layout(n).block(block);
        const Simplex& s = gr_.layout(n).simplex_of(block);
        int A0 = bl.objs[0];
        GradedString<K> y = gr_.key_string(n, block, basis);
        std::vector<V> out(static_cast<std::size_t>(bl.dim));
        auto grading = [&](const GradedString<K>& x) { return B.composite(x.simp()); };
        // tail . Psi(x), summed over a list of terms with an extra sign.
        auto under_tails = [&](const std::vector<OmegaTerm<K>>& terms, auto&& value, long sign) {
            std::vector<V> acc(static_cast<std::size_t>(bl.dim));
            for (const auto& t : terms)
                axpy_vec(acc, from_int<K>(sign * t.coef), Tb.left(t.tail, grading(t.string), A0, value(t.string)));
            return acc;
        };
        auto psi = [&](const GradedString<K>& x) { return gr_.eval(src, x); };
        auto omega_of = [&](const GradedString<K>& x) {
            std::vector<int> objs{x.entries.front().src};
            std::vector<Mor<K>> ms;
            for (const auto& e : x.entries) {
                objs.push_back(e.tgt);
                ms.push_back(e.m);
            }
            return big_omega(x.simp(), objs, ms);
        };

        auto omega = big_omega(s, bl.objs, [&] {
            std::vector<Mor<K>> ms;
            for (const auto& e : y.entries) ms.push_back(e.m);
            return ms;
        }());
        int N = n + 1;
        for (int i = 0; i <= n; ++i) {
            auto face = [&](const GradedString<K>& x) {
                if (i > 0) return psi(chain_face(G, x, N - i));
                GradedString<K> h = chain_face(G, x, N);
                return Tb.left(x.entries[N - 1], grading(h), A0, psi(h));
            };
            axpy_vec(out, from_int<K>(1), under_tails(omega, face, i % 2 ? -1 : 1));
        }
        for (int i = 0; n >= 2 && i <= n - 1; ++i) {
            GradedString<K> h = chain_face(G, y, n - i);
            auto v = under_tails(omega_of(h), psi, i % 2 ? -1 : 1);
            if (i == 0) v = Tb.left(y.entries[n - 1], grading(h), A0, v);
            axpy_vec(out, from_int<K>(1), v);
        }
        std::vector<Mor<K>> ms;
        for (const auto& e : y.entries) ms.push_back(e.m);
        axpy_vec(out, from_int<K>(1), under_tails(delta_terms(s, bl.objs, ms), psi, -1));
        tidy_all(out);
        return out;
    }

    // (T Psi) at a graded key of degree n, for Psi of degree n + 1.
    template <class Src>
    std::vector<typename Src::V> T_value(const Src& src, int n, int block, const std::vector<int>& basis) const {
        using V = typename Src::V;
        check_cap(n, caps_.t, "T");
        const auto& Lo = gr_.layout(n);
        const auto& bl = Lo.block(block);
        const Simplex& s = Lo.simplex_of(block);
        std::vector<V> out(static_cast<std::size_t>(bl.dim));
        std::vector<Mor<K>> y;
        for (int i = 0; i < n; ++i) y.push_back(unit_vector<K>(bl.ranks[i], basis[i]));
        for (const auto& t : big_omega(s, bl.objs, y)) {
            auto v = gr_.eval(src, t.string);
            int u = P_.base.composite(t.string.simp());
            axpy_vec(out, from_int<K>(t.coef), gr_.tilde().left(t.tail, u, bl.objs[0], v));
        }
        tidy_all(out);
        return out;
    }

    // Matrices: F : C^n_GS -> C^n_gr, G : C^n_gr -> C^n_GS, T : C^{n+1}_gr -> C^n_gr.
    SparseMatrix<K> F_matrix(int n) const {
        FormSource<K> src;
        return collect_matrix<K>(gr_.layout(n), gs_.layout(n).size(),
                                 [&](int b, const std::vector<int>& basis) { return F_value(src, n, b, basis); });
    }
    SparseMatrix<K> G_matrix(int n) const {
        FormSource<K> src;
        return collect_matrix<K>(gs_.layout(n), gr_.layout(n).size(),
                                 [&](int b, const std::vector<int>& basis) { return G_value(src, n, b, basis); });
    }
    SparseMatrix<K> T_matrix(int n) const {
        FormSource<K> src;
        return collect_matrix<K>(gr_.layout(n), gr_.layout(n + 1).size(),
                                 [&](int b, const std::vector<int>& basis) { return T_value(src, n, b, basis); });
    }

    std::vector<K> apply_F(const std::vector<K>& phi, int n) const {
        DenseSource<K> src{&phi};
        return collect_dense<K>(gr_.layout(n), [&](int b, const std::vector<int>& basis) { return F_value(src, n, b, basis); });
    }
    std::vector<K> apply_G(const std::vector<K>& psi, int n) const {
        DenseSource<K> src{&psi};
        return collect_dense<K>(gs_.layout(n), [&](int b, const std::vector<int>& basis) { return G_value(src, n, b, basis); });
    }
    std::vector<K> apply_T(const std::vector<K>& psi, int n) const {
        DenseSource<K> src{&psi};
        return collect_dense<K>(gr_.layout(n), [&](int b, const std::vector<int>& basis) { return T_value(src, n, b, basis); });
    }

    // G(F(phi)) == phi for a normalized reduced cochain.
    bool check_gf_identity(const std::vector<K>& phi, int n) const {
        if (!gs_.is_normalized(phi, n) || !gs_.is_reduced(phi, n))
            throw std::invalid_argument("check_gf_identity needs a normalized reduced cochain");
        return apply_G(apply_F(phi, n), n) == phi;
    }

private:
    static void check_cap(int n, int cap, const char* what) {
        if (n > cap)
            throw std::length_error(std::string(what) + " is enumerated up to degree " + std::to_string(cap) +
                                    "; requested degree " + std::to_string(n));
    }

    const GSComplex<K>& gs_;
    const GradedComplex<K>& gr_;
    const Prestack<K>& P_;
    CompareCaps caps_;
};

}  // namespace psk
