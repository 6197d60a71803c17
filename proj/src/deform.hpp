// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gscomplex.hpp"
#include "prestack.hpp"
#include "sparse.hpp"

namespace psk {

// ---- change of scalars ----------------------------------------------------

template <class K2, class K, class Fn>
LinearCategory<K2> map_scalars(const LinearCategory<K>& C, Fn&& f) {
    int n = C.num_objects();
    std::vector<std::string> names;
    std::vector<int> ranks;
    for (int A = 0; A < n; ++A) names.push_back(C.object_name(A));
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) ranks.push_back(C.rank(A, B));
    LinearCategory<K2> D(names, ranks);
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int Cc = 0; Cc < n; ++Cc)
                for (int i = 0; i < C.rank(A, B); ++i)
                    for (int j = 0; j < C.rank(B, Cc); ++j) {
                        SparseVec<K2> v;
                        for (const auto& [k, c] : C.compose_basis(A, B, Cc, i, j)) v.push_back({k, f(c)});
                        D.set_compose(A, B, Cc, i, j, std::move(v));
                    }
    for (int A = 0; A < n; ++A) {
        Mor<K2> id;
        for (const auto& c : C.identity(A)) id.push_back(f(c));
        D.set_identity(A, std::move(id));
    }
    return D;
}

template <class K2, class K, class Fn>
LinFunctor<K2> map_scalars(const LinFunctor<K>& F, Fn&& f) {
    int n = F.num_src_objects();
    LinFunctor<K2> G(F.object_map(), n);
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) {
            const auto& m = F.matrix(A, B);
            DenseMat<K2> d(m.rows, m.cols);
            for (std::size_t i = 0; i < m.a.size(); ++i) d.a[i] = f(m.a[i]);
            G.set_matrix(A, B, std::move(d));
        }
    return G;
}

template <class K2, class K, class Fn>
Prestack<K2> map_scalars(const Prestack<K>& P, Fn&& f) {
    Prestack<K2> Q;
    Q.base = P.base;
    for (const auto& C : P.fibers) Q.fibers.push_back(map_scalars<K2>(C, f));
    for (const auto& R : P.restrictions) Q.restrictions.push_back(map_scalars<K2>(R, f));
    for (const auto& t : P.twists) {
        std::vector<Mor<K2>> comps;
        for (const auto& c : t) {
            Mor<K2> m;
            for (const auto& x : c) m.push_back(f(x));
            comps.push_back(std::move(m));
        }
        Q.twists.push_back(std::move(comps));
    }
    return Q;
}

template <class K>
Prestack<Dual<K>> extend_to_dual(const Prestack<K>& P) {
    return map_scalars<Dual<K>>(P, [](const K& x) { return Dual<K>{x, from_int<K>(0)}; });
}

// ---- deformations ---------------------------------------------------------
//
// A degree-2 GS cochain (m1, f1, c1) perturbs the compositions, the
// restriction functors and the twists of P to first order.

template <class K>
Prestack<Dual<K>> build_deformation(const GSComplex<K>& gs, const std::vector<K>& datum) {
    const auto& P = gs.prestack();
    const auto& B = P.base;
    const auto& L = gs.layout(2);
    if (static_cast<long>(datum.size()) != L.size()) throw std::invalid_argument("deformation datum has the wrong dimension");
    Prestack<Dual<K>> Q = extend_to_dual(P);
    auto value = [&](int block, const std::vector<int>& basis) {
        const auto& b = L.block(block);
        long c = L.coord(block, basis, 0);
        return std::vector<K>(datum.begin() + c, datum.begin() + c + b.dim);
    };
    auto add_eps = [](Mor<Dual<K>>& m, const std::vector<K>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) m[i].b += v[i];
    };
    L.for_each_key([&](int block, const std::vector<int>& basis) {
        const auto& b = L.block(block);
        const Simplex& s = L.simplex_of(block);
        auto v = value(block, basis);
        if (all_zero(v)) return;
        if (b.p == 0) {
            auto& C = Q.fibers[s.start];
            Mor<Dual<K>> m(static_cast<std::size_t>(b.dim), from_int<Dual<K>>(0));
            for (const auto& [k, c] : C.compose_basis(b.objs[0], b.objs[1], b.objs[2], basis[0], basis[1])) m[k] = c;
            add_eps(m, v);
            SparseVec<Dual<K>> sv;
            for (int k = 0; k < b.dim; ++k)
                if (!is_zero(m[k])) sv.push_back({k, m[k]});
            C.set_compose(b.objs[0], b.objs[1], b.objs[2], basis[0], basis[1], std::move(sv));
        } else if (b.p == 1) {
            int u = s.arrows[0];
            DenseMat<Dual<K>> mat = Q.restrictions[u].matrix(b.objs[0], b.objs[1]);
            for (int r = 0; r < mat.rows; ++r) mat.at(r, basis[0]).b += v[r];
            Q.restrictions[u].set_matrix(b.objs[0], b.objs[1], std::move(mat));
        } else {
            int f = s.arrows[0], g = s.arrows[1];
            auto& t = Q.twists[f * B.num_arrows() + g];
            if (t.empty()) {
                const auto& Z = Q.fiber(B.tgt(g));
                for (int A = 0; A < Z.num_objects(); ++A) t.push_back(Q.twist(f, g, A));
            }
            add_eps(t[b.objs[0]], v);
        }
    });
    return Q;
}

// Validates the deformed prestack with the generic validator.
template <class K>
std::optional<std::string> validate_deformation(const GSComplex<K>& gs, const std::vector<K>& datum) {
    return build_deformation(gs, datum).validate();
}

// Checks that (1 + g1 e, 1 + tau1 e) is a morphism of prestacks Q -> Q2,
// where theta = (g1, -tau1) is a degree-1 cochain. The component of tau at
// u : V -> U and A in A(U) maps u'*(g A) to g(u* A); below its inverse
// 1 - tau1 e, running the other way, is used.
template <class K>
std::optional<std::string> check_equivalence(const GSComplex<K>& gs, const std::vector<K>& theta,
                                             const Prestack<Dual<K>>& Q, const Prestack<Dual<K>>& Q2) {
    using D = Dual<K>;
    const auto& P = gs.prestack();
    const auto& B = P.base;
    const auto& L = gs.layout(1);
    if (static_cast<long>(theta.size()) != L.size()) throw std::invalid_argument("equivalence datum has the wrong dimension");
    auto eps_part = [&](const Simplex& s, const std::vector<int>& objs, const std::vector<int>& basis, int sign) {
        int blk = L.find_block(s, objs);
        long c = L.coord(blk, basis, 0);
        Mor<D> m;
        for (int j = 0; j < L.block(blk).dim; ++j) m.push_back(D{from_int<K>(0), from_int<K>(sign) * theta[c + j]});
        return m;
    };
    auto add = [](Mor<D> a, const Mor<D>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    // g on a morphism x : A -> B of the fiber over U.
    auto g = [&](int U, int A, int Bo, const Mor<D>& x) {
        Mor<D> out = x;
        const auto& C = P.fiber(U);
        for (int i = 0; i < C.rank(A, Bo); ++i) {
            if (is_zero(x[i])) continue;
            Mor<D> e = eps_part(Simplex{U, {}}, {A, Bo}, {i}, 1);
            for (std::size_t k = 0; k < e.size(); ++k) out[k] += x[i] * e[k];
        }
        return out;
    };
    // Inverse of tau^u_A, from g(u* A) to u'*(g A).
    auto tau = [&](int u, int A) {
        int V = B.src(u);
        int uA = P.restrict_obj(u, A);
        Mor<D> id = Q.fiber(V).identity(uA);
        return add(id, eps_part(Simplex{V, {u}}, {A}, {}, 1));
    };
    for (int U = 0; U < B.num_objects(); ++U) {
        const auto& C = Q.fiber(U);
        const auto& C2 = Q2.fiber(U);
        int n = C.num_objects();
        for (int A = 0; A < n; ++A)
            if (g(U, A, A, C.identity(A)) != C2.identity(A))
                return "g does not preserve the identity of '" + C.object_name(A) + "' over '" + B.object_name(U) + "'";
        for (int A = 0; A < n; ++A)
            for (int Bo = 0; Bo < n; ++Bo)
                for (int Cc = 0; Cc < n; ++Cc)
                    for (int i = 0; i < C.rank(A, Bo); ++i)
                        for (int j = 0; j < C.rank(Bo, Cc); ++j) {
                            Mor<D> x = unit_vector<D>(C.rank(A, Bo), i), y = unit_vector<D>(C.rank(Bo, Cc), j);
                            Mor<D> l = g(U, A, Cc, C.compose(A, Bo, Cc, y, x));
                            Mor<D> r = C2.compose(A, Bo, Cc, g(U, Bo, Cc, y), g(U, A, Bo, x));
                            if (l != r)
                                return "g does not preserve composition over '" + B.object_name(U) + "'";
                        }
    }
    for (int u = 0; u < B.num_arrows(); ++u) {
        int U = B.tgt(u), V = B.src(u);
        const auto& C = Q.fiber(U);
        const auto& CV = Q2.fiber(V);
        for (int A = 0; A < C.num_objects(); ++A)
            for (int Bo = 0; Bo < C.num_objects(); ++Bo)
                for (int i = 0; i < C.rank(A, Bo); ++i) {
                    Mor<D> x = unit_vector<D>(C.rank(A, Bo), i);
                    int uA = P.restrict_obj(u, A), uB = P.restrict_obj(u, Bo);
                    Mor<D> l = CV.compose(uA, uB, uB, tau(u, Bo), g(V, uA, uB, Q.restrict_mor(u, A, Bo, x)));
                    Mor<D> r = CV.compose(uA, uA, uB, Q2.restrict_mor(u, A, Bo, g(U, A, Bo, x)), tau(u, A));
                    if (l != r) return "tau is not natural along '" + B.arrow(u).name + "'";
                }
    }
    for (int f = 0; f < B.num_arrows(); ++f)
        for (int h = 0; h < B.num_arrows(); ++h) {
            if (B.tgt(f) != B.src(h)) continue;
            int X = B.src(f), Z = B.tgt(h);
            int hf = B.compose(f, h);
            const auto& CX = Q2.fiber(X);
            for (int A = 0; A < P.fiber(Z).num_objects(); ++A) {
                int hA = P.restrict_obj(h, A);
                int s = P.restrict_obj(f, hA), t = P.restrict_obj(hf, A);
                Mor<D> l = CX.compose(s, t, t, tau(hf, A), g(X, s, t, Q.twist(f, h, A)));
                Mor<D> ft = Q2.restrict_mor(f, hA, hA, tau(h, A));
                Mor<D> r = CX.compose(s, s, t, Q2.twist(f, h, A), CX.compose(s, s, s, ft, tau(f, hA)));
                if (l != r)
                    return "tau is not compatible with the twists of ('" + B.arrow(f).name + "', '" + B.arrow(h).name + "')";
            }
        }
    return std::nullopt;
}

// Outcome of comparing the two routes for an equivalence datum: the
// morphism axioms between the deformed prestacks, and the coboundary
// identity d(theta) = datum - datum2.
struct EquivalenceReport {
    std::optional<std::string> morphism_error;
    bool coboundary = false;

    bool morphism() const { return !morphism_error.has_value(); }
    bool agree() const { return morphism() == coboundary; }
};

template <class K>
EquivalenceReport equivalence_from_cochain(const GSComplex<K>& gs, const std::vector<K>& theta,
                                           const std::vector<K>& datum, const std::vector<K>& datum2) {
    EquivalenceReport r;
    r.morphism_error = check_equivalence(gs, theta, build_deformation(gs, datum), build_deformation(gs, datum2));
    auto dt = gs.apply(theta, 2);
    r.coboundary = true;
    for (std::size_t i = 0; i < dt.size(); ++i)
        if (dt[i] != datum[i] - datum2[i]) r.coboundary = false;
    return r;
}

// ---- normalized reduced complex and H^2 -----------------------------------

// Restriction of D_n to the normalized reduced coordinates, together with
// the selected coordinates of degrees n-1 (columns) and n (rows).
template <class K>
struct NRDifferential {
    SparseMatrix<K> matrix;
    std::vector<int> cols, rows;
};

template <class K>
NRDifferential<K> nr_differential(const GSComplex<K>& gs, int n) {
    NRDifferential<K> r;
    auto out_mask = gs.nr_mask(n);
    for (int i = 0; i < static_cast<int>(out_mask.size()); ++i)
        if (out_mask[i]) r.rows.push_back(i);
    std::vector<char> in_mask;
    std::vector<int> col_map;
    if (n > 0) {
        in_mask = gs.nr_mask(n - 1);
        col_map.assign(in_mask.size(), -1);
        for (int i = 0; i < static_cast<int>(in_mask.size()); ++i)
            if (in_mask[i]) {
                col_map[i] = static_cast<int>(r.cols.size());
                r.cols.push_back(i);
            }
    }
    SparseMatrix<K> full = gs.matrix(n);
    if (n > 0 && full.nnz_outside(out_mask, in_mask) > 0)
        throw std::logic_error("normalized reduced cochains are not closed under the differential");
    r.matrix = full.restrict(r.rows, col_map, static_cast<int>(r.cols.size()));
    return r;
}

// Expands coordinates on the selected positions into a full cochain.
template <class K>
std::vector<K> embed(const std::vector<K>& v, const std::vector<int>& positions, long size) {
    std::vector<K> out(static_cast<std::size_t>(size), from_int<K>(0));
    for (std::size_t i = 0; i < v.size(); ++i) out[positions[i]] = v[i];
    return out;
}

template <class K>
struct H2Classes {
    int dim = 0;
    std::vector<std::vector<K>> representatives;  // full degree-2 cochains
    std::vector<std::vector<K>> boundaries;       // spanning set of the image
};

// Representatives: kernel vectors of the nr degree-3 differential that are
// independent modulo the image of the nr degree-2 differential.
template <class K>
H2Classes<K> classify_h2(const GSComplex<K>& gs) {
    auto d2 = nr_differential(gs, 2);
    auto d3 = nr_differential(gs, 3);
    long size = gs.layout(2).size();
    H2Classes<K> h;
    auto image = d2.matrix.transpose();
    Echelon<K> E(static_cast<int>(d2.rows.size()));
    for (int i = 0; i < image.rows(); ++i) {
        if (image.row(i).empty()) continue;
        std::vector<K> v(d2.rows.size(), from_int<K>(0));
        for (const auto& [j, x] : image.row(i)) v[j] = x;
        h.boundaries.push_back(embed(v, d2.rows, size));
        E.add(image.row(i));
    }
    for (const auto& k : kernel_basis(d3.matrix)) {
        if (E.add(to_sparse(k))) h.representatives.push_back(embed(k, d3.cols, size));
    }
    h.dim = static_cast<int>(h.representatives.size());
    return h;
}

}  // namespace psk
