// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"
#include "sparse.hpp"

namespace psk {

// ---- value types ----------------------------------------------------------
//
// Operators are written once for two value types: a scalar K (evaluation of
// a concrete cochain) and Form<K>, a linear form in the coordinates of the
// source cochain space (used to assemble matrices). Both only need axpy.

template <class K>
struct Form {
    SparseVec<K> terms;
};

template <class K>
inline void axpy(K& dst, const K& c, const K& src) { dst += c * src; }

template <class K>
inline void axpy(Form<K>& dst, const K& c, const Form<K>& src) {
    for (const auto& [i, v] : src.terms) dst.terms.push_back({i, c * v});
}

template <class K>
inline void tidy(K&) {}

template <class K>
inline void tidy(Form<K>& f) { canonicalize(f.terms); }

template <class K>
inline bool value_is_zero(const K& x) { return is_zero(x); }

template <class K>
inline bool value_is_zero(const Form<K>& f) { return f.terms.empty(); }

template <class V>
void tidy_all(std::vector<V>& v) {
    for (auto& x : v) tidy(x);
}

template <class K, class V>
void axpy_vec(std::vector<V>& dst, const K& c, const std::vector<V>& src) {
    for (std::size_t i = 0; i < src.size(); ++i) axpy(dst[i], c, src[i]);
}

// Coordinates of a morphism between known endpoints.
template <class K>
using Mor = std::vector<K>;

template <class K>
Mor<K> unit_vector(int rank, int i) {
    Mor<K> v(static_cast<std::size_t>(rank), from_int<K>(0));
    v[i] = from_int<K>(1);
    return v;
}

template <class K>
bool all_zero(const std::vector<K>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

// Dense row-major matrix acting on coordinate vectors.
template <class K>
struct DenseMat {
    int rows = 0, cols = 0;
    std::vector<K> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, from_int<K>(0)) {}

    K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const K& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    template <class V>
    std::vector<V> apply(const std::vector<V>& x) const {
        if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("matrix/vector size mismatch");
        std::vector<V> y(static_cast<std::size_t>(rows));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!is_zero(at(i, j))) axpy(y[i], at(i, j), x[j]);
        tidy_all(y);
        return y;
    }

    DenseMat operator*(const DenseMat& b) const {
        if (cols != b.rows) throw std::invalid_argument("matrix product size mismatch");
        DenseMat c(rows, b.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (is_zero(at(i, k))) continue;
                for (int j = 0; j < b.cols; ++j) c.at(i, j) += at(i, k) * b.at(k, j);
            }
        return c;
    }

    bool operator==(const DenseMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Solves M y = b by elimination with unit pivots. Returns nullopt when the
// columns are not independent modulo non-units or the system is inconsistent.
template <class K>
std::optional<std::vector<K>> solve_unique(DenseMat<K> m, std::vector<K> b) {
    int r = m.rows, c = m.cols;
    std::vector<int> pivot_row(static_cast<std::size_t>(c), -1);
    int row = 0;
    for (int col = 0; col < c; ++col) {
        int piv = -1;
        for (int i = row; i < r; ++i)
            if (is_unit(m.at(i, col))) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        for (int j = 0; j < c; ++j) std::swap(m.at(piv, j), m.at(row, j));
        std::swap(b[piv], b[row]);
        K inv = inverse(m.at(row, col));
        for (int j = 0; j < c; ++j) m.at(row, j) *= inv;
        b[row] *= inv;
        for (int i = 0; i < r; ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            K f = m.at(i, col);
            for (int j = 0; j < c; ++j) m.at(i, j) -= f * m.at(row, j);
            b[i] -= f * b[row];
        }
        pivot_row[col] = row++;
    }
    for (int i = row; i < r; ++i)
        if (!is_zero(b[i])) return std::nullopt;
    std::vector<K> y(static_cast<std::size_t>(c));
    for (int col = 0; col < c; ++col) y[col] = b[pivot_row[col]];
    return y;
}

// ---- linear categories ----------------------------------------------------

// Finite k-linear category with free hom modules of finite rank.
template <class K>
class LinearCategory {
public:
    LinearCategory() = default;
    LinearCategory(std::vector<std::string> names, std::vector<int> ranks)
        : names_(std::move(names)), rank_(std::move(ranks)) {
        int n = num_objects();
        if (static_cast<int>(rank_.size()) != n * n) throw std::invalid_argument("rank table has wrong size");
        comp_.resize(static_cast<std::size_t>(n) * n * n);
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B)
                for (int C = 0; C < n; ++C)
                    comp_[tri(A, B, C)].assign(static_cast<std::size_t>(rank(A, B)) * rank(B, C), {});
        ident_.resize(n);
        ident_basis_.assign(n, -1);
        for (int A = 0; A < n; ++A) ident_[A].assign(rank(A, A), from_int<K>(0));
    }

    int num_objects() const { return static_cast<int>(names_.size()); }
    const std::string& object_name(int A) const { return names_.at(A); }
    int find_object(const std::string& name) const {
        for (int i = 0; i < num_objects(); ++i)
            if (names_[i] == name) return i;
        return -1;
    }
    int rank(int A, int B) const { return rank_[A * num_objects() + B]; }

    // Structure constants: (basis g_j of Hom(B,C)) o (basis f_i of Hom(A,B)).
    void set_compose(int A, int B, int C, int i, int j, SparseVec<K> value) {
        canonicalize(value);
        comp_[tri(A, B, C)].at(static_cast<std::size_t>(j) * rank(A, B) + i) = std::move(value);
    }
    const SparseVec<K>& compose_basis(int A, int B, int C, int i, int j) const {
        return comp_[tri(A, B, C)][static_cast<std::size_t>(j) * rank(A, B) + i];
    }

    void set_identity(int A, Mor<K> coords) {
        if (static_cast<int>(coords.size()) != rank(A, A)) throw std::invalid_argument("identity has wrong length");
        ident_basis_[A] = -1;
        int nz = 0, at = -1;
        for (int i = 0; i < rank(A, A); ++i)
            if (!is_zero(coords[i])) { ++nz; at = i; }
        if (nz == 1 && coords[at] == from_int<K>(1)) ident_basis_[A] = at;
        ident_[A] = std::move(coords);
    }
    const Mor<K>& identity(int A) const { return ident_[A]; }
    // Index of the basis vector equal to 1_A, or -1.
    int identity_basis(int A) const { return ident_basis_[A]; }

    // g o f with g in Hom(B,C) and f in Hom(A,B); either side may carry
    // form values.
    template <class V>
    std::vector<V> compose_kv(int A, int B, int C, const Mor<K>& g, const std::vector<V>& f) const {
        std::vector<V> out(static_cast<std::size_t>(rank(A, C)));
        const auto& t = comp_[tri(A, B, C)];
        int rab = rank(A, B);
        for (int j = 0; j < rank(B, C); ++j) {
            if (is_zero(g[j])) continue;
            for (int i = 0; i < rab; ++i)
                for (const auto& [k, c] : t[static_cast<std::size_t>(j) * rab + i]) axpy(out[k], K(g[j] * c), f[i]);
        }
        tidy_all(out);
        return out;
    }

    template <class V>
    std::vector<V> compose_vk(int A, int B, int C, const std::vector<V>& g, const Mor<K>& f) const {
        std::vector<V> out(static_cast<std::size_t>(rank(A, C)));
        const auto& t = comp_[tri(A, B, C)];
        int rab = rank(A, B);
        for (int i = 0; i < rab; ++i) {
            if (is_zero(f[i])) continue;
            for (int j = 0; j < rank(B, C); ++j)
                for (const auto& [k, c] : t[static_cast<std::size_t>(j) * rab + i]) axpy(out[k], K(f[i] * c), g[j]);
        }
        tidy_all(out);
        return out;
    }

    Mor<K> compose(int A, int B, int C, const Mor<K>& g, const Mor<K>& f) const { return compose_kv<K>(A, B, C, g, f); }

    // Exhaustive check of the axioms on basis elements.
    std::optional<std::string> validate() const {
        int n = num_objects();
        for (int A = 0; A < n; ++A) {
            if (rank(A, A) == 0) continue;
            for (int B = 0; B < n; ++B)
                for (int i = 0; i < rank(A, B); ++i) {
                    Mor<K> f = unit_vector<K>(rank(A, B), i);
                    if (compose(A, B, B, identity(B), f) != f || compose(A, A, B, f, identity(A)) != f)
                        return "unit law fails on basis " + std::to_string(i) + " of Hom(" + names_[A] + "," +
                               names_[B] + ")";
                }
        }
        for (int A = 0; A < n; ++A)
            if (rank(A, A) == 0)
                for (int B = 0; B < n; ++B)
                    if (rank(A, B) != 0 || rank(B, A) != 0)
                        return "object '" + names_[A] + "' is a zero object but has nonzero homs";
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B)
                for (int C = 0; C < n; ++C)
                    for (int D = 0; D < n; ++D)
                        for (int i = 0; i < rank(A, B); ++i)
                            for (int j = 0; j < rank(B, C); ++j)
                                for (int k = 0; k < rank(C, D); ++k) {
                                    Mor<K> f = unit_vector<K>(rank(A, B), i);
                                    Mor<K> g = unit_vector<K>(rank(B, C), j);
                                    Mor<K> h = unit_vector<K>(rank(C, D), k);
                                    Mor<K> l = compose(A, C, D, h, compose(A, B, C, g, f));
                                    Mor<K> r = compose(A, B, D, compose(B, C, D, h, g), f);
                                    if (l != r)
                                        return "associativity fails on objects (" + names_[A] + "," + names_[B] + "," +
                                               names_[C] + "," + names_[D] + ")";
                                }
        return std::nullopt;
    }

    // Two-sided inverse of x: A -> B, if it exists.
    std::optional<Mor<K>> inverse_of(int A, int B, const Mor<K>& x) const {
        int r = rank(B, A);
        int eq = rank(A, A) + rank(B, B);
        DenseMat<K> m(eq, r);
        std::vector<K> rhs(static_cast<std::size_t>(eq), from_int<K>(0));
        for (int t = 0; t < r; ++t) {
            Mor<K> y = unit_vector<K>(r, t);
            Mor<K> yx = compose(A, B, A, y, x);
            Mor<K> xy = compose(B, A, B, x, y);
            for (int e = 0; e < rank(A, A); ++e) m.at(e, t) = yx[e];
            for (int e = 0; e < rank(B, B); ++e) m.at(rank(A, A) + e, t) = xy[e];
        }
        for (int e = 0; e < rank(A, A); ++e) rhs[e] = identity(A)[e];
        for (int e = 0; e < rank(B, B); ++e) rhs[rank(A, A) + e] = identity(B)[e];
        return solve_unique(m, rhs);
    }

private:
    std::size_t tri(int A, int B, int C) const {
        std::size_t n = static_cast<std::size_t>(num_objects());
        return (static_cast<std::size_t>(A) * n + B) * n + C;
    }

    std::vector<std::string> names_;
    std::vector<int> rank_;
    std::vector<std::vector<SparseVec<K>>> comp_;
    std::vector<Mor<K>> ident_;
    std::vector<int> ident_basis_;
};

// ---- functors and natural transformations ---------------------------------

template <class K>
class LinFunctor {
public:
    LinFunctor() = default;
    LinFunctor(std::vector<int> object_map, int src_objects) : obj_(std::move(object_map)) {
        mats_.resize(static_cast<std::size_t>(src_objects) * src_objects);
        n_ = src_objects;
    }

    static LinFunctor identity(const LinearCategory<K>& c) {
        int n = c.num_objects();
        std::vector<int> obj(n);
        for (int i = 0; i < n; ++i) obj[i] = i;
        LinFunctor f(obj, n);
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B) {
                DenseMat<K> m(c.rank(A, B), c.rank(A, B));
                for (int i = 0; i < c.rank(A, B); ++i) m.at(i, i) = from_int<K>(1);
                f.set_matrix(A, B, std::move(m));
            }
        return f;
    }

    int num_src_objects() const { return n_; }
    int obj(int A) const { return obj_.at(A); }
    const std::vector<int>& object_map() const { return obj_; }
    void set_matrix(int A, int B, DenseMat<K> m) { mats_.at(static_cast<std::size_t>(A) * n_ + B) = std::move(m); }
    const DenseMat<K>& matrix(int A, int B) const { return mats_[static_cast<std::size_t>(A) * n_ + B]; }

    template <class V>
    std::vector<V> apply(int A, int B, const std::vector<V>& x) const { return matrix(A, B).apply(x); }

private:
    int n_ = 0;
    std::vector<int> obj_;
    std::vector<DenseMat<K>> mats_;
};

// G o F.
template <class K>
LinFunctor<K> compose_functors(const LinFunctor<K>& G, const LinFunctor<K>& F) {
    int n = F.num_src_objects();
    std::vector<int> obj(n);
    for (int A = 0; A < n; ++A) obj[A] = G.obj(F.obj(A));
    LinFunctor<K> r(obj, n);
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) r.set_matrix(A, B, G.matrix(F.obj(A), F.obj(B)) * F.matrix(A, B));
    return r;
}

template <class K>
std::optional<std::string> validate_functor(const LinFunctor<K>& F, const LinearCategory<K>& C,
                                             const LinearCategory<K>& D) {
    int n = C.num_objects();
    if (F.num_src_objects() != n) return std::string("functor has wrong number of source objects");
    for (int A = 0; A < n; ++A)
        if (F.obj(A) < 0 || F.obj(A) >= D.num_objects()) return "object map of '" + C.object_name(A) + "' out of range";
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) {
            const auto& m = F.matrix(A, B);
            if (m.rows != D.rank(F.obj(A), F.obj(B)) || m.cols != C.rank(A, B))
                return "matrix for Hom(" + C.object_name(A) + "," + C.object_name(B) + ") has wrong shape";
        }
    for (int A = 0; A < n; ++A)
        if (F.apply(A, A, C.identity(A)) != D.identity(F.obj(A)))
            return "identity of '" + C.object_name(A) + "' is not preserved";
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int Cc = 0; Cc < n; ++Cc)
                for (int i = 0; i < C.rank(A, B); ++i)
                    for (int j = 0; j < C.rank(B, Cc); ++j) {
                        Mor<K> f = unit_vector<K>(C.rank(A, B), i);
                        Mor<K> g = unit_vector<K>(C.rank(B, Cc), j);
                        Mor<K> l = F.apply(A, Cc, C.compose(A, B, Cc, g, f));
                        Mor<K> r = D.compose(F.obj(A), F.obj(B), F.obj(Cc), F.apply(B, Cc, g), F.apply(A, B, f));
                        if (l != r)
                            return "composition not preserved on objects (" + C.object_name(A) + "," +
                                   C.object_name(B) + "," + C.object_name(Cc) + ")";
                    }
    return std::nullopt;
}

// Components t_A : F A -> G A.
template <class K>
struct NatTransform {
    std::vector<Mor<K>> components;
};

template <class K>
std::optional<std::string> validate_nat_transform(const NatTransform<K>& t, const LinFunctor<K>& F,
                                                  const LinFunctor<K>& G, const LinearCategory<K>& C,
                                                  const LinearCategory<K>& D) {
    int n = C.num_objects();
    if (static_cast<int>(t.components.size()) != n) return std::string("wrong number of components");
    for (int A = 0; A < n; ++A)
        if (static_cast<int>(t.components[A].size()) != D.rank(F.obj(A), G.obj(A)))
            return "component at '" + C.object_name(A) + "' has wrong length";
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int i = 0; i < C.rank(A, B); ++i) {
                Mor<K> x = unit_vector<K>(C.rank(A, B), i);
                Mor<K> l = D.compose(F.obj(A), G.obj(A), G.obj(B), G.apply(A, B, x), t.components[A]);
                Mor<K> r = D.compose(F.obj(A), F.obj(B), G.obj(B), t.components[B], F.apply(A, B, x));
                if (l != r)
                    return "naturality fails on basis " + std::to_string(i) + " of Hom(" + C.object_name(A) + "," +
                           C.object_name(B) + ")";
            }
    return std::nullopt;
}

// post * t * pre: component at A is post(t_{pre(A)}). Functor lists are in
// application order; the source category of `pre` is the one indexed here.
template <class K>
NatTransform<K> whisker(const std::vector<const LinFunctor<K>*>& pre, const NatTransform<K>& t,
                        const std::vector<const LinFunctor<K>*>& post, const std::vector<int>& t_src_obj,
                        const std::vector<int>& t_tgt_obj, int num_objects) {
    NatTransform<K> r;
    for (int A = 0; A < num_objects; ++A) {
        int X = A;
        for (const auto* f : pre) X = f->obj(X);
        Mor<K> c = t.components.at(X);
        int s = t_src_obj.at(X), g = t_tgt_obj.at(X);
        for (const auto* f : post) {
            c = f->apply(s, g, c);
            s = f->obj(s);
            g = f->obj(g);
        }
        r.components.push_back(std::move(c));
    }
    return r;
}

// ---- bimodules ------------------------------------------------------------

// A-A bimodule over a prestack with base objects 0..n-1. M^U(A,B) is a free
// module for fiber objects A, B of A(U); the left action by Hom(B,C) and the
// right action by Hom(A',A) are given by structure constants; each base
// arrow u : V -> U carries restriction matrices M^U(A,B) -> M^V(u*A,u*B).
template <class K>
class Bimodule {
public:
    struct Fiber {
        int n = 0;
        std::vector<int> rank;                     // n*n
        std::vector<std::vector<SparseVec<K>>> left;   // (A,B,C): j*rM(A,B)+i
        std::vector<std::vector<SparseVec<K>>> right;  // (A,B,C): j*rHom(A,B)+i
    };

    std::vector<Fiber> fibers;
    std::vector<LinFunctor<K>> restrictions;  // object maps mirror the prestack's

    int rank(int U, int A, int B) const { return fibers[U].rank[A * fibers[U].n + B]; }

    // a . m with a in Hom_U(B,C) and m in M^U(A,B).
    template <class V>
    std::vector<V> left_act(const LinearCategory<K>& cat, int U, int A, int B, int C, const Mor<K>& a,
                            const std::vector<V>& m) const {
        const Fiber& f = fibers[U];
        std::vector<V> out(static_cast<std::size_t>(rank(U, A, C)));
        const auto& t = f.left[tri(f.n, A, B, C)];
        int rm = rank(U, A, B);
        for (int j = 0; j < cat.rank(B, C); ++j) {
            if (is_zero(a[j])) continue;
            for (int i = 0; i < rm; ++i)
                for (const auto& [k, c] : t[static_cast<std::size_t>(j) * rm + i]) axpy(out[k], K(a[j] * c), m[i]);
        }
        tidy_all(out);
        return out;
    }

    // m . a with m in M^U(B,C) and a in Hom_U(A,B).
    template <class V>
    std::vector<V> right_act(const LinearCategory<K>& cat, int U, int A, int B, int C, const std::vector<V>& m,
                             const Mor<K>& a) const {
        const Fiber& f = fibers[U];
        std::vector<V> out(static_cast<std::size_t>(rank(U, A, C)));
        const auto& t = f.right[tri(f.n, A, B, C)];
        int ra = cat.rank(A, B);
        for (int i = 0; i < ra; ++i) {
            if (is_zero(a[i])) continue;
            for (int j = 0; j < rank(U, B, C); ++j)
                for (const auto& [k, c] : t[static_cast<std::size_t>(j) * ra + i]) axpy(out[k], K(a[i] * c), m[j]);
        }
        tidy_all(out);
        return out;
    }

    template <class V>
    std::vector<V> restrict(int u, int A, int B, const std::vector<V>& m) const {
        return restrictions[u].apply(A, B, m);
    }

    static std::size_t tri(int n, int A, int B, int C) {
        return (static_cast<std::size_t>(A) * n + B) * static_cast<std::size_t>(n) + C;
    }
};

}  // namespace psk
