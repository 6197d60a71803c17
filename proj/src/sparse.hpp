// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace psk {

template <class K>
using SparseVec = std::vector<std::pair<int, K>>;  // sorted by index, no zeros

// Sorts by index, merges duplicates and drops zeros.
template <class K>
void canonicalize(SparseVec<K>& v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        int idx = v[i].first;
        K sum = v[i].second;
        std::size_t j = i + 1;
        for (; j < v.size() && v[j].first == idx; ++j) sum += v[j].second;
        if (!is_zero(sum)) v[out++] = {idx, std::move(sum)};
        i = j;
    }
    v.resize(out);
}

template <class K>
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : cols_(cols), data_(static_cast<std::size_t>(rows)) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].push_back({i, from_int<K>(1)});
        return m;
    }

    static SparseMatrix from_dense(const std::vector<std::vector<K>>& d, int cols) {
        SparseMatrix m(static_cast<int>(d.size()), cols);
        for (std::size_t i = 0; i < d.size(); ++i)
            for (int j = 0; j < cols; ++j)
                if (!is_zero(d[i][j])) m.data_[i].push_back({j, d[i][j]});
        return m;
    }

    int rows() const { return static_cast<int>(data_.size()); }
    int cols() const { return cols_; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    const SparseVec<K>& row(int i) const { return data_[i]; }

    // Replaces row i; the vector is canonicalized.
    void set_row(int i, SparseVec<K> v) {
        canonicalize(v);
        if (!v.empty() && (v.front().first < 0 || v.back().first >= cols_))
            throw std::out_of_range("column index out of range");
        data_[i] = std::move(v);
    }

    void add(int i, int j, const K& x) {
        if (i < 0 || i >= rows() || j < 0 || j >= cols_) throw std::out_of_range("matrix index out of range");
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, int c) { return e.first < c; });
        if (it != r.end() && it->first == j) {
            it->second += x;
            if (is_zero(it->second)) r.erase(it);
        } else if (!is_zero(x)) {
            r.insert(it, {j, x});
        }
    }

    K at(int i, int j) const {
        const auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, int c) { return e.first < c; });
        return (it != r.end() && it->first == j) ? it->second : from_int<K>(0);
    }

    bool is_zero_matrix() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    bool operator==(const SparseMatrix& o) const { return cols_ == o.cols_ && data_ == o.data_; }

    std::vector<K> apply(const std::vector<K>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length does not match columns");
        std::vector<K> y(data_.size(), from_int<K>(0));
        for (std::size_t i = 0; i < data_.size(); ++i)
            for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
        return y;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows());
        for (int i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i]) t.data_[j].push_back({i, v});
        return t;
    }

    SparseMatrix operator*(const SparseMatrix& b) const {
        if (cols_ != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
        SparseMatrix c(rows(), b.cols());
        std::vector<K> acc(static_cast<std::size_t>(b.cols()), from_int<K>(0));
        std::vector<char> mark(static_cast<std::size_t>(b.cols()), 0);
        std::vector<int> touched;
        for (int i = 0; i < rows(); ++i) {
            touched.clear();
            for (const auto& [k, v] : data_[i])
                for (const auto& [j, w] : b.data_[k]) {
                    if (!mark[j]) { mark[j] = 1; touched.push_back(j); }
                    acc[j] += v * w;
                }
            std::sort(touched.begin(), touched.end());
            for (int j : touched) {
                if (!is_zero(acc[j])) c.data_[i].push_back({j, acc[j]});
                acc[j] = from_int<K>(0);
                mark[j] = 0;
            }
        }
        return c;
    }

    SparseMatrix operator-(const SparseMatrix& b) const { return combine(b, from_int<K>(-1)); }
    SparseMatrix operator+(const SparseMatrix& b) const { return combine(b, from_int<K>(1)); }

    // Rows selected in the given order, columns restricted and renumbered by
    // col_map (entries mapped to -1 are dropped).
    SparseMatrix restrict(const std::vector<int>& row_sel, const std::vector<int>& col_map, int new_cols) const {
        SparseMatrix r(static_cast<int>(row_sel.size()), new_cols);
        for (std::size_t i = 0; i < row_sel.size(); ++i)
            for (const auto& [j, v] : data_[row_sel[i]])
                if (col_map[j] >= 0) r.data_[i].push_back({col_map[j], v});
        return r;
    }

    // Entries outside the selected rows/columns; used to check that a
    // coordinate subspace is preserved.
    std::size_t nnz_outside(const std::vector<char>& row_in, const std::vector<char>& col_in) const {
        std::size_t n = 0;
        for (int i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i])
                if (col_in[j] && !row_in[i]) ++n;
        return n;
    }

    void write_triplets(std::ostream& os) const {
        os << rows() << ' ' << cols_ << ' ' << nnz() << '\n';
        for (int i = 0; i < rows(); ++i)
            for (const auto& [j, v] : data_[i]) os << i << ' ' << j << ' ' << to_string(v) << '\n';
    }

    static SparseMatrix read_triplets(std::istream& is) {
        long long r, c, n;
        if (!(is >> r >> c >> n) || r < 0 || c < 0 || n < 0) throw std::runtime_error("bad triplet header");
        SparseMatrix m(static_cast<int>(r), static_cast<int>(c));
        for (long long e = 0; e < n; ++e) {
            long long i, j;
            std::string v;
            if (!(is >> i >> j >> v)) throw std::runtime_error("truncated triplet file");
            m.add(static_cast<int>(i), static_cast<int>(j), parse_scalar<K>(v));
        }
        return m;
    }

private:
    SparseMatrix combine(const SparseMatrix& b, const K& s) const {
        if (rows() != b.rows() || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        SparseMatrix c(rows(), cols_);
        for (int i = 0; i < rows(); ++i) {
            SparseVec<K> v = data_[i];
            for (const auto& [j, w] : b.data_[i]) v.push_back({j, s * w});
            canonicalize(v);
            c.data_[i] = std::move(v);
        }
        return c;
    }

    int cols_ = 0;
    std::vector<SparseVec<K>> data_;
};

// Incremental row echelon form. Columns are eliminated in a fixed order
// (sparsest columns first when built through `rank`); each stored pivot row
// has leading coefficient 1 at its pivot column in that order.
template <class K>
class Echelon {
public:
    explicit Echelon(int cols) : Echelon(identity_order(cols)) {}

    // order[c] = elimination position of column c.
    explicit Echelon(std::vector<int> order)
        : order_(std::move(order)), pivot_of_pos_(order_.size(), -1), acc_(order_.size(), from_int<K>(0)),
          in_heap_(order_.size(), 0) {
        inv_.resize(order_.size());
        for (std::size_t c = 0; c < order_.size(); ++c) inv_[order_[c]] = static_cast<int>(c);
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return static_cast<int>(order_.size()); }

    // Reduces v against the current pivots; returns the remainder (in
    // original column numbering). Empty result means v is in the row space.
    SparseVec<K> reduce(const SparseVec<K>& v) {
        load(v);
        SparseVec<K> rest;
        drain(rest, true);
        return rest;
    }

    // Adds v; returns true if it was independent of the stored rows.
    bool add(const SparseVec<K>& v) {
        SparseVec<K> rest = reduce(v);
        if (rest.empty()) return false;
        int lead = rest.front().first;
        int lead_pos = order_[lead];
        for (const auto& e : rest)
            if (order_[e.first] < lead_pos) { lead = e.first; lead_pos = order_[lead]; }
        K inv = inverse(entry(rest, lead));
        for (auto& e : rest) e.second *= inv;
        pivot_of_pos_[lead_pos] = static_cast<int>(rows_.size());
        pivot_cols_.push_back(lead);
        rows_.push_back(std::move(rest));
        return true;
    }

    // Reduced row echelon rows (pivot column carries 1, zeros in all other
    // pivot columns), paired with their pivot columns.
    std::vector<std::pair<int, SparseVec<K>>> reduced_rows() const {
        std::vector<int> idx(rows_.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int x, int y) { return order_[pivot_cols_[x]] > order_[pivot_cols_[y]]; });
        std::vector<SparseVec<K>> red(rows_.size());
        std::vector<int> col_to_row(order_.size(), -1);
        // Process pivots from last to first; later pivots are already reduced.
        for (int r : idx) {
            SparseVec<K> cur = rows_[r];
            SparseVec<K> extra;
            for (const auto& [c, v] : cur) {
                if (c == pivot_cols_[r]) continue;
                int rr = col_to_row[c];
                if (rr < 0) continue;
                for (const auto& [c2, w] : red[rr]) extra.push_back({c2, -(v * w)});
            }
            SparseVec<K> out;
            for (const auto& [c, v] : cur)
                if (c == pivot_cols_[r] || col_to_row[c] < 0) out.push_back({c, v});
            for (auto& e : extra) out.push_back(std::move(e));
            canonicalize(out);
            red[r] = std::move(out);
            col_to_row[pivot_cols_[r]] = r;
        }
        std::vector<std::pair<int, SparseVec<K>>> res;
        for (std::size_t r = 0; r < rows_.size(); ++r) res.push_back({pivot_cols_[r], std::move(red[r])});
        std::sort(res.begin(), res.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return res;
    }

private:
    static std::vector<int> identity_order(int n) {
        std::vector<int> o(static_cast<std::size_t>(n));
        std::iota(o.begin(), o.end(), 0);
        return o;
    }

    static K entry(const SparseVec<K>& v, int c) {
        for (const auto& e : v)
            if (e.first == c) return e.second;
        return from_int<K>(0);
    }

    void load(const SparseVec<K>& v) {
        for (const auto& [c, x] : v) {
            acc_[order_[c]] += x;
            push(order_[c]);
        }
    }

    void push(int pos) {
        if (!in_heap_[pos]) { in_heap_[pos] = 1; heap_.push(pos); }
    }

    void drain(SparseVec<K>& rest, bool eliminate) {
        while (!heap_.empty()) {
            int pos = heap_.top();
            heap_.pop();
            in_heap_[pos] = 0;
            if (is_zero(acc_[pos])) continue;
            int pr = pivot_of_pos_[pos];
            if (eliminate && pr >= 0) {
                K f = acc_[pos];
                for (const auto& [c, w] : rows_[pr]) {
                    int p2 = order_[c];
                    acc_[p2] -= f * w;
                    if (p2 != pos) push(p2);
                }
                acc_[pos] = from_int<K>(0);
            } else {
                rest.push_back({inv_[pos], acc_[pos]});
                acc_[pos] = from_int<K>(0);
            }
        }
        canonicalize(rest);
    }

    std::vector<int> order_, inv_;
    std::vector<int> pivot_of_pos_;
    std::vector<int> pivot_cols_;
    std::vector<SparseVec<K>> rows_;
    std::vector<K> acc_;
    std::vector<char> in_heap_;
    std::priority_queue<int, std::vector<int>, std::greater<int>> heap_;
};

// Column order with sparsest columns first (Markowitz-style static ordering).
template <class K>
std::vector<int> sparse_column_order(const SparseMatrix<K>& m) {
    std::vector<int> count(static_cast<std::size_t>(m.cols()), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i)) ++count[e.first];
    std::vector<int> cols(static_cast<std::size_t>(m.cols()));
    std::iota(cols.begin(), cols.end(), 0);
    std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) { return count[a] < count[b]; });
    std::vector<int> order(cols.size());
    for (std::size_t p = 0; p < cols.size(); ++p) order[cols[p]] = static_cast<int>(p);
    return order;
}

template <class K>
Echelon<K> echelon_of_rows(const SparseMatrix<K>& m) {
    Echelon<K> e(sparse_column_order(m));
    std::vector<int> rows(static_cast<std::size_t>(m.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) { return m.row(a).size() < m.row(b).size(); });
    for (int r : rows)
        if (!m.row(r).empty()) e.add(m.row(r));
    return e;
}

template <class K>
int rank(const SparseMatrix<K>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Eliminate along the shorter side.
    if (m.rows() < m.cols()) return echelon_of_rows(m.transpose()).rank();
    return echelon_of_rows(m).rank();
}

// Basis of {x : m x = 0}; one vector per non-pivot column of the reduced
// row echelon form, with a 1 at that column.
template <class K>
std::vector<std::vector<K>> kernel_basis(const SparseMatrix<K>& m) {
    Echelon<K> e(m.cols());
    for (int r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) e.add(m.row(r));
    auto red = e.reduced_rows();
    std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
    for (const auto& pr : red) is_pivot[pr.first] = 1;
    std::vector<std::vector<int>> rows_with_col(static_cast<std::size_t>(m.cols()));
    for (std::size_t r = 0; r < red.size(); ++r)
        for (const auto& [c, v] : red[r].second)
            if (c != red[r].first) rows_with_col[c].push_back(static_cast<int>(r));
    std::vector<std::vector<K>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(static_cast<std::size_t>(m.cols()), from_int<K>(0));
        v[f] = from_int<K>(1);
        for (int r : rows_with_col[f])
            for (const auto& [c, x] : red[r].second)
                if (c == f) v[red[r].first] = -x;
        basis.push_back(std::move(v));
    }
    return basis;
}

// dim ker(d_out) - rank(d_in) at the position between the two maps.
template <class K>
int betti(const SparseMatrix<K>& d_in, const SparseMatrix<K>& d_out) {
    if (d_out.cols() != d_in.rows()) throw std::invalid_argument("betti: maps are not composable");
    if (!(d_out * d_in).is_zero_matrix()) throw std::invalid_argument("betti: d_out * d_in is not zero");
    return (d_out.cols() - rank(d_out)) - rank(d_in);
}

template <class K>
SparseVec<K> to_sparse(const std::vector<K>& v) {
    SparseVec<K> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s.push_back({static_cast<int>(i), v[i]});
    return s;
}

// True when y lies in the column space of m.
template <class K>
bool in_column_space(const SparseMatrix<K>& m, const std::vector<K>& y) {
    SparseMatrix<K> t = m.transpose();
    Echelon<K> e(sparse_column_order(t));
    for (int r = 0; r < t.rows(); ++r)
        if (!t.row(r).empty()) e.add(t.row(r));
    return e.reduce(to_sparse(y)).empty();
}

}  // namespace psk
