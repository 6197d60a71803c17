// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "basecat.hpp"
#include "lincat.hpp"

namespace psk {

// A block of cochain coordinates: one simplex, one object tuple, all basis
// tuples of the argument homs, and the coordinates of the value space.
struct CochainBlock {
    int p = 0;
    int sigma = 0;
    std::vector<int> objs;
    std::vector<int> ranks;
    int dim = 0;
    long offset = 0;
    long count = 0;
};

// Decoded coordinate.
struct CochainKey {
    int block = 0;
    std::vector<int> basis;
    int j = 0;
};

// Enumeration of the coordinates of one cochain degree. Blocks are ordered
// by simplex length, then simplex (nerve order), then object tuple
// (lexicographic); within a block by basis tuple (first argument most
// significant), then value coordinate.
class CochainLayout {
public:
    using RankFn = std::function<std::pair<std::vector<int>, int>(const std::vector<int>& objs)>;

    CochainLayout() = default;
    CochainLayout(const BaseCategory& base, int degree) : degree_(degree), base_(&base) {}

    int degree() const { return degree_; }
    long size() const { return size_; }
    const std::vector<CochainBlock>& blocks() const { return blocks_; }
    const CochainBlock& block(int b) const { return blocks_[b]; }

    const std::vector<Simplex>& nerve(int p) const { return nerves_.at(p); }
    bool has_length(int p) const { return p >= 0 && p < static_cast<int>(nerves_.size()) && !nerves_[p].empty(); }

    // Registers simplex length p with the given nerve; must be called in
    // increasing p before add_sigma.
    void add_length(int p, std::vector<Simplex> nerve) {
        if (static_cast<int>(nerves_.size()) <= p) {
            nerves_.resize(p + 1);
            index_.resize(p + 1);
            first_block_.resize(p + 1);
            radix_.resize(p + 1);
        }
        for (int i = 0; i < static_cast<int>(nerve.size()); ++i) index_[p][key_of(nerve[i])] = i;
        first_block_[p].assign(nerve.size(), -1);
        radix_[p].assign(nerve.size(), {});
        nerves_[p] = std::move(nerve);
    }

    // Adds all blocks for one simplex; counts[i] is the number of objects
    // allowed at position i.
    void add_sigma(int p, int sigma, const std::vector<int>& counts, const RankFn& ranks) {
        first_block_[p][sigma] = static_cast<int>(blocks_.size());
        radix_[p][sigma] = counts;
        std::vector<int> objs(counts.size(), 0);
        for (int c : counts)
            if (c == 0) return;
        while (true) {
            CochainBlock b;
            b.p = p;
            b.sigma = sigma;
            b.objs = objs;
            auto [r, d] = ranks(objs);
            b.ranks = std::move(r);
            b.dim = d;
            b.offset = size_;
            b.count = d;
            for (int x : b.ranks) b.count *= x;
            size_ += b.count;
            blocks_.push_back(std::move(b));
            int i = static_cast<int>(objs.size()) - 1;
            while (i >= 0 && ++objs[i] == counts[i]) objs[i--] = 0;
            if (i < 0) break;
        }
    }

    int find_sigma(const Simplex& s) const {
        int p = s.length();
        if (p >= static_cast<int>(index_.size())) return -1;
        auto it = index_[p].find(key_of(s));
        return it == index_[p].end() ? -1 : it->second;
    }

    int find_block(int p, int sigma, const std::vector<int>& objs) const {
        const auto& rad = radix_[p][sigma];
        if (rad.size() != objs.size()) throw std::logic_error("object tuple has the wrong length");
        long idx = 0;
        for (std::size_t i = 0; i < objs.size(); ++i) idx = idx * rad[i] + objs[i];
        return first_block_[p][sigma] + static_cast<int>(idx);
    }

    int find_block(const Simplex& s, const std::vector<int>& objs) const {
        int sig = find_sigma(s);
        if (sig < 0) throw std::logic_error("simplex not present in layout");
        return find_block(s.length(), sig, objs);
    }

    long coord(int block, const std::vector<int>& basis, int j) const {
        const auto& b = blocks_[block];
        long idx = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) idx = idx * b.ranks[i] + basis[i];
        return b.offset + idx * b.dim + j;
    }

    CochainKey decode(long c) const {
        auto it = std::upper_bound(blocks_.begin(), blocks_.end(), c,
                                   [](long v, const CochainBlock& b) { return v < b.offset; });
        CochainKey k;
        k.block = static_cast<int>(it - blocks_.begin()) - 1;
        const auto& b = blocks_[k.block];
        long r = c - b.offset;
        k.j = static_cast<int>(r % b.dim);
        r /= b.dim;
        k.basis.assign(b.ranks.size(), 0);
        for (int i = static_cast<int>(b.ranks.size()) - 1; i >= 0; --i) {
            k.basis[i] = static_cast<int>(r % b.ranks[i]);
            r /= b.ranks[i];
        }
        return k;
    }

    const Simplex& simplex_of(int block) const { return nerves_[blocks_[block].p][blocks_[block].sigma]; }

    // Calls fn(block, basis) for every basis tuple of every block.
    template <class Fn>
    void for_each_key(Fn&& fn) const {
        for (int b = 0; b < static_cast<int>(blocks_.size()); ++b) {
            const auto& bl = blocks_[b];
            if (bl.count == 0) continue;
            std::vector<int> basis(bl.ranks.size(), 0);
            while (true) {
                fn(b, basis);
                int i = static_cast<int>(basis.size()) - 1;
                while (i >= 0 && ++basis[i] == bl.ranks[i]) basis[i--] = 0;
                if (i < 0) break;
            }
        }
    }

private:
    static std::vector<int> key_of(const Simplex& s) {
        if (s.arrows.empty()) return {-1 - s.start};
        return s.arrows;
    }

    int degree_ = 0;
    const BaseCategory* base_ = nullptr;
    long size_ = 0;
    std::vector<std::vector<Simplex>> nerves_;
    std::vector<std::map<std::vector<int>, int>> index_;
    std::vector<std::vector<int>> first_block_;
    std::vector<std::vector<std::vector<int>>> radix_;
    std::vector<CochainBlock> blocks_;
};

// Source of cochain values: either the coordinates of a concrete cochain
// or the identity linear forms (for matrix assembly).
template <class K>
struct DenseSource {
    using V = K;
    const std::vector<K>* x;
    V at(long i) const { return (*x)[i]; }
};

template <class K>
struct FormSource {
    using V = Form<K>;
    V at(long i) const { return Form<K>{{{static_cast<int>(i), from_int<K>(1)}}}; }
};

// Multilinear evaluation of a cochain at a block with general arguments.
template <class K, class Src>
std::vector<typename Src::V> eval_block(const CochainLayout& L, const Src& src, int block,
                                        const std::vector<Mor<K>>& args) {
    using V = typename Src::V;
    const auto& b = L.block(block);
    std::vector<V> out(static_cast<std::size_t>(b.dim));
    if (b.count == 0) return out;
    std::size_t q = args.size();
    if (q != b.ranks.size()) throw std::logic_error("argument count does not match block");
    std::vector<std::vector<std::pair<int, K>>> nz(q);
    for (std::size_t i = 0; i < q; ++i) {
        if (static_cast<int>(args[i].size()) != b.ranks[i]) throw std::logic_error("argument has wrong rank");
        for (int t = 0; t < b.ranks[i]; ++t)
            if (!is_zero(args[i][t])) nz[i].push_back({t, args[i][t]});
        if (nz[i].empty()) return out;
    }
    std::vector<std::size_t> it(q, 0);
    while (true) {
        K coef = from_int<K>(1);
        long idx = 0;
        for (std::size_t i = 0; i < q; ++i) {
            coef *= nz[i][it[i]].second;
            idx = idx * b.ranks[i] + nz[i][it[i]].first;
        }
        long base = b.offset + idx * b.dim;
        for (int j = 0; j < b.dim; ++j) axpy(out[j], coef, src.at(base + j));
        int i = static_cast<int>(q) - 1;
        while (i >= 0 && ++it[i] == nz[i].size()) it[i--] = 0;
        if (i < 0) break;
    }
    tidy_all(out);
    return out;
}

// Applies `value_at(block, basis)` to every key of `out_layout` and
// collects the result either as coordinates or as matrix rows.
template <class K, class Fn>
std::vector<K> collect_dense(const CochainLayout& out_layout, Fn&& value_at) {
    std::vector<K> y(static_cast<std::size_t>(out_layout.size()), from_int<K>(0));
    out_layout.for_each_key([&](int b, const std::vector<int>& basis) {
        std::vector<K> v = value_at(b, basis);
        long c = out_layout.coord(b, basis, 0);
        for (std::size_t j = 0; j < v.size(); ++j) y[c + j] = v[j];
    });
    return y;
}

template <class K, class Fn>
SparseMatrix<K> collect_matrix(const CochainLayout& out_layout, long in_size, Fn&& value_at) {
    SparseMatrix<K> m(static_cast<int>(out_layout.size()), static_cast<int>(in_size));
    out_layout.for_each_key([&](int b, const std::vector<int>& basis) {
        std::vector<Form<K>> v = value_at(b, basis);
        long c = out_layout.coord(b, basis, 0);
        for (std::size_t j = 0; j < v.size(); ++j) m.set_row(static_cast<int>(c + j), std::move(v[j].terms));
    });
    return m;
}

template <class K>
std::vector<K> random_coords(long n, std::uint64_t seed, int lo = -2, int hi = 2) {
    std::mt19937_64 rng(seed);
    std::vector<K> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = random_small<K>(rng, lo, hi);
    return x;
}

}  // namespace psk
