// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace psk {

// Maximum number of entries in an enumerated path or shuffle. Defaults to 8
// and can be raised through the PSK_ENUM_CAP environment variable.
int enum_cap();
void set_enum_cap(int cap);

// Sign of a permutation given as an array of distinct 0-based images.
int permutation_sign(const std::vector<int>& perm);

// A shuffle of blocks (n_1, ..., n_k). Items are numbered block by block and
// pos[item] is the 0-based formal position of the item. Within a block,
// positions increase.
struct Shuffle {
    std::vector<int> blocks;
    std::vector<int> pos;
    int sign = 1;

    int size() const { return static_cast<int>(pos.size()); }
    // (block, index within block) for each formal position.
    std::vector<std::pair<int, int>> formal_order() const;
    // Same list read from the source end (the reverse of the formal order).
    std::vector<std::pair<int, int>> path_order() const;
};

Shuffle make_shuffle(std::vector<int> blocks, std::vector<int> pos);
std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& blocks);
// Shuffles in which the first items of the (non-empty) blocks appear in
// increasing formal position.
std::vector<Shuffle> enumerate_conditioned(const std::vector<int>& blocks);
bool is_conditioned(const Shuffle& s);

template <class T>
std::vector<T> formal_shuffle(const Shuffle& s, const std::vector<std::vector<T>>& seqs) {
    if (seqs.size() != s.blocks.size()) throw std::invalid_argument("formal_shuffle: wrong number of sequences");
    std::vector<T> out(static_cast<std::size_t>(s.size()));
    int item = 0;
    for (std::size_t b = 0; b < seqs.size(); ++b) {
        if (static_cast<int>(seqs[b].size()) != s.blocks[b])
            throw std::invalid_argument("formal_shuffle: sequence length does not match block size");
        for (const auto& x : seqs[b]) out[s.pos[item++]] = x;
    }
    return out;
}

// Per-level chains of a conditioned shuffle: level l holds the formal
// positions from the head of block l up to (excluding) the head of block
// l+1. Concatenating the levels gives back the formal order.
std::vector<std::vector<std::pair<int, int>>> conditioned_split(const Shuffle& s);

// A path of whiskered twists from u_1*...u_n* to (u_n...u_1)*. Entry r_k
// (k = 1..n-1) merges positions idx[k-1], idx[k-1]+1 (1-based) of a word of
// length k+1; r_{n-1} is applied first.
struct Path {
    std::vector<int> idx;
    int sign = 1;

    int length() const { return static_cast<int>(idx.size()) + 1; }
    bool operator==(const Path& o) const { return idx == o.idx; }
};

int path_sign(const std::vector<int>& idx);
// All (n-1)! paths on n arrows; n >= 2.
std::vector<Path> enumerate_paths(int n);
// Like enumerate_paths, but n <= 1 yields the single empty path.
std::vector<Path> paths_or_trivial(int n);
// Swaps entries r_k and r_{k+1}, 1 <= k <= n-2.
Path flip(const Path& r, int k);

// A path whose final entry merges L_k and R_k, decomposed into a path r on
// the last n-k arrows, a path s on the first k arrows, and a shuffle of
// their remaining entries (r block first).
struct PathSplit {
    int k = 0;
    Path r, s;
    Shuffle beta;
};

Path join_paths(int n, int k, const Path& r, const Path& s, const Shuffle& beta);
PathSplit split_path(const Path& w);

// Composition of n in source order: blocks[0] covers the first arrows.
struct Partition {
    std::vector<int> blocks;
    int sign = 1;
};

std::vector<Partition> partitions(int n);

}  // namespace psk
