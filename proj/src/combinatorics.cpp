// SPDX-License-Identifier: MIT
#include "combinatorics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <string>

namespace psk {

namespace {

std::atomic<int> g_cap{-1};

void check_cap(int n, const char* what) {
    if (n > enum_cap())
        throw std::length_error(std::string(what) + " enumeration of size " + std::to_string(n) +
                                " exceeds the cap " + std::to_string(enum_cap()) + " (set PSK_ENUM_CAP to raise it)");
}

}  // namespace

int enum_cap() {
    int c = g_cap.load();
    if (c < 0) {
        c = 8;
        if (const char* env = std::getenv("PSK_ENUM_CAP")) {
            int v = std::atoi(env);
            if (v > 0) c = v;
        }
        g_cap.store(c);
    }
    return c;
}

void set_enum_cap(int cap) {
    if (cap <= 0) throw std::invalid_argument("enumeration cap must be positive");
    g_cap.store(cap);
}

int permutation_sign(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::vector<std::pair<int, int>> Shuffle::formal_order() const {
    std::vector<std::pair<int, int>> out(pos.size());
    int item = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int t = 0; t < blocks[b]; ++t) out[pos[item++]] = {static_cast<int>(b), t};
    return out;
}

std::vector<std::pair<int, int>> Shuffle::path_order() const {
    auto f = formal_order();
    std::reverse(f.begin(), f.end());
    return f;
}

Shuffle make_shuffle(std::vector<int> blocks, std::vector<int> pos) {
    Shuffle s;
    s.blocks = std::move(blocks);
    s.pos = std::move(pos);
    if (std::accumulate(s.blocks.begin(), s.blocks.end(), 0) != s.size())
        throw std::invalid_argument("shuffle positions do not match block sizes");
    s.sign = permutation_sign(s.pos);
    return s;
}

std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& blocks) {
    int n = 0;
    for (int b : blocks) {
        if (b < 0) throw std::invalid_argument("block sizes must be non-negative");
        n += b;
    }
    check_cap(n, "shuffle");
    std::vector<int> start(blocks.size(), 0);
    for (std::size_t b = 1; b < blocks.size(); ++b) start[b] = start[b - 1] + blocks[b - 1];
    std::vector<int> used(blocks.size(), 0);
    std::vector<int> pos(static_cast<std::size_t>(n), 0);
    std::vector<Shuffle> out;
    auto rec = [&](auto&& self, int p) -> void {
        if (p == n) {
            out.push_back(make_shuffle(blocks, pos));
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (used[b] == blocks[b]) continue;
            pos[start[b] + used[b]] = p;
            ++used[b];
            self(self, p + 1);
            --used[b];
        }
    };
    rec(rec, 0);
    return out;
}

bool is_conditioned(const Shuffle& s) {
    int item = 0, last = -1;
    for (int b : s.blocks) {
        if (b > 0) {
            if (s.pos[item] <= last) return false;
            last = s.pos[item];
        }
        item += b;
    }
    return true;
}

std::vector<Shuffle> enumerate_conditioned(const std::vector<int>& blocks) {
    std::vector<Shuffle> out;
    for (auto& s : enumerate_shuffles(blocks))
        if (is_conditioned(s)) out.push_back(std::move(s));
    return out;
}

std::vector<std::vector<std::pair<int, int>>> conditioned_split(const Shuffle& s) {
    if (!is_conditioned(s)) throw std::invalid_argument("conditioned_split: shuffle is not conditioned");
    std::vector<std::vector<std::pair<int, int>>> levels;
    for (const auto& e : s.formal_order()) {
        if (e.second == 0) levels.emplace_back();
        if (levels.empty()) throw std::logic_error("conditioned shuffle does not start with a block head");
        levels.back().push_back(e);
    }
    return levels;
}

int path_sign(const std::vector<int>& idx) {
    int s = 1;
    for (int i : idx)
        if (i % 2) s = -s;
    return s;
}

std::vector<Path> paths_or_trivial(int n) {
    if (n <= 1) return {Path{}};
    check_cap(n, "path");
    std::vector<Path> out;
    std::vector<int> idx(static_cast<std::size_t>(n - 1), 1);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            out.push_back({idx, path_sign(idx)});
            return;
        }
        for (int i = 1; i <= k; ++i) {
            idx[k - 1] = i;
            self(self, k + 1);
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<Path> enumerate_paths(int n) {
    if (n < 2) throw std::invalid_argument("paths are defined for simplices of length at least 2");
    return paths_or_trivial(n);
}

Path flip(const Path& r, int k) {
    int n = r.length();
    if (k < 1 || k > n - 2) throw std::out_of_range("flip index out of range");
    Path f = r;
    int i = r.idx[k], j = r.idx[k - 1];
    if (i > j) {
        f.idx[k] = j;
        f.idx[k - 1] = i - 1;
    } else {
        f.idx[k] = j + 1;
        f.idx[k - 1] = i;
    }
    f.sign = path_sign(f.idx);
    return f;
}

Path join_paths(int n, int k, const Path& r, const Path& s, const Shuffle& beta) {
    if (k < 1 || k > n - 1) throw std::out_of_range("join_paths: split point out of range");
    if (r.length() != std::max(1, n - k) || s.length() != std::max(1, k))
        throw std::invalid_argument("join_paths: path lengths do not match the split");
    if (beta.blocks != std::vector<int>{n - k - 1, k - 1})
        throw std::invalid_argument("join_paths: shuffle has the wrong block sizes");
    Path w;
    w.idx.assign(static_cast<std::size_t>(n - 1), 1);
    auto formal = beta.formal_order();
    int l_len = k;
    // Entry omega_m sits at formal position m - 2; apply from m = n - 1 down.
    for (int m = n - 1; m >= 2; --m) {
        auto [b, t] = formal[m - 2];
        if (b == 0) {
            w.idx[m - 1] = l_len + r.idx[t];
        } else {
            w.idx[m - 1] = s.idx[t];
            --l_len;
        }
    }
    w.idx[0] = 1;
    w.sign = path_sign(w.idx);
    return w;
}

PathSplit split_path(const Path& w) {
    int n = w.length();
    if (n < 2) throw std::invalid_argument("split_path: path too short");
    // Segments of original arrows, as [begin, end) ranges.
    std::vector<std::pair<int, int>> seg;
    for (int i = 0; i < n; ++i) seg.push_back({i, i + 1});
    for (int m = n - 1; m >= 2; --m) {
        int i = w.idx[m - 1];
        seg[i - 1].second = seg[i].second;
        seg.erase(seg.begin() + i);
    }
    if (w.idx[0] != 1 || seg.size() != 2) throw std::invalid_argument("split_path: malformed path");
    PathSplit out;
    out.k = seg[0].second;
    int k = out.k;
    out.r.idx.assign(static_cast<std::size_t>(std::max(0, n - k - 1)), 1);
    out.s.idx.assign(static_cast<std::size_t>(std::max(0, k - 1)), 1);
    std::vector<int> pos(static_cast<std::size_t>(n - 2), 0);
    seg.clear();
    for (int i = 0; i < n; ++i) seg.push_back({i, i + 1});
    int l_len = k, r_len = n - k;
    for (int m = n - 1; m >= 2; --m) {
        int i = w.idx[m - 1];
        if (seg[i - 1].first >= k) {
            int t = r_len - 2;  // r_{t+1} merges within an R-word of length t + 2
            out.r.idx[t] = i - l_len;
            pos[t] = m - 2;
            --r_len;
        } else {
            if (seg[i].second > k) throw std::invalid_argument("split_path: merge crosses the split");
            int t = l_len - 2;
            out.s.idx[t] = i;
            pos[(n - k - 1) + t] = m - 2;
            --l_len;
        }
        seg[i - 1].second = seg[i].second;
        seg.erase(seg.begin() + i);
    }
    out.r.sign = path_sign(out.r.idx);
    out.s.sign = path_sign(out.s.idx);
    out.beta = make_shuffle({n - k - 1, k - 1}, pos);
    return out;
}

std::vector<Partition> partitions(int n) {
    if (n < 0) throw std::invalid_argument("partitions of a negative number");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            int k = static_cast<int>(cur.size());
            out.push_back({cur, (n - k) % 2 ? -1 : 1});
            return;
        }
        for (int m = rest; m >= 1; --m) {
            cur.push_back(m);
            self(self, rest - m);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

}  // namespace psk
