// SPDX-License-Identifier: MIT
#include "basecat.hpp"

#include <stdexcept>

namespace psk {

int BaseCategory::add_object(const std::string& name) {
    if (find_object(name) >= 0) throw std::invalid_argument("duplicate base object '" + name + "'");
    objects_.push_back(name);
    identities_.push_back(-1);
    return num_objects() - 1;
}

int BaseCategory::add_arrow(const std::string& name, int src, int tgt) {
    if (find_arrow(name) >= 0) throw std::invalid_argument("duplicate arrow '" + name + "'");
    if (src < 0 || src >= num_objects() || tgt < 0 || tgt >= num_objects())
        throw std::invalid_argument("arrow '" + name + "' has an unknown endpoint");
    arrows_.push_back({name, src, tgt});
    identity_of_.push_back(-1);
    grow_table();
    return num_arrows() - 1;
}

void BaseCategory::grow_table() {
    int n = num_arrows();
    std::vector<int> t(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) t[i * n + j] = table_[i * (n - 1) + j];
    table_ = std::move(t);
}

void BaseCategory::set_identity(int object, int arrow) {
    if (arrows_.at(arrow).src != object || arrows_[arrow].tgt != object)
        throw std::invalid_argument("identity of '" + objects_.at(object) + "' must be an endomorphism");
    if (identities_.at(object) >= 0) identity_of_[identities_[object]] = -1;
    identities_[object] = arrow;
    identity_of_[arrow] = object;
}

void BaseCategory::set_compose(int first, int second, int result) {
    if (tgt(first) != src(second))
        throw std::invalid_argument("arrows '" + arrows_[first].name + "' and '" + arrows_[second].name +
                                    "' are not composable");
    table_[first * num_arrows() + second] = result;
}

int BaseCategory::find_object(const std::string& name) const {
    for (int i = 0; i < num_objects(); ++i)
        if (objects_[i] == name) return i;
    return -1;
}

int BaseCategory::find_arrow(const std::string& name) const {
    for (int i = 0; i < num_arrows(); ++i)
        if (arrows_[i].name == name) return i;
    return -1;
}

int BaseCategory::compose(int first, int second) const {
    int r = compose_or_missing(first, second);
    if (r < 0)
        throw std::logic_error("composition of '" + arrows_[first].name + "' then '" + arrows_[second].name +
                               "' is undefined");
    return r;
}

std::optional<std::string> BaseCategory::validate() const {
    for (int x = 0; x < num_objects(); ++x)
        if (identities_[x] < 0) return "object '" + objects_[x] + "' has no identity arrow";
    int n = num_arrows();
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (tgt(f) != src(g)) continue;
            int h = compose_or_missing(f, g);
            if (h < 0) return "missing composition of '" + arrows_[f].name + "' then '" + arrows_[g].name + "'";
            if (src(h) != src(f) || tgt(h) != tgt(g))
                return "composite of '" + arrows_[f].name + "' then '" + arrows_[g].name + "' has wrong endpoints";
        }
    for (int f = 0; f < n; ++f) {
        if (compose(identity(src(f)), f) != f || compose(f, identity(tgt(f))) != f)
            return "unit law fails for '" + arrows_[f].name + "'";
    }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (tgt(f) != src(g)) continue;
            for (int h = 0; h < n; ++h) {
                if (tgt(g) != src(h)) continue;
                if (compose(compose(f, g), h) != compose(f, compose(g, h)))
                    return "associativity fails for ('" + arrows_[f].name + "', '" + arrows_[g].name + "', '" +
                           arrows_[h].name + "')";
            }
        }
    return std::nullopt;
}

std::vector<Simplex> BaseCategory::nerve(int p) const {
    if (p < 0) throw std::invalid_argument("nerve degree must be non-negative");
    std::vector<Simplex> out;
    if (p == 0) {
        for (int x = 0; x < num_objects(); ++x) out.push_back({x, {}});
        return out;
    }
    Simplex cur;
    cur.arrows.reserve(p);
    auto rec = [&](auto&& self) -> void {
        if (cur.length() == p) {
            cur.start = src(cur.arrows[0]);
            out.push_back(cur);
            return;
        }
        for (int a = 0; a < num_arrows(); ++a) {
            if (!cur.arrows.empty() && src(a) != tgt(cur.arrows.back())) continue;
            cur.arrows.push_back(a);
            self(self);
            cur.arrows.pop_back();
        }
    };
    rec(rec);
    return out;
}

int BaseCategory::object_at(const Simplex& s, int i) const {
    if (i < 0 || i > s.length()) throw std::out_of_range("simplex vertex index out of range");
    return i == 0 ? s.start : tgt(s.arrows[i - 1]);
}

Simplex BaseCategory::face(const Simplex& s, int i) const {
    int p = s.length();
    if (i < 0 || i > p || p == 0) throw std::out_of_range("face index out of range");
    Simplex r;
    if (i == 0) {
        r.arrows.assign(s.arrows.begin() + 1, s.arrows.end());
        r.start = tgt(s.arrows[0]);
    } else if (i == p) {
        r.arrows.assign(s.arrows.begin(), s.arrows.end() - 1);
        r.start = s.start;
    } else {
        r.arrows = s.arrows;
        r.arrows[i - 1] = compose(s.arrows[i - 1], s.arrows[i]);
        r.arrows.erase(r.arrows.begin() + i);
        r.start = s.start;
    }
    return r;
}

Simplex BaseCategory::sub(const Simplex& s, int from, int to) const {
    if (from < 0 || to > s.length() || from > to) throw std::out_of_range("sub-simplex range out of bounds");
    Simplex r;
    r.start = object_at(s, from);
    r.arrows.assign(s.arrows.begin() + from, s.arrows.begin() + to);
    return r;
}

Simplex BaseCategory::concat(const Simplex& a, const Simplex& b) const {
    if (target(a) != b.start) throw std::invalid_argument("simplices are not composable");
    Simplex r = a;
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return r;
}

int BaseCategory::composite(const std::vector<int>& word, int start) const {
    int c = identity(start);
    for (int a : word) c = compose(c, a);
    return c;
}

int BaseCategory::composite(const Simplex& s) const { return composite(s.arrows, s.start); }

bool BaseCategory::is_right_degenerate(const Simplex& s, int k) const {
    int p = s.length();
    for (int i = p - k + 1; i <= p; ++i)
        if (i >= 1 && is_identity(s.arrows[i - 1])) return true;
    return false;
}

std::string BaseCategory::describe(const Simplex& s) const {
    if (s.arrows.empty()) return "@" + objects_[s.start];
    std::string r = "(";
    for (int i = 0; i < s.length(); ++i) r += (i ? "," : "") + arrows_[s.arrows[i]].name;
    return r + ")";
}

}  // namespace psk
