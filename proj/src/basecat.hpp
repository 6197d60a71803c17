// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace psk {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

// A composable chain U_0 -u_1-> U_1 -> ... -u_p-> U_p. For p = 0 only the
// start object is meaningful.
struct Simplex {
    int start = 0;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    bool operator==(const Simplex& o) const { return start == o.start && arrows == o.arrows; }
    bool operator<(const Simplex& o) const {
        return arrows != o.arrows ? arrows < o.arrows : start < o.start;
    }
};

// Finite category given by a total composition table.
class BaseCategory {
public:
    int add_object(const std::string& name);
    int add_arrow(const std::string& name, int src, int tgt);
    void set_identity(int object, int arrow);
    // second o first, for first: X -> Y and second: Y -> Z.
    void set_compose(int first, int second, int result);

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::string& object_name(int x) const { return objects_.at(x); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    int src(int a) const { return arrows_[a].src; }
    int tgt(int a) const { return arrows_[a].tgt; }
    int identity(int object) const { return identities_.at(object); }
    bool is_identity(int a) const { return identity_of_[a] >= 0; }
    int find_object(const std::string& name) const;  // -1 if absent
    int find_arrow(const std::string& name) const;   // -1 if absent

    // Table entry for the composable pair, or -1 if unset.
    int compose_or_missing(int first, int second) const { return table_[first * num_arrows() + second]; }
    int compose(int first, int second) const;

    // First violated axiom, or nullopt when the data is a category.
    std::optional<std::string> validate() const;

    // All p-simplices in lexicographic order of arrow ids (objects for p = 0).
    std::vector<Simplex> nerve(int p) const;

    int object_at(const Simplex& s, int i) const;
    int target(const Simplex& s) const { return object_at(s, s.length()); }
    // Face d_i: drops u_1 (i = 0), composes u_{i+1} u_i, or drops u_p (i = p).
    Simplex face(const Simplex& s, int i) const;
    Simplex left(const Simplex& s, int k) const { return sub(s, 0, k); }
    Simplex right(const Simplex& s, int k) const { return sub(s, k, s.length()); }
    // Arrows with positions [from, to).
    Simplex sub(const Simplex& s, int from, int to) const;
    Simplex concat(const Simplex& a, const Simplex& b) const;
    // u_p ... u_1, or the identity of the start object for p = 0.
    int composite(const Simplex& s) const;
    int composite(const std::vector<int>& word, int start) const;
    bool is_right_degenerate(const Simplex& s, int k) const;
    bool is_degenerate(const Simplex& s) const { return is_right_degenerate(s, s.length()); }

    std::string describe(const Simplex& s) const;

private:
    void grow_table();

    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<int> identities_;
    std::vector<int> identity_of_;
    std::vector<int> table_;
};

}  // namespace psk
