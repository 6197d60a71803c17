// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cochain.hpp"
#include "prestack.hpp"

namespace psk {

// Malformed input (as opposed to well-formed data violating an axiom).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file that cannot be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficient ring of a prestack file.
struct Ring {
    enum Kind { Q, Fp, QDual, FpDual };
    Kind kind = Q;
    std::uint32_t p = 0;

    bool dual() const { return kind == QDual || kind == FpDual; }
    bool prime() const { return kind == Fp || kind == FpDual; }
    std::string name() const;
};

Ring parse_ring(const nlohmann::json& j);
nlohmann::json ring_to_json(const Ring& r);

// ---- scalars --------------------------------------------------------------

template <class K>
struct ScalarJson {
    static K read(const nlohmann::json& j) {
        if (j.is_number_integer()) return from_int<K>(j.get<long long>());
        if (j.is_string()) {
            try {
                return parse_scalar<K>(j.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what());
            }
        }
        throw ParseError("expected a scalar (integer or string), got " + j.dump());
    }
    static nlohmann::json write(const K& x) { return to_string(x); }
};

template <class K>
struct ScalarJson<Dual<K>> {
    static Dual<K> read(const nlohmann::json& j) {
        if (j.is_array()) {
            if (j.size() != 2) throw ParseError("dual scalar needs two entries, got " + j.dump());
            return {ScalarJson<K>::read(j[0]), ScalarJson<K>::read(j[1])};
        }
        return {ScalarJson<K>::read(j), from_int<K>(0)};
    }
    static nlohmann::json write(const Dual<K>& x) {
        return nlohmann::json::array({ScalarJson<K>::write(x.a), ScalarJson<K>::write(x.b)});
    }
};

// ---- prestack files -------------------------------------------------------

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::string str(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string, got " + j.dump());
    return j.get<std::string>();
}

inline int integer(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer, got " + j.dump());
    return j.get<int>();
}

inline const nlohmann::json& array(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    return j;
}

BaseCategory parse_base(const nlohmann::json& j);
nlohmann::json base_to_json(const BaseCategory& B);

}  // namespace detail

template <class K>
Prestack<K> prestack_from_json(const nlohmann::json& doc) {
    using namespace detail;
    Prestack<K> P;
    P.base = parse_base(field(doc, "base", "document"));
    const auto& B = P.base;
    auto arrow_id = [&](const nlohmann::json& j, const std::string& where) {
        std::string n = str(j, where);
        int a = B.find_arrow(n);
        if (a < 0) throw ParseError(where + ": unknown arrow '" + n + "'");
        return a;
    };
    auto read_mor = [&](const nlohmann::json& j, int len, const std::string& where) {
        array(j, where);
        if (static_cast<int>(j.size()) != len)
            throw ParseError(where + ": expected " + std::to_string(len) + " coordinates, got " + std::to_string(j.size()));
        Mor<K> m;
        for (const auto& x : j) m.push_back(ScalarJson<K>::read(x));
        return m;
    };
    const auto& fibers = field(doc, "fibers", "document");
    if (!fibers.is_object()) throw ParseError("fibers: expected an object keyed by base object");
    for (int U = 0; U < B.num_objects(); ++U) {
        std::string where = "fiber '" + B.object_name(U) + "'";
        const auto& f = field(fibers, B.object_name(U).c_str(), "fibers");
        std::vector<std::string> names;
        for (const auto& o : array(field(f, "objects", where), where + " objects")) names.push_back(str(o, where));
        int n = static_cast<int>(names.size());
        auto obj = [&](const nlohmann::json& j, const std::string& w) {
            std::string s = str(j, w);
            for (int i = 0; i < n; ++i)
                if (names[i] == s) return i;
            throw ParseError(w + ": unknown object '" + s + "'");
        };
        std::vector<int> ranks(static_cast<std::size_t>(n) * n, 0);
        if (f.contains("homs"))
            for (const auto& h : array(f.at("homs"), where + " homs")) {
                int a = obj(field(h, "src", where), where), b = obj(field(h, "tgt", where), where);
                int r = integer(field(h, "rank", where), where);
                if (r < 0) throw ParseError(where + ": negative hom rank");
                ranks[a * n + b] = r;
            }
        LinearCategory<K> C(names, ranks);
        if (f.contains("compose"))
            for (const auto& c : array(f.at("compose"), where + " compose")) {
                int a = obj(field(c, "src", where), where), m = obj(field(c, "mid", where), where);
                int t = obj(field(c, "tgt", where), where);
                std::map<std::pair<int, int>, SparseVec<K>> acc;
                for (const auto& e : array(field(c, "constants", where), where + " constants")) {
                    if (!e.is_array() || e.size() != 4) throw ParseError(where + ": constants entries are [i, j, k, value]");
                    int i = integer(e[0], where), jj = integer(e[1], where), k = integer(e[2], where);
                    if (i < 0 || i >= C.rank(a, m) || jj < 0 || jj >= C.rank(m, t) || k < 0 || k >= C.rank(a, t))
                        throw ParseError(where + ": structure constant index out of range");
                    acc[{i, jj}].push_back({k, ScalarJson<K>::read(e[3])});
                }
                for (auto& [ij, v] : acc) C.set_compose(a, m, t, ij.first, ij.second, std::move(v));
            }
        for (int A = 0; A < n; ++A) {
            if (C.rank(A, A) == 0) continue;
            std::string w = where + " identity of '" + names[A] + "'";
            const auto& ids = field(f, "identities", where);
            C.set_identity(A, read_mor(field(ids, names[A].c_str(), w), C.rank(A, A), w));
        }
        P.fibers.push_back(std::move(C));
    }
    P.restrictions.resize(B.num_arrows());
    std::vector<char> seen(B.num_arrows(), 0);
    if (doc.contains("restrictions"))
        for (const auto& r : array(doc.at("restrictions"), "restrictions")) {
            int u = arrow_id(field(r, "arrow", "restriction"), "restriction");
            std::string where = "restriction along '" + B.arrow(u).name + "'";
            if (seen[u]) throw ParseError(where + ": given twice");
            seen[u] = 1;
            const auto& C = P.fibers[B.tgt(u)];
            const auto& D = P.fibers[B.src(u)];
            std::vector<int> omap(C.num_objects(), -1);
            const auto& om = field(r, "objects", where);
            for (int A = 0; A < C.num_objects(); ++A) {
                std::string tn = str(field(om, C.object_name(A).c_str(), where), where);
                omap[A] = D.find_object(tn);
                if (omap[A] < 0) throw ParseError(where + ": unknown target object '" + tn + "'");
            }
            LinFunctor<K> F(omap, C.num_objects());
            for (int A = 0; A < C.num_objects(); ++A)
                for (int Bo = 0; Bo < C.num_objects(); ++Bo)
                    F.set_matrix(A, Bo, DenseMat<K>(D.rank(omap[A], omap[Bo]), C.rank(A, Bo)));
            if (r.contains("homs"))
                for (const auto& h : array(r.at("homs"), where + " homs")) {
                    int A = C.find_object(str(field(h, "src", where), where));
                    int Bo = C.find_object(str(field(h, "tgt", where), where));
                    if (A < 0 || Bo < 0) throw ParseError(where + ": unknown hom endpoints");
                    DenseMat<K> m(D.rank(omap[A], omap[Bo]), C.rank(A, Bo));
                    const auto& rows = array(field(h, "matrix", where), where + " matrix");
                    if (static_cast<int>(rows.size()) != m.rows) throw ParseError(where + ": matrix has wrong number of rows");
                    for (int i = 0; i < m.rows; ++i) {
                        Mor<K> row = read_mor(rows[i], m.cols, where + " matrix row");
                        for (int jj = 0; jj < m.cols; ++jj) m.at(i, jj) = row[jj];
                    }
                    F.set_matrix(A, Bo, std::move(m));
                }
            P.restrictions[u] = std::move(F);
        }
    for (int u = 0; u < B.num_arrows(); ++u) {
        if (seen[u]) continue;
        if (!B.is_identity(u)) throw ParseError("restriction along '" + B.arrow(u).name + "' is missing");
        P.restrictions[u] = LinFunctor<K>::identity(P.fibers[B.tgt(u)]);
    }
    P.reset_twists();
    if (doc.contains("twists"))
        for (const auto& t : array(doc.at("twists"), "twists")) {
            int f = arrow_id(field(t, "first", "twist"), "twist"), g = arrow_id(field(t, "second", "twist"), "twist");
            std::string where = "twist ('" + B.arrow(f).name + "', '" + B.arrow(g).name + "')";
            if (B.tgt(f) != B.src(g)) throw ParseError(where + ": arrows are not composable");
            if (B.compose_or_missing(f, g) < 0) throw ParseError(where + ": composite missing from the base table");
            const auto& Z = P.fibers[B.tgt(g)];
            const auto& X = P.fibers[B.src(f)];
            const auto& comps = field(t, "components", where);
            std::vector<Mor<K>> cs;
            for (int A = 0; A < Z.num_objects(); ++A) {
                int s = P.restrict_obj(f, P.restrict_obj(g, A));
                int d = P.restrict_obj(B.compose(f, g), A);
                std::string w = where + " at '" + Z.object_name(A) + "'";
                cs.push_back(read_mor(field(comps, Z.object_name(A).c_str(), w), X.rank(s, d), w));
            }
            P.twists[f * B.num_arrows() + g] = std::move(cs);
        }
    return P;
}

template <class K>
nlohmann::json prestack_to_json(const Prestack<K>& P, const Ring& ring) {
    using nlohmann::json;
    const auto& B = P.base;
    json doc;
    doc["ring"] = ring_to_json(ring);
    doc["base"] = detail::base_to_json(B);
    json fibers = json::object();
    for (int U = 0; U < B.num_objects(); ++U) {
        const auto& C = P.fiber(U);
        int n = C.num_objects();
        json f;
        f["objects"] = json::array();
        for (int A = 0; A < n; ++A) f["objects"].push_back(C.object_name(A));
        f["homs"] = json::array();
        for (int A = 0; A < n; ++A)
            for (int Bo = 0; Bo < n; ++Bo)
                if (C.rank(A, Bo) > 0) f["homs"].push_back({{"src", C.object_name(A)}, {"tgt", C.object_name(Bo)}, {"rank", C.rank(A, Bo)}});
        f["compose"] = json::array();
        for (int A = 0; A < n; ++A)
            for (int M = 0; M < n; ++M)
                for (int T = 0; T < n; ++T) {
                    json consts = json::array();
                    for (int i = 0; i < C.rank(A, M); ++i)
                        for (int j = 0; j < C.rank(M, T); ++j)
                            for (const auto& [k, c] : C.compose_basis(A, M, T, i, j))
                                consts.push_back({i, j, k, ScalarJson<K>::write(c)});
                    if (!consts.empty())
                        f["compose"].push_back({{"src", C.object_name(A)}, {"mid", C.object_name(M)},
                                                {"tgt", C.object_name(T)}, {"constants", consts}});
                }
        f["identities"] = json::object();
        for (int A = 0; A < n; ++A) {
            if (C.rank(A, A) == 0) continue;
            json id = json::array();
            for (const auto& x : C.identity(A)) id.push_back(ScalarJson<K>::write(x));
            f["identities"][C.object_name(A)] = id;
        }
        fibers[B.object_name(U)] = f;
    }
    doc["fibers"] = fibers;
    doc["restrictions"] = json::array();
    for (int u = 0; u < B.num_arrows(); ++u) {
        const auto& C = P.fiber(B.tgt(u));
        const auto& D = P.fiber(B.src(u));
        const auto& F = P.restrictions[u];
        json r;
        r["arrow"] = B.arrow(u).name;
        r["objects"] = json::object();
        for (int A = 0; A < C.num_objects(); ++A) r["objects"][C.object_name(A)] = D.object_name(F.obj(A));
        r["homs"] = json::array();
        for (int A = 0; A < C.num_objects(); ++A)
            for (int Bo = 0; Bo < C.num_objects(); ++Bo) {
                const auto& m = F.matrix(A, Bo);
                if (m.rows == 0 || m.cols == 0) continue;
                json rows = json::array();
                for (int i = 0; i < m.rows; ++i) {
                    json row = json::array();
                    for (int j = 0; j < m.cols; ++j) row.push_back(ScalarJson<K>::write(m.at(i, j)));
                    rows.push_back(row);
                }
                r["homs"].push_back({{"src", C.object_name(A)}, {"tgt", C.object_name(Bo)}, {"matrix", rows}});
            }
        doc["restrictions"].push_back(r);
    }
    doc["twists"] = json::array();
    for (int f = 0; f < B.num_arrows(); ++f)
        for (int g = 0; g < B.num_arrows(); ++g) {
            if (!P.has_twist(f, g)) continue;
            const auto& Z = P.fiber(B.tgt(g));
            json comps = json::object();
            for (int A = 0; A < Z.num_objects(); ++A) {
                json m = json::array();
                for (const auto& x : P.twist(f, g, A)) m.push_back(ScalarJson<K>::write(x));
                comps[Z.object_name(A)] = m;
            }
            doc["twists"].push_back({{"first", B.arrow(f).name}, {"second", B.arrow(g).name}, {"components", comps}});
        }
    return doc;
}

// prestack_from_json with every structural failure reported as ParseError.
template <class K>
Prestack<K> load_prestack(const nlohmann::json& doc) {
    try {
        return prestack_from_json<K>(doc);
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

nlohmann::json read_json_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text);

// ---- cochain files --------------------------------------------------------
//
// Text format: a header line "degree N", then one line per key with a
// nonzero value: "p | arrows | objects | basis | value". Simplices of length
// 0 are written "@object"; lists are space separated; '#' starts a comment.

// Base object whose fiber holds the i-th object of a block over s.
using FiberOf = std::function<int(const Simplex& s, int i)>;

std::vector<std::string> split_fields(const std::string& line, char sep);
std::vector<std::string> split_words(const std::string& field);

template <class K>
void write_cochain(std::ostream& os, const Prestack<K>& P, const CochainLayout& L, const FiberOf& fiber_of,
                   const std::vector<K>& x) {
    const auto& B = P.base;
    if (static_cast<long>(x.size()) != L.size()) throw std::invalid_argument("cochain has the wrong length");
    os << "degree " << L.degree() << "\n";
    L.for_each_key([&](int block, const std::vector<int>& basis) {
        const auto& b = L.block(block);
        long c = L.coord(block, basis, 0);
        bool nz = false;
        for (int j = 0; j < b.dim; ++j) nz = nz || !is_zero(x[c + j]);
        if (!nz) return;
        const Simplex& s = L.simplex_of(block);
        os << b.p << " |";
        if (s.arrows.empty()) os << " @" << B.object_name(s.start);
        for (int a : s.arrows) os << " " << B.arrow(a).name;
        os << " |";
        for (std::size_t i = 0; i < b.objs.size(); ++i)
            os << " " << P.fiber(fiber_of(s, static_cast<int>(i))).object_name(b.objs[i]);
        os << " |";
        for (int t : basis) os << " " << t;
        os << " |";
        for (int j = 0; j < b.dim; ++j) os << " " << to_string(x[c + j]);
        os << "\n";
    });
}

// Reads a cochain written by write_cochain into the coordinates of L.
// Keys that are not listed are zero.
template <class K>
std::vector<K> read_cochain(std::istream& is, const Prestack<K>& P, const CochainLayout& L, const FiberOf& fiber_of) {
    const auto& B = P.base;
    std::vector<K> x(static_cast<std::size_t>(L.size()), from_int<K>(0));
    std::string line;
    int lineno = 0;
    bool have_degree = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto words = split_words(line);
        if (words.empty()) continue;
        std::string where = "cochain line " + std::to_string(lineno);
        if (!have_degree) {
            if (words.size() != 2 || words[0] != "degree") throw ParseError(where + ": expected 'degree N'");
            int d = -1;
            try {
                d = std::stoi(words[1]);
            } catch (const std::exception&) {
                throw ParseError(where + ": bad degree '" + words[1] + "'");
            }
            if (d != L.degree())
                throw ParseError(where + ": cochain has degree " + words[1] + ", expected " + std::to_string(L.degree()));
            have_degree = true;
            continue;
        }
        auto f = split_fields(line, '|');
        if (f.size() != 5) throw ParseError(where + ": expected 5 fields separated by '|'");
        auto arrows = split_words(f[1]), objs = split_words(f[2]), basis = split_words(f[3]), vals = split_words(f[4]);
        Simplex s;
        if (arrows.size() == 1 && arrows[0].size() > 1 && arrows[0][0] == '@') {
            s.start = B.find_object(arrows[0].substr(1));
            if (s.start < 0) throw ParseError(where + ": unknown base object '" + arrows[0].substr(1) + "'");
        } else {
            for (const auto& a : arrows) {
                int id = B.find_arrow(a);
                if (id < 0) throw ParseError(where + ": unknown arrow '" + a + "'");
                s.arrows.push_back(id);
            }
            if (s.arrows.empty()) throw ParseError(where + ": empty simplex");
            s.start = B.src(s.arrows[0]);
            for (std::size_t i = 1; i < s.arrows.size(); ++i)
                if (B.tgt(s.arrows[i - 1]) != B.src(s.arrows[i])) throw ParseError(where + ": arrows are not composable");
        }
        if (split_words(f[0]) != std::vector<std::string>{std::to_string(s.length())})
            throw ParseError(where + ": simplex length does not match p");
        if (L.find_sigma(s) < 0) throw ParseError(where + ": simplex is not part of this complex");
        std::vector<int> oid;
        for (std::size_t i = 0; i < objs.size(); ++i) {
            int U = fiber_of(s, static_cast<int>(i));
            int o = P.fiber(U).find_object(objs[i]);
            if (o < 0) throw ParseError(where + ": unknown object '" + objs[i] + "'");
            oid.push_back(o);
        }
        int block = 0;
        try {
            block = L.find_block(s, oid);
        } catch (const std::logic_error&) {
            throw ParseError(where + ": wrong number of objects");
        }
        const auto& b = L.block(block);
        if (basis.size() != b.ranks.size()) throw ParseError(where + ": wrong number of basis indices");
        std::vector<int> bi;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            int t = -1;
            try {
                t = std::stoi(basis[i]);
            } catch (const std::exception&) {
                throw ParseError(where + ": bad basis index '" + basis[i] + "'");
            }
            if (t < 0 || t >= b.ranks[i]) throw ParseError(where + ": basis index out of range");
            bi.push_back(t);
        }
        if (static_cast<int>(vals.size()) != b.dim)
            throw ParseError(where + ": expected " + std::to_string(b.dim) + " value coordinates");
        long c = L.coord(block, bi, 0);
        for (int j = 0; j < b.dim; ++j) {
            try {
                x[c + j] = parse_scalar<K>(vals[j]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
    }
    if (!have_degree) throw ParseError("cochain file is empty");
    return x;
}

}  // namespace psk
