// SPDX-License-Identifier: MIT
#include "io.hpp"

#include <fstream>
#include <sstream>

namespace psk {

std::string Ring::name() const {
    switch (kind) {
        case Q: return "Q";
        case Fp: return "F_" + std::to_string(p);
        case QDual: return "Q[e]";
        case FpDual: return "F_" + std::to_string(p) + "[e]";
    }
    return "?";
}

Ring parse_ring(const nlohmann::json& j) {
    Ring r;
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Q") return r;
        if (s == "Q[e]") {
            r.kind = Ring::QDual;
            return r;
        }
        throw ParseError("unknown ring '" + s + "'");
    }
    if (j.is_object() && j.size() == 1) {
        auto it = j.begin();
        if (it.key() != "Fp" && it.key() != "Fp[e]") throw ParseError("unknown ring " + j.dump());
        const auto& v = it.value();
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() <= 0))
            throw ParseError("ring modulus must be a positive integer");
        std::uint64_t p = v.get<std::uint64_t>();
        if (p > 0xffffffffu || !is_prime(p)) throw ParseError("ring modulus " + std::to_string(p) + " is not a 32-bit prime");
        r.kind = it.key() == "Fp" ? Ring::Fp : Ring::FpDual;
        r.p = static_cast<std::uint32_t>(p);
        return r;
    }
    throw ParseError("unknown ring " + j.dump());
}

nlohmann::json ring_to_json(const Ring& r) {
    switch (r.kind) {
        case Ring::Q: return "Q";
        case Ring::QDual: return "Q[e]";
        case Ring::Fp: return {{"Fp", r.p}};
        case Ring::FpDual: return {{"Fp[e]", r.p}};
    }
    return "Q";
}

namespace detail {

BaseCategory parse_base(const nlohmann::json& j) {
    BaseCategory B;
    for (const auto& o : array(field(j, "objects", "base"), "base objects")) {
        std::string n = str(o, "base objects");
        if (B.find_object(n) >= 0) throw ParseError("base: duplicate object '" + n + "'");
        B.add_object(n);
    }
    auto obj = [&](const nlohmann::json& x, const std::string& where) {
        std::string n = str(x, where);
        int id = B.find_object(n);
        if (id < 0) throw ParseError(where + ": unknown base object '" + n + "'");
        return id;
    };
    auto arr = [&](const nlohmann::json& x, const std::string& where) {
        std::string n = str(x, where);
        int id = B.find_arrow(n);
        if (id < 0) throw ParseError(where + ": unknown arrow '" + n + "'");
        return id;
    };
    for (const auto& a : array(field(j, "arrows", "base"), "base arrows")) {
        std::string n = str(field(a, "name", "base arrow"), "base arrow");
        if (B.find_arrow(n) >= 0) throw ParseError("base: duplicate arrow '" + n + "'");
        B.add_arrow(n, obj(field(a, "src", "arrow '" + n + "'"), "arrow '" + n + "'"),
                    obj(field(a, "tgt", "arrow '" + n + "'"), "arrow '" + n + "'"));
    }
    const auto& ids = field(j, "identities", "base");
    if (!ids.is_object()) throw ParseError("base identities: expected an object keyed by base object");
    for (int U = 0; U < B.num_objects(); ++U) {
        std::string where = "identity of '" + B.object_name(U) + "'";
        int a = arr(field(ids, B.object_name(U).c_str(), "base identities"), where);
        if (B.src(a) != U || B.tgt(a) != U) throw ParseError(where + ": not an endomorphism");
        if (B.is_identity(a)) throw ParseError(where + ": arrow is already an identity");
        B.set_identity(U, a);
    }
    for (int a = 0; a < B.num_arrows(); ++a) {
        B.set_compose(B.identity(B.src(a)), a, a);
        B.set_compose(a, B.identity(B.tgt(a)), a);
    }
    if (j.contains("compose"))
        for (const auto& c : array(j.at("compose"), "base compose")) {
            int f = arr(field(c, "first", "base compose"), "base compose");
            int g = arr(field(c, "second", "base compose"), "base compose");
            int r = arr(field(c, "result", "base compose"), "base compose");
            std::string where = "composite of ('" + B.arrow(f).name + "', '" + B.arrow(g).name + "')";
            if (B.tgt(f) != B.src(g)) throw ParseError(where + ": arrows are not composable");
            int old = B.compose_or_missing(f, g);
            if (old >= 0 && old != r) throw ParseError(where + ": conflicting entries");
            B.set_compose(f, g, r);
        }
    return B;
}

nlohmann::json base_to_json(const BaseCategory& B) {
    using nlohmann::json;
    json j;
    j["objects"] = json::array();
    for (int U = 0; U < B.num_objects(); ++U) j["objects"].push_back(B.object_name(U));
    j["arrows"] = json::array();
    for (int a = 0; a < B.num_arrows(); ++a)
        j["arrows"].push_back({{"name", B.arrow(a).name}, {"src", B.object_name(B.src(a))}, {"tgt", B.object_name(B.tgt(a))}});
    j["identities"] = json::object();
    for (int U = 0; U < B.num_objects(); ++U) j["identities"][B.object_name(U)] = B.arrow(B.identity(U)).name;
    j["compose"] = json::array();
    for (int f = 0; f < B.num_arrows(); ++f)
        for (int g = 0; g < B.num_arrows(); ++g) {
            if (B.is_identity(f) || B.is_identity(g)) continue;
            int r = B.compose_or_missing(f, g);
            if (r >= 0)
                j["compose"].push_back({{"first", B.arrow(f).name}, {"second", B.arrow(g).name}, {"result", B.arrow(r).name}});
        }
    return j;
}

}  // namespace detail

nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> split_words(const std::string& field) {
    std::istringstream ss(field);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

}  // namespace psk
