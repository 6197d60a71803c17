// SPDX-License-Identifier: MIT
#include "psk/psk.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "engine.hpp"
#include "fixtures.hpp"
#include "io.hpp"

using namespace psk;

struct psk_prestack {
    Ring ring;
    std::variant<std::unique_ptr<Engine<Rational>>, std::unique_ptr<Engine<Fp>>, Prestack<Dual<Rational>>,
                 Prestack<Dual<Fp>>>
        data;
};

struct psk_matrix {
    std::uint32_t p = 0;
    std::variant<SparseMatrix<Rational>, SparseMatrix<Fp>> m;
};

namespace {

thread_local std::string g_error;

psk_status fail(psk_status s, const std::string& msg) {
    g_error = msg;
    return s;
}

template <class Fn>
psk_status guarded(Fn&& fn) {
    g_error.clear();
    try {
        return fn();
    } catch (const ParseError& e) {
        return fail(PSK_ERR_PARSE, e.what());
    } catch (const NotCocycle& e) {
        return fail(PSK_ERR_NOT_COCYCLE, e.what());
    } catch (const std::length_error& e) {
        return fail(PSK_ERR_CAP, e.what());
    } catch (const IoError& e) {
        return fail(PSK_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PSK_ERR_ARG, e.what());
    } catch (const std::exception& e) {
        return fail(PSK_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PSK_ERR_INTERNAL, "unknown exception");
    }
}

// Sets the F_p modulus of a ring for the current scope; p = 0 leaves it.
class ModulusScope {
public:
    explicit ModulusScope(std::uint32_t p) {
        if (p) guard_.emplace(p);
    }

private:
    std::optional<FpModulus> guard_;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("error writing '" + path + "'");
}

void copy_out(const std::string& s, char* buf, std::size_t len) {
    if (!buf || len == 0) return;
    std::size_t n = std::min(s.size(), len - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

Ring ring_of(const nlohmann::json& doc) { return doc.contains("ring") ? parse_ring(doc.at("ring")) : Ring{}; }

psk_prestack* make_handle(const nlohmann::json& doc) {
    auto h = std::make_unique<psk_prestack>();
    h->ring = ring_of(doc);
    ModulusScope scope(h->ring.p);
    switch (h->ring.kind) {
        case Ring::Q: h->data = std::make_unique<Engine<Rational>>(load_prestack<Rational>(doc)); break;
        case Ring::Fp: h->data = std::make_unique<Engine<Fp>>(load_prestack<Fp>(doc)); break;
        case Ring::QDual: h->data = load_prestack<Dual<Rational>>(doc); break;
        case Ring::FpDual: h->data = load_prestack<Dual<Fp>>(doc); break;
    }
    return h.release();
}

// Calls fn(engine) for prestacks over a field.
template <class Fn>
psk_status with_engine(const psk_prestack* p, Fn&& fn) {
    if (!p) return fail(PSK_ERR_ARG, "null prestack");
    ModulusScope scope(p->ring.p);
    if (auto* e = std::get_if<std::unique_ptr<Engine<Rational>>>(&p->data)) return fn(**e);
    if (auto* e = std::get_if<std::unique_ptr<Engine<Fp>>>(&p->data)) return fn(**e);
    return fail(PSK_ERR_ARG, "operation needs a prestack over a field; ring is " + p->ring.name());
}

ComplexKind kind_of(psk_complex c) {
    switch (c) {
        case PSK_COMPLEX_GS: return ComplexKind::GS;
        case PSK_COMPLEX_NR: return ComplexKind::NR;
        case PSK_COMPLEX_GRADED: return ComplexKind::Graded;
    }
    throw std::invalid_argument("unknown complex " + std::to_string(static_cast<int>(c)));
}

Law law_of(psk_law l) {
    switch (l) {
        case PSK_LAW_D2: return Law::D2;
        case PSK_LAW_DELTA2: return Law::Delta2;
        case PSK_LAW_FD: return Law::FD;
        case PSK_LAW_GD: return Law::GD;
        case PSK_LAW_GF: return Law::GF;
        case PSK_LAW_HOMOTOPY: return Law::Homotopy;
        case PSK_LAW_PATHS: return Law::Paths;
        case PSK_LAW_SHUFFLES: return Law::Shuffles;
    }
    throw std::invalid_argument("unknown law " + std::to_string(static_cast<int>(l)));
}

Ring dual_of(const Ring& r) {
    Ring d = r;
    d.kind = r.kind == Ring::Fp ? Ring::FpDual : Ring::QDual;
    return d;
}

}  // namespace

extern "C" {

const char* psk_version(void) { return "0.1.0"; }

const char* psk_status_name(psk_status status) {
    switch (status) {
        case PSK_OK: return "ok";
        case PSK_ERR_PARSE: return "parse error";
        case PSK_ERR_INVALID: return "invalid";
        case PSK_ERR_ARG: return "bad argument";
        case PSK_ERR_CAP: return "cap exceeded";
        case PSK_ERR_IO: return "i/o error";
        case PSK_ERR_VERIFY_FAILED: return "verification failed";
        case PSK_ERR_NOT_COCYCLE: return "not a cocycle";
        case PSK_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* psk_last_error(void) { return g_error.c_str(); }

psk_status psk_set_enum_cap(int cap) {
    return guarded([&] {
        set_enum_cap(cap);
        return PSK_OK;
    });
}

psk_status psk_prestack_load_file(const char* path, psk_prestack** out) {
    if (!path || !out) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        *out = make_handle(read_json_file(path));
        return PSK_OK;
    });
}

psk_status psk_prestack_load_json(const char* text, psk_prestack** out) {
    if (!text || !out) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        *out = make_handle(parse_json_text(text));
        return PSK_OK;
    });
}

psk_status psk_prestack_fixture(const char* name, psk_prestack** out) {
    if (!name || !out) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        auto h = std::make_unique<psk_prestack>();
        h->data = std::make_unique<Engine<Rational>>(make_fixture<Rational>(name));
        *out = h.release();
        return PSK_OK;
    });
}

void psk_prestack_free(psk_prestack* p) { delete p; }

psk_status psk_prestack_write_file(const psk_prestack* p, const char* path) {
    if (!p || !path) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        ModulusScope scope(p->ring.p);
        nlohmann::json doc = std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Prestack<Dual<Rational>>> || std::is_same_v<T, Prestack<Dual<Fp>>>)
                    return prestack_to_json(d, p->ring);
                else
                    return prestack_to_json(d->prestack(), p->ring);
            },
            p->data);
        write_text(path, doc.dump(2) + "\n");
        return PSK_OK;
    });
}

psk_status psk_prestack_ring(const psk_prestack* p, char* buf, size_t len) {
    if (!p || !buf) return fail(PSK_ERR_ARG, "null argument");
    copy_out(p->ring.name(), buf, len);
    return PSK_OK;
}

psk_status psk_validate(const psk_prestack* p) {
    if (!p) return fail(PSK_ERR_ARG, "null prestack");
    return guarded([&] {
        ModulusScope scope(p->ring.p);
        std::optional<std::string> err = std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Prestack<Dual<Rational>>> || std::is_same_v<T, Prestack<Dual<Fp>>>)
                    return d.validate();
                else
                    return d->prestack().validate();
            },
            p->data);
        if (err) return fail(PSK_ERR_INVALID, *err);
        return PSK_OK;
    });
}

psk_status psk_cochain_dim(const psk_prestack* p, psk_complex c, int degree, long* out) {
    if (!out) return fail(PSK_ERR_ARG, "null argument");
    if (degree < 0) return fail(PSK_ERR_ARG, "degree must be non-negative");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            *out = e.cochain_dim(kind_of(c), degree);
            return PSK_OK;
        });
    });
}

psk_status psk_cohomology_dim(const psk_prestack* p, psk_complex c, int degree, long* out) {
    if (!out) return fail(PSK_ERR_ARG, "null argument");
    if (degree < 0) return fail(PSK_ERR_ARG, "degree must be non-negative");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            *out = e.cohomology_dim(kind_of(c), degree);
            return PSK_OK;
        });
    });
}

psk_status psk_differential(const psk_prestack* p, psk_complex c, int degree, psk_matrix** out) {
    if (!out) return fail(PSK_ERR_ARG, "null argument");
    if (degree < 0) return fail(PSK_ERR_ARG, "degree must be non-negative");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            auto m = std::make_unique<psk_matrix>();
            m->p = p->ring.p;
            m->m = e.differential_into(kind_of(c), degree + 1);
            *out = m.release();
            return PSK_OK;
        });
    });
}

psk_status psk_matrix_dims(const psk_matrix* m, long* rows, long* cols) {
    if (!m || !rows || !cols) return fail(PSK_ERR_ARG, "null argument");
    std::visit([&](const auto& x) { *rows = x.rows(); *cols = x.cols(); }, m->m);
    return PSK_OK;
}

psk_status psk_matrix_nnz(const psk_matrix* m, long* nnz) {
    if (!m || !nnz) return fail(PSK_ERR_ARG, "null argument");
    std::visit([&](const auto& x) { *nnz = x.nnz(); }, m->m);
    return PSK_OK;
}

psk_status psk_matrix_rank(const psk_matrix* m, long* r) {
    if (!m || !r) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        ModulusScope scope(m->p);
        std::visit([&](const auto& x) { *r = rank(x); }, m->m);
        return PSK_OK;
    });
}

psk_status psk_matrix_write_file(const psk_matrix* m, const char* path) {
    if (!m || !path) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        std::ostringstream os;
        std::visit([&](const auto& x) { x.write_triplets(os); }, m->m);
        write_text(path, os.str());
        return PSK_OK;
    });
}

void psk_matrix_free(psk_matrix* m) { delete m; }

psk_status psk_verify(const psk_prestack* p, psk_law law, int degree, int trials, uint64_t seed, char* report,
                      size_t report_len) {
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            VerifyResult r = e.verify(law_of(law), degree, trials, seed);
            copy_out(r.report, report, report_len);
            if (!r.ok) return fail(PSK_ERR_VERIFY_FAILED, r.report);
            return PSK_OK;
        });
    });
}

psk_status psk_deform_classify(const psk_prestack* p, long* dim) {
    if (!dim) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            *dim = e.classify().dim;
            return PSK_OK;
        });
    });
}

psk_status psk_deform_write_class(const psk_prestack* p, long index, const char* path) {
    if (!path) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            auto h = e.classify();
            if (index < 0 || index >= h.dim)
                return fail(PSK_ERR_ARG, "class index " + std::to_string(index) + " out of range (dimension " +
                                             std::to_string(h.dim) + ")");
            auto Q = e.deformation(h.representatives[index]);
            if (auto err = Q.validate()) return fail(PSK_ERR_INTERNAL, "deformation fails validation: " + *err);
            write_text(path, prestack_to_json(Q, dual_of(p->ring)).dump(2) + "\n");
            return PSK_OK;
        });
    });
}

psk_status psk_deform_from_cocycle(const psk_prestack* p, const char* cochain_path, const char* path) {
    if (!cochain_path || !path) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            std::ifstream in(cochain_path);
            if (!in) return fail(PSK_ERR_IO, std::string("cannot open '") + cochain_path + "'");
            auto x = e.read_cocycle(in);
            auto Q = e.deformation(x);
            if (auto err = Q.validate()) return fail(PSK_ERR_INTERNAL, "deformation fails validation: " + *err);
            write_text(path, prestack_to_json(Q, dual_of(p->ring)).dump(2) + "\n");
            return PSK_OK;
        });
    });
}

psk_status psk_cochain_write_file(const psk_prestack* p, int degree, const char* const* values, long count,
                                  const char* path) {
    if (!path) return fail(PSK_ERR_ARG, "null argument");
    if (degree < 0) return fail(PSK_ERR_ARG, "degree must be non-negative");
    return guarded([&] {
        return with_engine(p, [&](const auto& e) {
            using K = std::decay_t<decltype(e.prestack().fiber(0).identity(0)[0])>;
            const auto& L = e.gs().layout(degree);
            std::vector<K> x(static_cast<std::size_t>(L.size()), from_int<K>(0));
            if (values) {
                if (count != L.size())
                    return fail(PSK_ERR_ARG, "expected " + std::to_string(L.size()) + " values, got " + std::to_string(count));
                for (long i = 0; i < count; ++i) x[i] = parse_scalar<K>(values[i]);
            }
            const auto& P = e.prestack();
            FiberOf fo = [&](const Simplex& s, int) { return P.base.target(s); };
            std::ostringstream os;
            write_cochain(os, P, L, fo, x);
            write_text(path, os.str());
            return PSK_OK;
        });
    });
}

psk_status psk_fixture_write(const char* name, const char* path) {
    if (!name || !path) return fail(PSK_ERR_ARG, "null argument");
    return guarded([&] {
        write_text(path, prestack_to_json(make_fixture<Rational>(name), Ring{}).dump(2) + "\n");
        return PSK_OK;
    });
}

int psk_fixture_count(void) { return static_cast<int>(fixture_names().size()); }

const char* psk_fixture_name(int index) {
    static const std::vector<std::string> names = fixture_names();
    if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
    return names[index].c_str();
}

}  // extern "C"
