// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compare.hpp"
#include "deform.hpp"
#include "graded.hpp"
#include "gscomplex.hpp"
#include "io.hpp"

namespace psk {

enum class ComplexKind { GS, NR, Graded };

enum class Law { D2, Delta2, FD, GD, GF, Homotopy, Paths, Shuffles };

struct VerifyResult {
    bool ok = true;
    int checked = 0;
    std::string report;
};

// Thrown when a degree-2 cochain offered as deformation datum is not closed.
class NotCocycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All complexes and maps of one prestack over a field, built lazily.
template <class K>
class Engine {
public:
    explicit Engine(Prestack<K> P) : P_(std::move(P)), M_(diagonal_bimodule(P_)), gs_(P_, M_), gr_(P_, M_) {}
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const Prestack<K>& prestack() const { return P_; }
    const GSComplex<K>& gs() const { return gs_; }
    const GradedComplex<K>& graded() const { return gr_; }

    const Comparison<K>& comparison() const {
        if (!cmp_) cmp_ = std::make_unique<Comparison<K>>(gs_, gr_, caps_);
        return *cmp_;
    }

    long cochain_dim(ComplexKind c, int n) const {
        if (n < 0) return 0;
        switch (c) {
            case ComplexKind::GS: return gs_.layout(n).size();
            case ComplexKind::Graded: return gr_.layout(n).size();
            case ComplexKind::NR: {
                long k = 0;
                for (char m : gs_.nr_mask(n)) k += m;
                return k;
            }
        }
        return 0;
    }

    // Matrix of the differential C^{n-1} -> C^n of the chosen complex.
    const SparseMatrix<K>& differential_into(ComplexKind c, int n) const {
        auto key = std::make_pair(static_cast<int>(c), n);
        auto it = mats_.find(key);
        if (it != mats_.end()) return it->second;
        SparseMatrix<K> m;
        switch (c) {
            case ComplexKind::GS: m = gs_.matrix(n); break;
            case ComplexKind::Graded: m = gr_.matrix(n); break;
            case ComplexKind::NR: m = nr_differential(gs_, n).matrix; break;
        }
        return mats_.emplace(key, std::move(m)).first->second;
    }

    int cohomology_dim(ComplexKind c, int n) const {
        return betti(differential_into(c, n), differential_into(c, n + 1));
    }

    VerifyResult verify(Law law, int n, int trials, std::uint64_t seed) const;

    H2Classes<K> classify() const { return classify_h2(gs_); }

    // Reads a degree-2 cochain and checks that it is closed.
    std::vector<K> read_cocycle(std::istream& is) const {
        FiberOf fo = [this](const Simplex& s, int) { return P_.base.target(s); };
        std::vector<K> x = read_cochain(is, P_, gs_.layout(2), fo);
        std::vector<K> dx = gs_.apply(x, 3);
        if (!all_zero(dx)) {
            std::ostringstream os;
            os << "cochain is not a cocycle; nonzero components of its differential:\n";
            write_cochain(os, P_, gs_.layout(3), fo, dx);
            throw NotCocycle(os.str());
        }
        return x;
    }

    Prestack<Dual<K>> deformation(const std::vector<K>& cocycle) const { return build_deformation(gs_, cocycle); }

private:
    std::vector<K> random_in(long size, std::mt19937_64& rng) const {
        return random_coords<K>(size, rng());
    }
    std::string mismatch(const CochainLayout& L, const std::vector<K>& a, const std::vector<K>& b) const;

    Prestack<K> P_;
    Bimodule<K> M_;
    GSComplex<K> gs_;
    GradedComplex<K> gr_;
    CompareCaps caps_;
    mutable std::unique_ptr<Comparison<K>> cmp_;
    mutable std::map<std::pair<int, int>, SparseMatrix<K>> mats_;
};

template <class K>
std::string Engine<K>::mismatch(const CochainLayout& L, const std::vector<K>& a, const std::vector<K>& b) const {
    for (long c = 0; c < L.size(); ++c) {
        if (a[c] == b[c]) continue;
        auto key = L.decode(c);
        std::ostringstream os;
        os << "first mismatch at simplex " << P_.base.describe(L.simplex_of(key.block)) << ", basis (";
        for (std::size_t i = 0; i < key.basis.size(); ++i) os << (i ? "," : "") << key.basis[i];
        os << "), coordinate " << key.j << ": " << to_string(a[c]) << " vs " << to_string(b[c]);
        return os.str();
    }
    return "vectors agree";
}

template <class K>
VerifyResult Engine<K>::verify(Law law, int n, int trials, std::uint64_t seed) const {
    if (n < 0) throw std::invalid_argument("degree must be non-negative");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    VerifyResult r;
    auto fail = [&](const std::string& what) {
        r.ok = false;
        r.report = what;
    };
    auto sub = [](std::vector<K> a, const std::vector<K>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
    };
    auto add = [](std::vector<K> a, const std::vector<K>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    switch (law) {
        case Law::D2:
        case Law::Delta2:
            for (int t = 0; t < trials && r.ok; ++t, ++r.checked) {
                bool gs = law == Law::D2;
                long size = gs ? gs_.layout(n).size() : gr_.layout(n).size();
                auto x = random_in(size, rng);
                auto y = gs ? gs_.apply(gs_.apply(x, n + 1), n + 2) : gr_.apply(gr_.apply(x, n + 1), n + 2);
                if (!all_zero(y)) {
                    const auto& L = gs ? gs_.layout(n + 2) : gr_.layout(n + 2);
                    fail("d(d(x)) is nonzero; " + mismatch(L, y, std::vector<K>(y.size(), from_int<K>(0))));
                }
            }
            break;
        case Law::FD:
            for (int t = 0; t < trials && r.ok; ++t, ++r.checked) {
                const auto& C = comparison();
                auto x = random_in(gs_.layout(n).size(), rng);
                auto lhs = C.apply_F(gs_.apply(x, n + 1), n + 1);
                auto rhs = gr_.apply(C.apply_F(x, n), n + 1);
                if (lhs != rhs) fail("F(d x) != delta(F x); " + mismatch(gr_.layout(n + 1), lhs, rhs));
            }
            break;
        case Law::GD:
            for (int t = 0; t < trials && r.ok; ++t, ++r.checked) {
                const auto& C = comparison();
                auto y = random_in(gr_.layout(n).size(), rng);
                auto lhs = C.apply_G(gr_.apply(y, n + 1), n + 1);
                auto rhs = gs_.apply(C.apply_G(y, n), n + 1);
                if (lhs != rhs) fail("G(delta y) != d(G y); " + mismatch(gs_.layout(n + 1), lhs, rhs));
            }
            break;
        case Law::GF:
            for (int t = 0; t < trials && r.ok; ++t, ++r.checked) {
                const auto& C = comparison();
                auto mask = gs_.nr_mask(n);
                auto x = random_in(gs_.layout(n).size(), rng);
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (!mask[i]) x[i] = from_int<K>(0);
                auto y = C.apply_G(C.apply_F(x, n), n);
                if (y != x) fail("G(F x) != x; " + mismatch(gs_.layout(n), y, x));
            }
            break;
        case Law::Homotopy:
            for (int t = 0; t < trials && r.ok; ++t, ++r.checked) {
                const auto& C = comparison();
                auto y = random_in(gr_.layout(n).size(), rng);
                auto lhs = sub(C.apply_F(C.apply_G(y, n), n), y);
                auto rhs = C.apply_T(gr_.apply(y, n + 1), n);
                if (n > 0) rhs = add(rhs, gr_.apply(C.apply_T(y, n - 1), n));
                if (lhs != rhs) fail("FG - 1 != delta T + T delta; " + mismatch(gr_.layout(n), lhs, rhs));
            }
            break;
        case Law::Paths: {
            if (n < 2) throw std::invalid_argument("path law needs degree >= 2");
            const auto& B = P_.base;
            auto paths = enumerate_paths(n);
            long fact = 1;
            for (int i = 2; i < n; ++i) fact *= i;
            if (static_cast<long>(paths.size()) != fact) {
                fail("expected (n-1)! paths, got " + std::to_string(paths.size()));
                break;
            }
            for (const auto& s : B.nerve(n)) {
                const auto& Z = P_.fiber(B.target(s));
                for (int A = 0; A < Z.num_objects() && r.ok; ++A, ++r.checked) {
                    Comp<K> ref = P_.path_comp(s.arrows, paths[0], A);
                    for (const auto& w : paths) {
                        Comp<K> c = P_.path_comp(s.arrows, w, A);
                        if (c.tgt != ref.tgt || c.m != ref.m) {
                            fail("paths disagree on simplex " + B.describe(s) + " at object '" + Z.object_name(A) + "'");
                            break;
                        }
                    }
                }
                if (!r.ok) break;
            }
            break;
        }
        case Law::Shuffles: {
            for (int p = 0; p <= n && r.ok; ++p) {
                auto sh = enumerate_shuffles({p, n - p});
                long binom = 1;
                for (int i = 1; i <= p; ++i) binom = binom * (n - p + i) / i;
                ++r.checked;
                if (static_cast<long>(sh.size()) != binom) {
                    fail("S(" + std::to_string(p) + "," + std::to_string(n - p) + ") has the wrong size");
                    break;
                }
                for (const auto& s : sh)
                    if (s.sign != permutation_sign(s.pos)) {
                        fail("shuffle sign differs from the permutation sign");
                        break;
                    }
            }
            if (r.ok && n >= 2)
                for (const auto& w : enumerate_paths(n)) {
                    ++r.checked;
                    auto sp = split_path(w);
                    if (!(join_paths(n, sp.k, sp.r, sp.s, sp.beta) == w)) {
                        fail("splitting and rejoining a path does not give it back");
                        break;
                    }
                }
            break;
        }
    }
    if (r.ok) r.report = std::to_string(r.checked) + " checks passed";
    return r;
}

}  // namespace psk
