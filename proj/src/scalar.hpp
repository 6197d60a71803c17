// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <gmpxx.h>

namespace psk {

using Rational = mpq_class;

// Element of the prime field F_p. The modulus is per thread and set through
// FpModulus; every Fp operation uses the modulus active on the calling thread.
class Fp {
public:
    Fp() = default;
    explicit Fp(long long x) { v_ = reduce(x); }

    static std::uint32_t modulus() { return p_; }
    static void set_modulus(std::uint32_t p);

    std::uint32_t value() const { return v_; }

    Fp operator+(Fp o) const { std::uint64_t s = std::uint64_t(v_) + o.v_; return raw(std::uint32_t(s >= p_ ? s - p_ : s)); }
    Fp operator-(Fp o) const { return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_); }
    Fp operator*(Fp o) const { return raw(std::uint32_t((std::uint64_t(v_) * o.v_) % p_)); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

    Fp inverse() const;

private:
    static Fp raw(std::uint32_t v) { Fp f; f.v_ = v; return f; }
    static std::uint32_t reduce(long long x) {
        long long r = x % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t v_ = 0;
    static thread_local std::uint32_t p_;
};

// Sets the F_p modulus for the lifetime of the guard and restores the
// previous one afterwards.
class FpModulus {
public:
    explicit FpModulus(std::uint32_t p) : saved_(Fp::modulus()) { Fp::set_modulus(p); }
    ~FpModulus() { Fp::set_modulus(saved_); }
    FpModulus(const FpModulus&) = delete;
    FpModulus& operator=(const FpModulus&) = delete;

private:
    std::uint32_t saved_;
};

bool is_prime(std::uint64_t n);

// a + b*eps with eps^2 = 0.
template <class K>
struct Dual {
    K a{}, b{};

    Dual() = default;
    Dual(K a_, K b_) : a(std::move(a_)), b(std::move(b_)) {}

    Dual operator+(const Dual& o) const { return {a + o.a, b + o.b}; }
    Dual operator-(const Dual& o) const { return {a - o.a, b - o.b}; }
    Dual operator*(const Dual& o) const { return {a * o.a, a * o.b + b * o.a}; }
    Dual operator-() const { return {-a, -b}; }
    Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
    Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    bool operator==(const Dual& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Dual& o) const { return !(*this == o); }
};

template <class T> struct is_dual : std::false_type {};
template <class K> struct is_dual<Dual<K>> : std::true_type {};
template <class T> inline constexpr bool is_dual_v = is_dual<T>::value;

template <class T> struct base_field { using type = T; };
template <class K> struct base_field<Dual<K>> { using type = K; };

// ---- uniform scalar interface -------------------------------------------

template <class K> K from_int(long long x);
template <> inline Rational from_int<Rational>(long long x) { return Rational(static_cast<long>(x)); }
template <> inline Fp from_int<Fp>(long long x) { return Fp(x); }
template <> inline Dual<Rational> from_int<Dual<Rational>>(long long x) { return {from_int<Rational>(x), Rational(0)}; }
template <> inline Dual<Fp> from_int<Dual<Fp>>(long long x) { return {Fp(x), Fp(0)}; }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.value() == 0; }
template <class K> bool is_zero(const Dual<K>& x) { return is_zero(x.a) && is_zero(x.b); }

inline Rational inverse(const Rational& x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    return Rational(1) / x;
}
inline Fp inverse(const Fp& x) { return x.inverse(); }
template <class K> Dual<K> inverse(const Dual<K>& x) {
    K ai = inverse(x.a);
    return {ai, -(x.b * ai * ai)};
}

// True when x is a unit of the ring.
inline bool is_unit(const Rational& x) { return !is_zero(x); }
inline bool is_unit(const Fp& x) { return !is_zero(x); }
template <class K> bool is_unit(const Dual<K>& x) { return !is_zero(x.a); }

std::string to_string(const Rational& x);
std::string to_string(const Fp& x);
template <class K> std::string to_string(const Dual<K>& x) {
    return to_string(x.a) + (is_zero(x.b) ? std::string() : " + (" + to_string(x.b) + ")e");
}

// Parses "n", "-n" or "n/d" into the field.
template <class K> K parse_scalar(const std::string& s);
template <> Rational parse_scalar<Rational>(const std::string& s);
template <> Fp parse_scalar<Fp>(const std::string& s);

// Uniform random value in {lo..hi} embedded in the field.
template <class K>
K random_small(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return from_int<K>(dist(rng));
}

}  // namespace psk
