// SPDX-License-Identifier: MIT
#include "scalar.hpp"

namespace psk {

thread_local std::uint32_t Fp::p_ = 2147483629u;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void Fp::set_modulus(std::uint32_t p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
        throw std::invalid_argument("F_p modulus must be a prime below 2^31, got " + std::to_string(p));
    p_ = p;
}

Fp Fp::inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in F_p");
    long long t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    return Fp(t);
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Fp& x) { return std::to_string(x.value()); }

template <>
Rational parse_scalar<Rational>(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

template <>
Fp parse_scalar<Fp>(const std::string& s) {
    Rational q = parse_scalar<Rational>(s);
    mpz_class p(static_cast<unsigned long>(Fp::modulus()));
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (den == 0) throw std::invalid_argument("denominator of '" + s + "' vanishes mod p");
    return Fp(num.get_si()) * Fp(den.get_si()).inverse();
}

}  // namespace psk
