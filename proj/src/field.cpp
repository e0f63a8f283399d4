#include "gl2den/field.hpp"

#include <string>

namespace gl2den {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    // wheel over 6k +- 1
    for (std::uint64_t d = 7; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 4) == 0) return false;
    }
    return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("pow_mod: zero modulus");
    if (m >= (1ull << 31)) throw std::invalid_argument("pow_mod: modulus too large");
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

int legendre_symbol(std::int64_t a, std::uint64_t p) {
    if (p == 2) throw std::invalid_argument("legendre_symbol: undefined for p = 2");
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    std::uint64_t e = pow_mod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

PrimeModulus::PrimeModulus(std::uint32_t ell, std::uint32_t max_allowed) : ell_(ell) {
    if (!is_prime(ell)) {
        throw std::invalid_argument("PrimeModulus: " + std::to_string(ell) + " is not prime");
    }
    if (ell > max_allowed) {
        throw std::invalid_argument("PrimeModulus: " + std::to_string(ell) +
                                    " exceeds the configured bound " + std::to_string(max_allowed));
    }
}

int legendre(Fp a) {
    if (a.modulus() == 2) throw std::invalid_argument("legendre: undefined for modulus 2");
    return legendre_symbol(a.value(), a.modulus());
}

Fp canonical_nonresidue(PrimeModulus m) {
    if (!m.is_odd()) throw std::invalid_argument("canonical_nonresidue: requires odd modulus");
    for (std::uint32_t e = 2; e < m.value(); ++e) {
        if (legendre_symbol(e, m.value()) == -1) return Fp(e, m);
    }
    throw std::logic_error("canonical_nonresidue: none found");  // unreachable for odd primes
}

}  // namespace gl2den
