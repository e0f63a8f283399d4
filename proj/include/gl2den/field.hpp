#pragma once

#include <cstdint>
#include <stdexcept>

namespace gl2den {

/// Deterministic primality test (trial division). Correct for any 64-bit n.
bool is_prime(std::uint64_t n);

/// base^exp mod m. Requires m < 2^31 so intermediate products fit in 64 bits.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p, via Euler's criterion.
int legendre_symbol(std::int64_t a, std::uint64_t p);

/// A validated prime modulus ell. Group-theoretic computations work at tiny
/// ell; the constructor enforces a configurable cap so exhaustive loops stay
/// cheap by construction.
class PrimeModulus {
public:
    static constexpr std::uint32_t kDefaultMax = 1000;

    explicit PrimeModulus(std::uint32_t ell, std::uint32_t max_allowed = kDefaultMax);

    std::uint32_t value() const noexcept { return ell_; }
    bool is_odd() const noexcept { return ell_ != 2; }

    friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept { return a.ell_ == b.ell_; }
    friend bool operator!=(PrimeModulus a, PrimeModulus b) noexcept { return a.ell_ != b.ell_; }

private:
    std::uint32_t ell_;
};

/// Residue mod ell, always stored as the canonical representative in [0, ell).
class Fp {
public:
    Fp(std::int64_t value, PrimeModulus m) : Fp(reduce(value, m.value()), m.value(), 0) {}

    std::uint32_t value() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return ell_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator+(Fp o) const { check(o); return raw((v_ + o.v_) % ell_, ell_); }
    Fp operator-(Fp o) const { check(o); return raw((v_ + ell_ - o.v_) % ell_, ell_); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : ell_ - v_, ell_); }
    Fp operator*(Fp o) const {
        check(o);
        return raw(static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % ell_), ell_);
    }
    Fp operator/(Fp o) const { return *this * o.inverse(); }

    Fp pow(std::uint64_t e) const { return raw(static_cast<std::uint32_t>(pow_mod(v_, e, ell_)), ell_); }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: zero has no inverse");
        return pow(ell_ - 2);
    }

    friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_ && a.ell_ == b.ell_; }
    friend bool operator!=(Fp a, Fp b) noexcept { return !(a == b); }

    /// Fast-path constructor for a value already reduced into [0, ell).
    static Fp raw(std::uint32_t v, std::uint32_t ell) noexcept { return Fp(v, ell, 0); }

private:
    Fp(std::uint32_t v, std::uint32_t ell, int) noexcept : v_(v), ell_(ell) {}

    static std::uint32_t reduce(std::int64_t v, std::uint32_t ell) noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(ell);
        if (r < 0) r += ell;
        return static_cast<std::uint32_t>(r);
    }

    void check(Fp o) const {
        if (ell_ != o.ell_) throw std::invalid_argument("Fp: mixed moduli");
    }

    std::uint32_t v_;
    std::uint32_t ell_;
};

/// Legendre symbol of a residue; rejected for modulus 2 where the quadratic
/// character is undefined (callers special-case ell = 2).
int legendre(Fp a);

/// The smallest positive non-residue mod ell (odd ell). Deterministic, so
/// every structure built on a choice of non-square is reproducible.
Fp canonical_nonresidue(PrimeModulus m);

}  // namespace gl2den
