#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gl2den {

using BigInt = boost::multiprecision::cpp_int;

/// Elliptic curve over Q in long Weierstrass form
/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6, with nonzero discriminant.
/// Good reduction is tested against the discriminant of this model as given;
/// supply minimal models.
struct CurveQ {
    std::int64_t a1, a2, a3, a4, a6;
    BigInt discriminant;

    static CurveQ make(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                       std::int64_t a6);
    /// Accepts "a1 a2 a3 a4 a6" or "[a1,a2,a3,a4,a6]".
    static CurveQ parse(const std::string& text);

    bool good_reduction(std::uint64_t p) const;
    std::string str() const;
};

/// #E(F_p) including the point at infinity, for a prime p of good reduction.
/// For p > 3 the model is put in short form and counted with a quadratic
/// residue table; p in {2, 3} falls back to direct enumeration.
std::uint64_t count_points(const CurveQ& e, std::uint64_t p);

/// Direct enumeration of all (x, y) on the long Weierstrass equation, plus
/// infinity. Independent of the short-form path; small p only.
std::uint64_t count_points_naive(const CurveQ& e, std::uint64_t p);

/// Frobenius trace a_p = p + 1 - #E(F_p).
std::int64_t trace_of_frobenius(const CurveQ& e, std::uint64_t p);

struct LocalCondition {
    bool in_S1;  // reduction has a point of order ell: ell | #E(F_p)
    bool in_S;   // reduction admits an ell-isogeny: Frobenius has an eigenvalue mod ell
};

/// Local conditions at a good prime p != ell, from a_p and det = p mod ell.
LocalCondition local_conditions(const CurveQ& e, std::uint64_t p, std::uint32_t ell);

struct PrimeRecord {
    std::uint64_t p;
    std::int64_t ap;
    bool in_S1;
    bool in_S;
};

struct CurveScan {
    CurveQ curve;
    std::uint32_t ell;
    std::uint64_t limit;
    std::uint64_t good_primes = 0;
    std::uint64_t hits_torsion = 0;
    std::uint64_t hits_isogeny = 0;
    std::vector<PrimeRecord> records;  // ascending p

    double density_s1() const { return good_primes ? double(hits_torsion) / good_primes : 0.0; }
    double density_s() const { return good_primes ? double(hits_isogeny) / good_primes : 0.0; }
};

struct ScanConfig {
    unsigned threads = 1;
};

/// Scans all primes p <= limit, skipping p = ell and bad-reduction primes.
/// Hasse's bound and the torsion-implies-isogeny implication are asserted per
/// prime. Records come back in ascending-p order for any thread count.
CurveScan scan(const CurveQ& e, std::uint32_t ell, std::uint64_t limit, const ScanConfig& cfg = {});

constexpr std::uint64_t kScanLimitMax = 1000000;

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

}  // namespace gl2den
