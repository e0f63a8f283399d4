#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gl2den/curves.hpp"

#include <cmath>

using namespace gl2den;

namespace {

// y^2 + y = x^3 - x^2 - 7820x - 263580  (conductor 11, rational 5-isogeny class)
CurveQ curve_11a1() { return CurveQ::make(0, -1, 1, -7820, -263580); }
// y^2 + xy = x^3 - x^2 - 107x - 379  (conductor 2450, locally-everywhere 7-isogenies)
CurveQ curve_2450i1() { return CurveQ::make(1, -1, 0, -107, -379); }

}  // namespace

TEST_CASE("curve construction and parsing") {
    CurveQ e = curve_11a1();
    CHECK(e.discriminant != 0);
    CHECK(CurveQ::parse("0 -1 1 -7820 -263580").discriminant == e.discriminant);
    CHECK(CurveQ::parse("[0,-1,1,-7820,-263580]").discriminant == e.discriminant);
    CHECK(CurveQ::parse("[ 0, -1, 1, -7820, -263580 ]").str() == "[0,-1,1,-7820,-263580]");
    CHECK_THROWS_AS(CurveQ::parse("1 2 3"), std::invalid_argument);
    CHECK_THROWS_AS(CurveQ::make(0, 0, 0, 0, 0), std::invalid_argument);  // singular
    CHECK_THROWS_AS(CurveQ::make(0, 0, 0, -3, 2), std::invalid_argument); // y^2 = (x-1)^2(x+2)
}

TEST_CASE("point counting on y^2 = x^3 + 1 over F_5") {
    CurveQ e = CurveQ::make(0, 0, 0, 0, 1);
    CHECK(count_points(e, 5) == 6);
    CHECK(count_points_naive(e, 5) == 6);
}

TEST_CASE("curves with rational 2-torsion have even counts") {
    CurveQ e = CurveQ::make(0, 0, 0, -1, 0);  // y^2 = x(x-1)(x+1)
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        std::uint64_t n = count_points(e, p);
        CHECK(n % 2 == 0);
        CHECK(n == count_points_naive(e, p));
    }
}

TEST_CASE("short-form and long-form counts agree for p <= 50") {
    for (const CurveQ& e : {curve_11a1(), curve_2450i1(), CurveQ::make(1, 2, 3, 4, 5)}) {
        for (std::uint32_t p : primes_up_to(50)) {
            if (!e.good_reduction(p)) continue;
            CHECK(count_points(e, p) == count_points_naive(e, p));
        }
    }
}

TEST_CASE("count_points rejects bad input") {
    CurveQ e = curve_11a1();  // discriminant is a power of 11
    CHECK_FALSE(e.good_reduction(11));
    CHECK_THROWS_AS(count_points(e, 11), std::invalid_argument);
    CHECK_THROWS_AS(count_points(e, 10), std::invalid_argument);
}

TEST_CASE("Hasse bound on traces") {
    CurveQ e = curve_2450i1();
    for (std::uint64_t p : {3ull, 11ull, 13ull, 101ull, 997ull}) {
        if (!e.good_reduction(p)) continue;
        std::int64_t ap = trace_of_frobenius(e, p);
        CHECK(double(ap) * ap <= 4.0 * double(p));
    }
}

TEST_CASE("local condition examples") {
    LocalCondition a = local_conditions(curve_11a1(), 7, 5);
    CHECK(a.in_S1);
    CHECK(a.in_S);

    LocalCondition b = local_conditions(curve_2450i1(), 11, 7);
    CHECK(b.in_S);

    CHECK_THROWS_AS(local_conditions(curve_11a1(), 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(local_conditions(curve_11a1(), 11, 5), std::invalid_argument);
}

TEST_CASE("torsion condition implies isogeny condition") {
    CurveQ e = CurveQ::make(0, 1, 0, 1, 1);
    REQUIRE(e.discriminant != 0);
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        for (std::uint32_t p : primes_up_to(200)) {
            if (p == ell || !e.good_reduction(p)) continue;
            LocalCondition lc = local_conditions(e, p, ell);
            if (lc.in_S1) CHECK(lc.in_S);
        }
    }
}

TEST_CASE("scan accumulates counts in ascending prime order") {
    CurveScan s = scan(curve_11a1(), 5, 2000);
    CHECK(s.good_primes == s.records.size());
    CHECK(s.hits_torsion <= s.hits_isogeny);
    CHECK(s.hits_isogeny <= s.good_primes);
    for (std::size_t i = 1; i < s.records.size(); ++i) {
        CHECK(s.records[i - 1].p < s.records[i].p);
    }
    for (const auto& r : s.records) {
        CHECK(r.p != 5);
        CHECK(r.p != 11);
        CHECK(double(r.ap) * r.ap <= 4.0 * double(r.p));
        CHECK(r.in_S1);  // locally-everywhere 5-torsion
    }
    CHECK(s.density_s1() == 1.0);
    CHECK(s.density_s() == 1.0);
}

TEST_CASE("scan is deterministic and thread-count independent") {
    CurveQ e = CurveQ::make(1, 2, 3, 4, 5);
    CurveScan a = scan(e, 3, 500);
    CurveScan b = scan(e, 3, 500);
    ScanConfig threaded;
    threaded.threads = 4;
    CurveScan c = scan(e, 3, 500, threaded);
    REQUIRE(a.records.size() == b.records.size());
    REQUIRE(a.records.size() == c.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].p == c.records[i].p);
        CHECK(a.records[i].ap == c.records[i].ap);
        CHECK(a.records[i].in_S1 == c.records[i].in_S1);
        CHECK(a.records[i].in_S == c.records[i].in_S);
    }
}

TEST_CASE("scan validates its inputs") {
    CHECK_THROWS_AS(scan(curve_11a1(), 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(scan(curve_11a1(), 4, 100), std::invalid_argument);
    CHECK_THROWS_AS(scan(curve_11a1(), 5, kScanLimitMax + 1), std::invalid_argument);
}
