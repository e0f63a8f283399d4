#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gl2den/gl2.hpp"

#include <map>
#include <set>

using namespace gl2den;

namespace {

Matrix2 mat(std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Matrix2::from_values(PrimeModulus(ell), a, b, c, d);
}

}  // namespace

TEST_CASE("Matrix2 construction enforces invertibility") {
    CHECK_THROWS_AS(mat(5, 1, 2, 2, 4), std::invalid_argument);  // det = 0
    CHECK_THROWS_AS(mat(5, 0, 0, 0, 0), std::invalid_argument);
    CHECK(mat(5, 1, 2, 2, 3).det().value() == 4);  // 3 - 4 = -1
    CHECK_FALSE(Matrix2::try_from_raw(5, 1, 0, 0, 0).has_value());
}

TEST_CASE("Matrix2 arithmetic") {
    Matrix2 g = mat(7, 1, 2, 3, 4);
    CHECK(g.tr().value() == 5);
    CHECK(g.det().value() == (4 + 7 - 6) % 7);
    CHECK((g * g.inverse()).is_identity());
    CHECK((g.inverse() * g).is_identity());
    CHECK(g.pow(0).is_identity());
    CHECK(g.pow(3) == g * g * g);
    CHECK(g.pow(g.order()).is_identity());
    CHECK_THROWS_AS(g * mat(5, 1, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("matrix text format round-trips") {
    Matrix2 g = mat(13, 1, 2, 3, 4);
    CHECK(g.str() == "[[1,2],[3,4]] mod 13");
    CHECK(Matrix2::parse(g.str()) == g);
    CHECK(Matrix2::parse(" [ [ 1 , 2 ] , [ 3 , 4 ] ]  mod  13 ") == g);
    CHECK(Matrix2::parse("[[-1,9],[0,1]] mod 5") == mat(5, 4, 4, 0, 1));
    CHECK_THROWS_AS(Matrix2::parse("[[1,2],[3,4]]"), std::invalid_argument);
    CHECK_THROWS_AS(Matrix2::parse("[[1,2],[3,4]] mod 6"), std::invalid_argument);
    CHECK_THROWS_AS(Matrix2::parse("[[1,2],[2,4]] mod 5"), std::invalid_argument);
}

TEST_CASE("discriminant examples") {
    CHECK(discriminant(Matrix2::identity(PrimeModulus(5))).value() == 0);
    CHECK(discriminant(mat(5, 1, 0, 0, 4)).value() == 4);   // 0 - 4(-1) = 4
    CHECK(discriminant(mat(5, 0, 2, 1, 0)).value() == 3);   // 0 - 4(-2) = 8 = 3
}

TEST_CASE("chi examples") {
    CHECK(chi(Matrix2::identity(PrimeModulus(5))) == 0);
    CHECK(chi(mat(5, 1, 0, 0, 4)) == 1);
    CHECK(chi(mat(5, 0, 2, 1, 0)) == -1);
    CHECK_THROWS_AS(chi(mat(2, 1, 0, 0, 1)), std::invalid_argument);
}

TEST_CASE("in_I examples") {
    CHECK(in_I(mat(7, 3, 5, 0, 2)));            // upper triangular
    CHECK_FALSE(in_I(mat(5, 0, 2, 1, 0)));      // chi = -1
    CHECK_FALSE(in_I(mat(2, 1, 1, 1, 0)));      // order-3 element of GL2(F_2)
    CHECK(in_I(mat(2, 1, 1, 0, 1)));
}

TEST_CASE("in_I1 examples") {
    CHECK(in_I1(mat(7, 1, 4, 0, 3)));
    CHECK(in_I1(mat(7, 1, 0, 0, 6)));
    CHECK_FALSE(in_I1(Matrix2::scalar(Fp(2, PrimeModulus(7)))));
    CHECK_FALSE(in_I1(mat(5, 2, 0, 0, 3)));  // det = 1, tr = 0
    CHECK(in_I1(Matrix2::identity(PrimeModulus(2))));
}

TEST_CASE("classify_conjugacy examples") {
    auto scalar = classify_conjugacy(Matrix2::scalar(Fp(2, PrimeModulus(7))));
    CHECK(scalar.kind == ClassKind::scalar);
    CHECK(scalar.class_size == 1);
    CHECK(scalar.eigenvalues == std::vector<std::uint32_t>{2});

    auto nss = classify_conjugacy(mat(7, 3, 1, 0, 3));
    CHECK(nss.kind == ClassKind::nonsemisimple);
    CHECK(nss.class_size == 48);
    CHECK(nss.parameters[0] == 3);

    auto ns = classify_conjugacy(mat(5, 0, 2, 1, 0));
    CHECK(ns.kind == ClassKind::nonsplit);
    CHECK(ns.class_size == 20);
    CHECK(ns.eigenvalues.empty());

    auto sp = classify_conjugacy(mat(5, 1, 0, 0, 4));
    CHECK(sp.kind == ClassKind::split);
    CHECK(sp.parameters[0] == 1);
    CHECK(sp.parameters[1] == 4);
    CHECK(sp.class_size == 30);

    CHECK_THROWS_AS(classify_conjugacy(mat(2, 1, 1, 0, 1)), std::invalid_argument);
}

TEST_CASE("class table counts per kind") {
    auto table3 = enumerate_class_table(PrimeModulus(3));
    CHECK(table3.size() == 8);  // 2 + 2 + 1 + 3
    std::map<ClassKind, int> counts;
    std::map<ClassKind, std::uint64_t> sizes;
    for (const auto& c : table3) {
        ++counts[c.kind];
        sizes[c.kind] = c.class_size;
    }
    CHECK(counts[ClassKind::scalar] == 2);
    CHECK(counts[ClassKind::nonsemisimple] == 2);
    CHECK(counts[ClassKind::split] == 1);
    CHECK(counts[ClassKind::nonsplit] == 3);
    CHECK(sizes[ClassKind::nonsplit] == 6);

    std::uint64_t total = 0;
    for (const auto& c : enumerate_class_table(PrimeModulus(5))) total += c.class_size;
    CHECK(total == 480);
    CHECK(gl2_order(5) == 480);
}

TEST_CASE("classes partition the group and match brute-force orbits") {
    for (std::uint32_t ell : {3u, 5u, 7u}) {
        PrimeModulus m(ell);
        auto table = enumerate_class_table(m);
        auto group = all_gl2(m);
        CHECK(group.size() == gl2_order(ell));

        std::map<std::uint64_t, std::uint64_t> bucket;  // class key -> count
        for (const auto& g : group) ++bucket[classify_conjugacy(g).class_key()];
        CHECK(bucket.size() == table.size());
        for (const auto& c : table) {
            REQUIRE(bucket.count(c.class_key()) == 1);
            CHECK(bucket[c.class_key()] == c.class_size);
        }

        // orbit of each representative under conjugation is exactly its class
        for (const auto& c : table) {
            std::set<std::uint64_t> orbit;
            for (const auto& g : group) orbit.insert((g * c.representative * g.inverse()).key());
            CHECK(orbit.size() == c.class_size);
            for (std::uint64_t k : orbit) {
                Matrix2 h = *Matrix2::try_from_raw(
                    ell, static_cast<std::uint32_t>(k / (ell * ell * ell) % ell),
                    static_cast<std::uint32_t>(k / (ell * ell) % ell),
                    static_cast<std::uint32_t>(k / ell % ell), static_cast<std::uint32_t>(k % ell));
                CHECK(classify_conjugacy(h).class_key() == c.class_key());
            }
        }
    }
}

TEST_CASE("in_I is constant on projective conjugacy classes") {
    for (std::uint32_t ell : {3u, 5u, 7u}) {
        auto group = all_gl2(PrimeModulus(ell));
        std::vector<bool> table(static_cast<std::size_t>(ell) * ell * ell * ell);
        for (const auto& g : group) table[g.key()] = in_I(g);
        std::uint64_t bad = 0;
        for (const auto& g : group) {
            for (std::uint32_t lam = 1; lam < ell; ++lam) {
                Matrix2 s = Matrix2::scalar(Fp(lam, PrimeModulus(ell)));
                if (table[(s * g).key()] != table[g.key()]) ++bad;
            }
        }
        for (const auto& c : group) {
            Matrix2 cinv = c.inverse();
            for (const auto& g : group) {
                if (table[(c * g * cinv).key()] != table[g.key()]) ++bad;
            }
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("squaring law over all of GL2") {
    for (std::uint32_t ell : {3u, 5u, 7u}) {
        for (const auto& g : all_gl2(PrimeModulus(ell))) {
            Matrix2 g2 = g * g;
            CHECK(in_I(g) == (in_I(g2) && !is_nonsquare_scalar(g2)));
        }
    }
}

TEST_CASE("eigenvalue-one behaviour under squaring") {
    for (std::uint32_t ell : {3u, 5u, 7u}) {
        PrimeModulus m(ell);
        Matrix2 minus_id = Matrix2::scalar(Fp(-1, m));
        for (const auto& g : all_gl2(m)) {
            Matrix2 g2 = g * g;
            if (in_I1(g)) CHECK(in_I1(g2));
            if (g2.is_identity()) CHECK((in_I1(g) || g == minus_id));
        }
    }
}

TEST_CASE("nonsplit conic has ell + 1 points") {
    for (std::uint32_t ell = 3; ell <= 50; ++ell) {
        if (!is_prime(ell)) continue;
        PrimeModulus m(ell);
        std::uint64_t eps = canonical_nonresidue(m).value();
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < ell; ++a)
            for (std::uint64_t b = 0; b < ell; ++b)
                if ((a * a % ell + ell - eps * (b * b % ell) % ell) % ell == 1) ++count;
        CHECK(count == ell + 1);
    }
}

TEST_CASE("projective points canonicalize scalar multiples") {
    PrimeModulus m(7);
    Matrix2 g = mat(7, 2, 3, 1, 4);
    for (std::uint32_t lam = 1; lam < 7; ++lam) {
        CHECK(ProjectivePoint(Matrix2::scalar(Fp(lam, m)) * g) == ProjectivePoint(g));
    }
    CHECK_FALSE(ProjectivePoint(g) == ProjectivePoint(mat(7, 2, 3, 1, 6)));
    // canonical representative leads with 1
    Matrix2 zero_lead = mat(7, 0, 3, 2, 0);
    CHECK(ProjectivePoint(zero_lead).rep().entry(1) == 1);
    CHECK(projective_order(Matrix2::scalar(Fp(3, m))) == 1);
}
