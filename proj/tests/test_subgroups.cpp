#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gl2den/subgroups.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

using namespace gl2den;

namespace {

Matrix2 mat(std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Matrix2::from_values(PrimeModulus(ell), a, b, c, d);
}

}  // namespace

TEST_CASE("closure basics") {
    PrimeModulus m5(5);
    CHECK(Subgroup::close(m5, {}).order() == 1);
    CHECK(Subgroup::close(m5, {mat(5, 1, 1, 0, 1)}).order() == 5);  // unipotent generator
    CHECK(Subgroup::close(PrimeModulus(2), {mat(2, 1, 1, 1, 0)}).order() == 3);

    Subgroup g = Subgroup::close(m5, {mat(5, 1, 1, 0, 1), mat(5, 2, 0, 0, 1)});
    CHECK(g.order() % 5 == 0);
    CHECK(gl2_order(5) % g.order() == 0);  // Lagrange
    CHECK(g.contains(Matrix2::identity(m5)));
    for (const auto& e : g.elements()) {
        CHECK(g.contains(e.inverse()));
        CHECK(g.contains(e * e));
    }
}

TEST_CASE("closure rejects mixed moduli and enforces the cap") {
    CHECK_THROWS_AS(Subgroup::close(PrimeModulus(5), {mat(7, 1, 0, 0, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(Subgroup::close(PrimeModulus(5), {mat(5, 1, 1, 0, 1)}, 3), std::runtime_error);
}

TEST_CASE("standard group orders") {
    PrimeModulus m5(5);
    CHECK(standard(StandardGroup::Cs, m5).order() == 16);
    CHECK(standard(StandardGroup::Cns, m5).order() == 24);
    CHECK(standard(StandardGroup::CsPlus, m5).order() == 32);
    CHECK(standard(StandardGroup::CnsPlus, m5).order() == 48);
    CHECK(standard(StandardGroup::B, m5).order() == 80);
    CHECK(standard(StandardGroup::B1, m5).order() == 20);
    CHECK(standard(StandardGroup::Z, m5).order() == 4);
    CHECK(standard(StandardGroup::SL2, m5).order() == 120);
    CHECK(standard(StandardGroup::GL2, m5).order() == 480);
    CHECK(standard(StandardGroup::GL2, PrimeModulus(3)).order() == 48);

    PrimeModulus m2(2);
    CHECK(standard(StandardGroup::B, m2).order() == 2);
    CHECK(standard(StandardGroup::B1, m2).order() == 2);
    CHECK(standard(StandardGroup::Z, m2).order() == 1);
    CHECK(standard(StandardGroup::SL2, m2).order() == 6);
    CHECK(standard(StandardGroup::GL2, m2).order() == 6);
    CHECK_THROWS_AS(standard(StandardGroup::Cs, m2), std::invalid_argument);
    CHECK_THROWS_AS(standard(StandardGroup::CnsPlus, m2), std::invalid_argument);
}

TEST_CASE("projective images") {
    CHECK(projective_image(standard(StandardGroup::Z, PrimeModulus(5))).order == 1);
    CHECK(projective_image(standard(StandardGroup::SL2, PrimeModulus(3))).order == 12);
    CHECK(projective_image(standard(StandardGroup::GL2, PrimeModulus(3))).order == 24);
    // |G n Z| * |projective image| = |G|
    for (auto which : {StandardGroup::Cs, StandardGroup::Cns, StandardGroup::B, StandardGroup::GL2}) {
        Subgroup g = standard(which, PrimeModulus(5));
        CHECK(scalar_intersection_order(g) * projective_image(g).order == g.order());
    }
}

TEST_CASE("conjugation search") {
    PrimeModulus m5(5);
    Subgroup cs = standard(StandardGroup::Cs, m5);
    Subgroup borel = standard(StandardGroup::B, m5);
    auto c = is_conjugate_into(cs, borel);
    REQUIRE(c.has_value());
    CHECK(c->is_identity());

    Subgroup nonsplit_cyclic = Subgroup::close(m5, {mat(5, 0, 2, 1, 0)});
    CHECK_FALSE(is_conjugate_into(nonsplit_cyclic, cs).has_value());

    PrimeModulus m3(3);
    Subgroup swap3 = Subgroup::close(m3, {mat(3, 0, 1, 1, 0)});
    auto c3 = is_conjugate_into(swap3, standard(StandardGroup::Cs, m3));
    REQUIRE(c3.has_value());
    Matrix2 conj = *c3;
    for (const auto& e : swap3.elements()) {
        CHECK(standard(StandardGroup::Cs, m3).contains(conj * e * conj.inverse()));
    }
}

TEST_CASE("dickson types of standard groups") {
    CHECK(dickson_type(standard(StandardGroup::Cs, PrimeModulus(5))).type == DicksonType::Cs);
    CHECK(dickson_type(standard(StandardGroup::Cns, PrimeModulus(5))).type == DicksonType::Cn);
    CHECK(dickson_type(standard(StandardGroup::CsPlus, PrimeModulus(5))).type == DicksonType::Ns);
    CHECK(dickson_type(standard(StandardGroup::CnsPlus, PrimeModulus(5))).type == DicksonType::Nn);
    CHECK(dickson_type(standard(StandardGroup::B, PrimeModulus(5))).type == DicksonType::B);
    CHECK(dickson_type(standard(StandardGroup::SL2, PrimeModulus(7))).type == DicksonType::PSL);
    CHECK(dickson_type(standard(StandardGroup::GL2, PrimeModulus(7))).type == DicksonType::PGL);

    DicksonReport r = dickson_type(standard(StandardGroup::CnsPlus, PrimeModulus(5)));
    CHECK(r.projective_order == 12);
    CHECK(r.scalar_intersection_order == 4);
    CHECK_FALSE(r.ell_divides_order);
    REQUIRE(r.conjugator.has_value());
}

TEST_CASE("dickson degenerates at ell = 2") {
    PrimeModulus m2(2);
    CHECK(dickson_type(Subgroup::close(m2, {})).type == DicksonType::Cs);
    CHECK(dickson_type(Subgroup::close(m2, {mat(2, 0, 1, 1, 0)})).type == DicksonType::B);
    CHECK(dickson_type(Subgroup::close(m2, {mat(2, 1, 1, 1, 0)})).type == DicksonType::Cn);
    CHECK(dickson_type(standard(StandardGroup::GL2, m2)).type == DicksonType::PGL);
}

TEST_CASE("subgroup file format") {
    std::istringstream good("# split Cartan generators\nell 5\n2 0 0 1\n1 0 0 2  # second\n");
    Subgroup g = parse_subgroup_stream(good);
    CHECK(g.ell() == 5);
    CHECK(g.order() == 16);

    std::istringstream bad_header("modulus 5\n1 0 0 1\n");
    CHECK_THROWS_AS(parse_subgroup_stream(bad_header), SubgroupParseError);
    std::istringstream not_prime("ell 6\n");
    CHECK_THROWS_AS(parse_subgroup_stream(not_prime), SubgroupParseError);
    std::istringstream singular("ell 5\n1 2 2 4\n");
    CHECK_THROWS_AS(parse_subgroup_stream(singular), SubgroupParseError);
    std::istringstream short_row("ell 5\n1 2 3\n");
    CHECK_THROWS_AS(parse_subgroup_stream(short_row), SubgroupParseError);

    try {
        std::istringstream s("ell 5\n1 0 0 1\n1 2 2 4\n");
        parse_subgroup_stream(s);
        FAIL("expected parse error");
    } catch (const SubgroupParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("enumeration at ell = 2 finds the classes of S3") {
    auto classes = enumerate_up_to_conjugacy(PrimeModulus(2));
    CHECK(classes.size() == 4);  // orders 1, 2, 3, 6
    std::map<std::uint64_t, int> by_order;
    std::uint64_t total = 0;
    for (const auto& g : classes) {
        ++by_order[g.order()];
        CHECK(gl2_order(2) % g.order() == 0);
        total += gl2_order(2) / normalizer_order(g);
    }
    CHECK(total == 6);  // six subgroups in all
    CHECK(by_order[1] == 1);
    CHECK(by_order[2] == 1);
    CHECK(by_order[3] == 1);
    CHECK(by_order[6] == 1);
}

TEST_CASE("enumeration at ell = 3 is complete and independent of threads") {
    auto classes = enumerate_up_to_conjugacy(PrimeModulus(3));
    std::uint64_t total = 0;
    for (const auto& g : classes) {
        CHECK(gl2_order(3) % g.order() == 0);
        CHECK(scalar_intersection_order(g) * projective_image(g).order == g.order());
        total += gl2_order(3) / normalizer_order(g);
    }
    CHECK(total == total_subgroup_count(PrimeModulus(3)));

    EnumerationConfig threaded;
    threaded.threads = 4;
    auto classes2 = enumerate_up_to_conjugacy(PrimeModulus(3), threaded);
    REQUIRE(classes.size() == classes2.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        CHECK(classes[i].element_keys() == classes2[i].element_keys());
    }
}

TEST_CASE("enumeration refuses beyond the configured bound") {
    CHECK_THROWS_AS(enumerate_up_to_conjugacy(PrimeModulus(11)), std::invalid_argument);
    EnumerationConfig cfg;
    cfg.max_ell = 13;  // capped at the hard ceiling 11
    CHECK_THROWS_AS(enumerate_up_to_conjugacy(PrimeModulus(13), cfg), std::invalid_argument);
}

TEST_CASE("conjugate subgroups share type") {
    PrimeModulus m(5);
    auto classes = enumerate_up_to_conjugacy(m);
    std::size_t step = classes.size() / 6 + 1;
    for (std::size_t i = 0; i < classes.size(); i += step) {
        const Subgroup& g = classes[i];
        for (auto&& c : {Matrix2::from_values(m, 1, 2, 0, 1), Matrix2::from_values(m, 2, 1, 3, 3)}) {
            Subgroup h = g.conjugated_by(c);
            CHECK(h.order() == g.order());
            CHECK(dickson_type(h).type == dickson_type(g).type);
            // eigenvalue counts are conjugation-invariant
            std::uint64_t g1 = 0, ge = 0, h1 = 0, he = 0;
            for (const auto& e : g.elements()) {
                if (in_I1(e)) ++g1;
                if (in_I(e)) ++ge;
            }
            for (const auto& e : h.elements()) {
                if (in_I1(e)) ++h1;
                if (in_I(e)) ++he;
            }
            CHECK(g1 == h1);
            CHECK(ge == he);
        }
    }
}

TEST_CASE("the unipotent class has ell + 1 conjugates") {
    // order-ell subgroups are the Sylow subgroups, one per Borel
    for (std::uint32_t ell : {3u, 5u}) {
        PrimeModulus m(ell);
        std::vector<const Subgroup*> sylow;
        auto classes = enumerate_up_to_conjugacy(m);
        for (const auto& s : classes) {
            if (s.order() == ell) sylow.push_back(&s);
        }
        REQUIRE(sylow.size() == 1);
        CHECK(gl2_order(ell) / normalizer_order(*sylow.front()) == ell + 1);
    }
}

TEST_CASE("cyclic classes account for every cyclic subgroup at ell = 5") {
    PrimeModulus m(5);
    // independent count of cyclic subgroups: distinct element sets <g>
    std::set<std::vector<std::uint64_t>> cyclic_sets;
    for (const auto& g : all_gl2(m)) {
        Subgroup s = Subgroup::close(m, {g});
        cyclic_sets.insert(s.element_keys());
    }
    auto is_cyclic = [](const Subgroup& s) {
        for (const auto& e : s.elements()) {
            if (e.order() == s.order()) return true;
        }
        return false;
    };
    std::uint64_t from_classes = 0;
    for (const auto& s : enumerate_up_to_conjugacy(m)) {
        if (is_cyclic(s)) from_classes += gl2_order(5) / normalizer_order(s);
    }
    CHECK(from_classes == cyclic_sets.size());
}

TEST_CASE("all subgroups of GL2(F_2)") {
    auto subs = all_subgroups(PrimeModulus(2));
    CHECK(subs.size() == 6);
    std::map<std::uint64_t, int> by_order;
    for (const auto& s : subs) ++by_order[s.order()];
    CHECK(by_order[1] == 1);
    CHECK(by_order[2] == 3);
    CHECK(by_order[3] == 1);
    CHECK(by_order[6] == 1);
}
