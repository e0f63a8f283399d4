#include "gl2den/density.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace gl2den {

std::string to_string(const Fraction& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Fraction parse_fraction(const std::string& text) {
    std::istringstream is(text);
    long long num = 0, den = 1;
    char slash = 0;
    if (!(is >> num)) throw std::invalid_argument("parse_fraction: bad numerator in \"" + text + "\"");
    if (is >> slash) {
        if (slash != '/' || !(is >> den)) {
            throw std::invalid_argument("parse_fraction: expected \"a/b\" in \"" + text + "\"");
        }
    }
    std::string extra;
    if (is >> extra) throw std::invalid_argument("parse_fraction: trailing input in \"" + text + "\"");
    if (den == 0) throw std::invalid_argument("parse_fraction: zero denominator");
    return Fraction(num, den);
}

DensityPair compute_densities(const Subgroup& g) {
    std::uint64_t n1 = 0, n = 0;
    for (const auto& e : g.elements()) {
        if (in_I1(e)) ++n1;
        if (in_I(e)) ++n;
    }
    long long order = static_cast<long long>(g.order());
    return DensityPair{Fraction(static_cast<long long>(n1), order),
                       Fraction(static_cast<long long>(n), order), DensityMethod::brute_force,
                       g.order()};
}

Fraction closed_form_F(ClosedFormFamily family, PrimeModulus m) {
    long long l = m.value();
    switch (family) {
        case ClosedFormFamily::SL2:
            if (!m.is_odd()) throw std::invalid_argument("closed_form_F: SL2 formula requires odd ell");
            return Fraction(l + 3, 2 * (l + 1));
        case ClosedFormFamily::GL2:
            if (!m.is_odd()) throw std::invalid_argument("closed_form_F: GL2 formula requires odd ell");
            return Fraction(l + 2, 2 * (l + 1));
        case ClosedFormFamily::Cns_contained:
            throw std::invalid_argument("closed_form_F: Cns_contained requires a concrete subgroup");
    }
    throw std::logic_error("closed_form_F: bad family");
}

Fraction closed_form_F(ClosedFormFamily family, const Subgroup& g) {
    PrimeModulus m = g.modulus();
    switch (family) {
        case ClosedFormFamily::SL2:
            if (!(g == standard(StandardGroup::SL2, m))) {
                throw std::invalid_argument("closed_form_F: subgroup is not SL2");
            }
            return closed_form_F(ClosedFormFamily::SL2, m);
        case ClosedFormFamily::GL2:
            if (!(g == standard(StandardGroup::GL2, m))) {
                throw std::invalid_argument("closed_form_F: subgroup is not GL2");
            }
            return closed_form_F(ClosedFormFamily::GL2, m);
        case ClosedFormFamily::Cns_contained: {
            if (!m.is_odd() || !is_conjugate_into(g, standard(StandardGroup::Cns, m))) {
                throw std::invalid_argument(
                    "closed_form_F: subgroup is not contained in a non-split Cartan");
            }
            return Fraction(1, static_cast<long long>(projective_image(g).order));
        }
    }
    throw std::logic_error("closed_form_F: bad family");
}

Fraction closed_form_F1_GL2(PrimeModulus m) {
    long long l = m.value();
    return Fraction(l * l - 2, (l * l - 1) * (l - 1));
}

ValuePrediction predicted_value_set(const DicksonReport& report, const Subgroup& g) {
    if (!g.modulus().is_odd()) {
        throw std::invalid_argument("predicted_value_set: requires odd ell");
    }
    long long l = g.ell();
    long long n = static_cast<long long>(g.order());
    long long pbar = static_cast<long long>(report.projective_order);

    ValuePrediction out;
    out.f1_bound = Fraction(3, 4);
    switch (report.type) {
        case DicksonType::Cs:
            out.f_values = {Fraction(1)};
            out.f1_bound = Fraction(1, 2) + Fraction(1, n);
            break;
        case DicksonType::B:
            out.f_values = {Fraction(1)};
            out.f1_bound = Fraction(1, 2) + Fraction(l, n);
            break;
        case DicksonType::Cn:
            out.f_values = {Fraction(1, pbar)};
            break;
        case DicksonType::Ns:
            out.f_values = {Fraction(1, 2), Fraction(3, 4), Fraction(1)};
            out.f1_bound = Fraction(1, 2) + Fraction(1, n);
            break;
        case DicksonType::Nn:
            out.f_values = {Fraction(1, pbar), Fraction(1, 4) + Fraction(1, pbar),
                            Fraction(1, 2) + Fraction(1, pbar)};
            break;
        case DicksonType::A4:
            out.f_values = {Fraction(1, 12), Fraction(1, 3), Fraction(3, 4), Fraction(1)};
            break;
        case DicksonType::S4:
            out.f_values = {Fraction(1, 24), Fraction(7, 24), Fraction(3, 8), Fraction(5, 12),
                            Fraction(5, 8),  Fraction(2, 3),  Fraction(3, 4), Fraction(1)};
            break;
        case DicksonType::A5:
            out.f_values = {Fraction(1, 60), Fraction(4, 15), Fraction(7, 20), Fraction(5, 12),
                            Fraction(3, 5),  Fraction(2, 3),  Fraction(3, 4),  Fraction(1)};
            break;
        case DicksonType::PSL:
            out.f_values = {Fraction(l + 3, 2 * (l + 1))};
            break;
        case DicksonType::PGL:
            out.f_values = {Fraction(l + 2, 2 * (l + 1))};
            break;
    }
    std::sort(out.f_values.begin(), out.f_values.end());
    out.f_values.erase(std::unique(out.f_values.begin(), out.f_values.end()), out.f_values.end());
    return out;
}

GapReport verify_gap(PrimeModulus m, const EnumerationConfig& cfg) {
    return verify_gap(m, enumerate_up_to_conjugacy(m, cfg), std::nullopt, cfg.threads);
}

GapReport verify_gap(PrimeModulus m, const std::vector<Subgroup>& classes,
                     std::optional<Fraction> threshold, unsigned threads) {
    std::uint32_t ell = m.value();
    Fraction thr = threshold.value_or(ell == 2 ? Fraction(2, 3) : Fraction(3, 4));
    GapReport report{ell, thr, classes.size(), {}, {}, {}, {}};
    const Fraction one(1);

    // Per-class densities and types are independent; compute them on workers,
    // then aggregate in class order so the report is deterministic.
    std::vector<DensityPair> densities(classes.size(),
                                       DensityPair{Fraction(1), Fraction(1),
                                                   DensityMethod::brute_force, 0});
    std::vector<DicksonReport> types(
        classes.size(), DicksonReport{DicksonType::Cs, false, 0, 0, std::nullopt});
    {
        std::vector<std::string> errors;
        std::mutex errors_mutex;
        auto work = [&](std::size_t lo, std::size_t hi) {
            try {
                for (std::size_t i = lo; i < hi; ++i) {
                    densities[i] = compute_densities(classes[i]);
                    types[i] = dickson_type(classes[i]);
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(errors_mutex);
                errors.emplace_back(ex.what());
            }
        };
        unsigned n = std::max(1u, threads);
        if (n <= 1 || classes.size() < 4) {
            work(0, classes.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t per = (classes.size() + n - 1) / n;
            for (unsigned t = 0; t < n; ++t) {
                std::size_t lo = std::min(classes.size(), t * per);
                std::size_t hi = std::min(classes.size(), lo + per);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        if (!errors.empty()) throw std::logic_error(errors.front());
    }

    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Subgroup& g = classes[i];
        const DensityPair& d = densities[i];
        const DicksonReport& dr = types[i];

        SubgroupRecord rec{g.order(), dr.projective_order, dr.scalar_intersection_order,
                           dr.type,   d.f1,                d.f,
                           {},        std::nullopt,        true};

        auto violate = [&](const std::string& which, Fraction value, std::string detail) {
            report.violations.push_back(GapViolation{i, which, value, std::move(detail)});
            rec.pass = false;
        };

        if (d.f1 != one && d.f1 > thr) {
            violate("f1", d.f1, "f1 strictly between " + to_string(thr) + " and 1");
        }
        if (d.f != one && d.f > thr) {
            violate("f", d.f, "f strictly between " + to_string(thr) + " and 1");
        }

        if (m.is_odd()) {
            ValuePrediction pred = predicted_value_set(dr, g);
            rec.predicted_f = pred.f_values;
            rec.f1_bound = pred.f1_bound;
            if (!std::binary_search(pred.f_values.begin(), pred.f_values.end(), d.f)) {
                violate("f_set", d.f,
                        "f not in the admissible set for type " + to_string(dr.type));
            }
            if (d.f1 != one && d.f1 > pred.f1_bound) {
                violate("f1_bound", d.f1,
                        "f1 exceeds the bound " + to_string(pred.f1_bound) + " for type " +
                            to_string(dr.type));
            }
        }

        bool exceptional = dr.type == DicksonType::A4 || dr.type == DicksonType::S4 ||
                           dr.type == DicksonType::A5;
        if (exceptional && dr.scalar_intersection_order == 1) {
            report.exceptional_trivial_scalar.push_back(i);
        }
        report.realized_f[dr.type].push_back(d.f);
        report.records.push_back(std::move(rec));
    }

    for (auto& [type, values] : report.realized_f) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
    }
    return report;
}

namespace {

// Conjugacy classes of the projective image of g, as (canonical lift, size).
std::vector<std::pair<Matrix2, std::uint64_t>> projective_classes(const Subgroup& g) {
    std::map<std::uint64_t, Matrix2> points;
    for (const auto& e : g.elements()) {
        ProjectivePoint p(e);
        points.emplace(p.key(), p.rep());
    }
    std::vector<std::pair<Matrix2, std::uint64_t>> classes;
    std::set<std::uint64_t> assigned;
    for (const auto& [key, rep] : points) {
        if (assigned.count(key)) continue;
        std::set<std::uint64_t> orbit;
        for (const auto& [hkey, h] : points) {
            ProjectivePoint q(h * rep * h.inverse());
            orbit.insert(q.key());
        }
        for (std::uint64_t k : orbit) assigned.insert(k);
        classes.emplace_back(rep, orbit.size());
    }
    return classes;
}

struct SuiteRunner {
    LemmaIdentityReport& report;
    IdentitySuite suite;

    SuiteRunner(LemmaIdentityReport& r, std::string name) : report(r), suite{std::move(name), 0, 0} {}
    ~SuiteRunner() { report.suites.push_back(suite); }

    void check(bool ok, const std::string& detail) {
        ++suite.checks;
        if (!ok) {
            ++suite.failures;
            report.failure_details.push_back(suite.name + ": " + detail);
        }
    }
};

}  // namespace

LemmaIdentityReport verify_lemma_identities(PrimeModulus m, const EnumerationConfig& cfg) {
    return verify_lemma_identities(m, enumerate_up_to_conjugacy(m, cfg));
}

LemmaIdentityReport verify_lemma_identities(PrimeModulus m, const std::vector<Subgroup>& classes) {
    if (!m.is_odd()) {
        throw std::invalid_argument("verify_lemma_identities: requires odd ell");
    }
    std::uint32_t ell = m.value();
    LemmaIdentityReport report{ell, {}, {}};

    // Delta(gamma gamma0) = det(gamma) Delta(gamma0) on both Cartan
    // normalizers, with gamma0 running over the non-Cartan coset.
    {
        SuiteRunner s(report, "discriminant-product");
        for (StandardGroup pair : {StandardGroup::Cs, StandardGroup::Cns}) {
            Subgroup cartan = standard(pair, m);
            StandardGroup plus_name =
                pair == StandardGroup::Cs ? StandardGroup::CsPlus : StandardGroup::CnsPlus;
            Subgroup plus = standard(plus_name, m);
            for (const auto& gamma0 : plus.elements()) {
                if (cartan.contains(gamma0)) continue;
                for (const auto& gamma : cartan.elements()) {
                    Fp lhs = discriminant(gamma * gamma0);
                    Fp rhs = gamma.det() * discriminant(gamma0);
                    s.check(lhs == rhs, "pair " + gamma.str() + ", " + gamma0.str());
                }
            }
        }
    }

    // gamma has an eigenvalue iff gamma^2 does and gamma^2 is not a
    // non-square scalar.
    {
        SuiteRunner s(report, "squaring-law");
        for (const auto& g : all_gl2(m)) {
            Matrix2 g2 = g * g;
            bool rhs = in_I(g2) && !is_nonsquare_scalar(g2);
            s.check(in_I(g) == rhs, "matrix " + g.str());
        }
    }

    // f(G) = |image of G n I in PGL| / |image of G|, per class representative.
    {
        SuiteRunner s(report, "projective-count");
        for (const auto& g : classes) {
            std::set<std::uint64_t> image_all, image_eig;
            for (const auto& e : g.elements()) {
                std::uint64_t k = ProjectivePoint(e).key();
                image_all.insert(k);
                if (in_I(e)) image_eig.insert(k);
            }
            Fraction expect(static_cast<long long>(image_eig.size()),
                            static_cast<long long>(image_all.size()));
            Fraction got = compute_densities(g).f;
            s.check(got == expect, "subgroup of order " + std::to_string(g.order()));
        }
    }

    // |G n I1| agrees with kernel counting for every Borel-contained class.
    {
        SuiteRunner s(report, "borel-kernel-count");
        Subgroup borel = standard(StandardGroup::B, m);
        for (const auto& g : classes) {
            auto conj = is_conjugate_into(g, borel);
            if (!conj) continue;
            Subgroup h = g.conjugated_by(*conj);
            std::uint64_t hits = 0, ker1 = 0, ker4 = 0, both = 0;
            for (const auto& e : h.elements()) {
                bool k1 = e.entry(0) == 1;
                bool k4 = e.entry(3) == 1;
                if (in_I1(e)) ++hits;
                if (k1) ++ker1;
                if (k4) ++ker4;
                if (k1 && k4) ++both;
            }
            s.check(hits == ker1 + ker4 - both,
                    "subgroup of order " + std::to_string(g.order()));
        }
    }

    // f1(G) <= 2/|G n Z| - 1/|G| for every subgroup.
    {
        SuiteRunner s(report, "scalar-fiber-bound");
        for (const auto& g : classes) {
            Fraction f1 = compute_densities(g).f1;
            long long z = static_cast<long long>(scalar_intersection_order(g));
            long long n = static_cast<long long>(g.order());
            s.check(f1 <= Fraction(2, z) - Fraction(1, n),
                    "subgroup of order " + std::to_string(g.order()));
        }
    }

    // With |G n Z| = 2, fibers over non-involutions contribute at most one
    // matrix with eigenvalue 1.
    {
        SuiteRunner s(report, "involution-fiber-bound");
        for (const auto& g : classes) {
            if (scalar_intersection_order(g) != 2) continue;
            ProjectiveImage img = projective_image(g);
            auto it = img.element_order_counts.find(2);
            long long n2 = it == img.element_order_counts.end() ? 0
                                                                : static_cast<long long>(it->second);
            long long pbar = static_cast<long long>(img.order);
            long long n = static_cast<long long>(g.order());
            Fraction f1 = compute_densities(g).f1;
            s.check(f1 <= Fraction(2 * n2 + (pbar - n2), n),
                    "subgroup of order " + std::to_string(g.order()));
        }
    }

    // Borel-type subgroups with |G|/ell prime and f1 != 1 have f1 = ell/|G|.
    {
        SuiteRunner s(report, "borel-prime-index");
        for (const auto& g : classes) {
            if (g.order() % ell != 0) continue;
            DicksonReport dr = dickson_type(g);
            if (dr.type != DicksonType::B) continue;
            if (!is_prime(g.order() / ell)) continue;
            Fraction f1 = compute_densities(g).f1;
            if (f1 == Fraction(1)) continue;
            s.check(f1 == Fraction(ell, static_cast<long long>(g.order())),
                    "subgroup of order " + std::to_string(g.order()));
        }
    }

    // f of an exceptional subgroup equals the class-wise sum over the
    // conjugacy classes of its projective image.
    {
        SuiteRunner s(report, "exceptional-class-sum");
        for (const auto& g : classes) {
            DicksonReport dr = dickson_type(g);
            if (dr.type != DicksonType::A4 && dr.type != DicksonType::S4 &&
                dr.type != DicksonType::A5) {
                continue;
            }
            std::uint64_t weighted = 0, total = 0;
            for (const auto& [rep, size] : projective_classes(g)) {
                total += size;
                if (in_I(rep)) weighted += size;
            }
            Fraction expect(static_cast<long long>(weighted), static_cast<long long>(total));
            Fraction got = compute_densities(g).f;
            s.check(got == expect, "subgroup of order " + std::to_string(g.order()) + " of type " +
                                       to_string(dr.type));
        }
    }

    // |{(a,b) : a^2 - eps b^2 = 1}| = ell + 1.
    {
        SuiteRunner s(report, "nonsplit-conic-count");
        std::uint64_t eps = canonical_nonresidue(m).value();
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < ell; ++a) {
            for (std::uint64_t b = 0; b < ell; ++b) {
                std::uint64_t lhs = (a * a % ell + ell - eps * (b * b % ell) % ell) % ell;
                if (lhs == 1) ++count;
            }
        }
        s.check(count == ell + 1, "conic has " + std::to_string(count) + " points");
    }

    return report;
}

}  // namespace gl2den
