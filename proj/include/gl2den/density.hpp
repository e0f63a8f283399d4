#pragma once

#include "gl2den/fraction.hpp"
#include "gl2den/subgroups.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gl2den {

enum class DensityMethod { brute_force, closed_form };

/// The eigenvalue proportions of a subgroup G: f1 is the proportion of
/// elements with 1 as an eigenvalue, f the proportion with some eigenvalue
/// in F_ell. Both exact, both with denominator dividing |G|.
struct DensityPair {
    Fraction f1;
    Fraction f;
    DensityMethod method;
    std::uint64_t group_order;
};

/// f1 = |G n I1| / |G| and f = |G n I| / |G| by iteration over the elements.
DensityPair compute_densities(const Subgroup& g);

enum class ClosedFormFamily { Cns_contained, SL2, GL2 };

/// Closed forms for f: (ell+3)/(2(ell+1)) for SL2 and (ell+2)/(2(ell+1)) for
/// GL2 (odd ell). The Cns_contained family requires a concrete subgroup.
Fraction closed_form_F(ClosedFormFamily family, PrimeModulus m);
/// Subgroup overload; the family membership is checked (Cns_contained means
/// conjugate into the non-split Cartan, where f = 1/|projective image|).
Fraction closed_form_F(ClosedFormFamily family, const Subgroup& g);

/// f1 of the full group: (ell^2-2)/((ell^2-1)(ell-1)), valid for every prime.
Fraction closed_form_F1_GL2(PrimeModulus m);

/// Admissible values of f for a subgroup's Dickson type, and the upper bound
/// on f1 that applies whenever f1 != 1.
struct ValuePrediction {
    std::vector<Fraction> f_values;  // sorted, deduplicated
    Fraction f1_bound;
};
ValuePrediction predicted_value_set(const DicksonReport& report, const Subgroup& g);

struct GapViolation {
    std::size_t class_index;
    std::string which;  // "f1", "f", "f_set", "f1_bound"
    Fraction value;
    std::string detail;
};

/// Everything verified about one subgroup class.
struct SubgroupRecord {
    std::uint64_t order;
    std::uint64_t projective_order;
    std::uint64_t scalar_order;
    DicksonType type;
    Fraction f1;
    Fraction f;
    std::vector<Fraction> predicted_f;  // empty at ell = 2
    std::optional<Fraction> f1_bound;
    bool pass;
};

struct GapReport {
    std::uint32_t ell;
    Fraction threshold;
    std::uint64_t classes_checked;
    std::vector<SubgroupRecord> records;
    std::vector<GapViolation> violations;
    /// Values of f actually attained, per type (the admissible sets need not
    /// be exhausted at a given ell).
    std::map<DicksonType, std::vector<Fraction>> realized_f;
    /// Indices of exceptional classes whose scalar intersection is trivial.
    /// Whether such a subgroup exists is open; none is known, and this list
    /// only speaks for the enumerated range.
    std::vector<std::size_t> exceptional_trivial_scalar;

    bool pass() const { return violations.empty(); }
};

/// Checks, over one representative per conjugacy class of subgroups: neither
/// proportion lies strictly between the threshold and 1 (threshold 3/4, or
/// 2/3 at ell = 2), f lies in its type's admissible set, and f1 respects its
/// type's bound. Types are re-derived here rather than taken on trust.
/// Per-class work runs on `threads` workers; the report is identical for any
/// thread count.
GapReport verify_gap(PrimeModulus m, const EnumerationConfig& cfg = {});
/// Same, over an already-enumerated list of class representatives.
GapReport verify_gap(PrimeModulus m, const std::vector<Subgroup>& classes,
                     std::optional<Fraction> threshold = std::nullopt, unsigned threads = 1);

struct IdentitySuite {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
};

struct LemmaIdentityReport {
    std::uint32_t ell;
    std::vector<IdentitySuite> suites;
    std::vector<std::string> failure_details;

    bool pass() const { return failure_details.empty(); }
    std::uint64_t total_checks() const {
        std::uint64_t n = 0;
        for (const auto& s : suites) n += s.checks;
        return n;
    }
};

/// Exhaustive identity checks (odd ell): the discriminant product rule on
/// both Cartan normalizers, the squaring law and the projective counting
/// formula for f, kernel counting for Borel-contained subgroups, the scalar-
/// fiber and involution-fiber bounds on f1, the prime-index Borel value of
/// f1, the class-sum formula for f on exceptional subgroups, and the size of
/// the non-split norm-one conic.
LemmaIdentityReport verify_lemma_identities(PrimeModulus m, const EnumerationConfig& cfg = {});
LemmaIdentityReport verify_lemma_identities(PrimeModulus m, const std::vector<Subgroup>& classes);

}  // namespace gl2den
