#pragma once

#include "gl2den/gl2.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gl2den {

/// An explicit subgroup of GL_2(F_ell): its full (sorted) element set, the
/// generators it was built from, and a reduced generating set used for
/// conjugacy searches. Immutable after construction.
class Subgroup {
public:
    /// Subgroup generated by `generators`, by breadth-first closure under
    /// multiplication. Empty input yields the trivial group. `size_cap`
    /// bounds the closure (0 means |GL_2(F_ell)|); exceeding it aborts.
    static Subgroup close(PrimeModulus m, const std::vector<Matrix2>& generators,
                          std::uint64_t size_cap = 0);

    /// Wraps an already-closed element set (not re-verified beyond dedup/sort).
    static Subgroup from_elements(PrimeModulus m, std::vector<Matrix2> elements);

    std::uint32_t ell() const noexcept { return ell_; }
    PrimeModulus modulus() const { return PrimeModulus(ell_); }
    std::uint64_t order() const noexcept { return elems_.size(); }

    /// Elements in ascending key order.
    const std::vector<Matrix2>& elements() const noexcept { return elems_; }
    /// Generators as supplied (empty for groups built from element sets).
    const std::vector<Matrix2>& generators() const noexcept { return gens_; }
    /// A small generating set, recomputed greedily; drives conjugacy searches.
    const std::vector<Matrix2>& small_generators() const noexcept { return small_gens_; }

    bool contains(const Matrix2& g) const;
    bool contains_key(std::uint64_t key) const;

    /// Conjugate subgroup c G c^-1.
    Subgroup conjugated_by(const Matrix2& c) const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ell_ == b.ell_ && a.keys_ == b.keys_;
    }

    const std::vector<std::uint64_t>& element_keys() const noexcept { return keys_; }

private:
    Subgroup() = default;

    std::uint32_t ell_ = 2;
    std::vector<Matrix2> gens_;
    std::vector<Matrix2> small_gens_;
    std::vector<Matrix2> elems_;
    std::vector<std::uint64_t> keys_;
};

/// Error from the subgroup file format, with a 1-based line number.
class SubgroupParseError : public std::runtime_error {
public:
    SubgroupParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Subgroup file format: first significant line "ell <prime>", then one
/// generator per line as "a b c d" (row-major residues); '#' starts a comment.
Subgroup parse_subgroup_stream(std::istream& in);
Subgroup load_subgroup_file(const std::string& path);

enum class StandardGroup { Cs, Cns, CsPlus, CnsPlus, B, B1, Z, SL2, GL2 };
std::string to_string(StandardGroup which);
std::optional<StandardGroup> standard_group_from_name(std::string_view name);

/// The standard subgroups: split/non-split Cartans and their normalizers
/// (odd ell only), Borel and first Borel, scalars, SL2, GL2. The non-split
/// Cartan uses the canonical non-residue.
Subgroup standard(StandardGroup which, PrimeModulus m);

struct ProjectiveImage {
    std::uint64_t order;
    /// Multiset of element orders of the image in PGL_2, as order -> count.
    std::map<std::uint64_t, std::uint64_t> element_order_counts;
};
ProjectiveImage projective_image(const Subgroup& g);

std::uint64_t scalar_intersection_order(const Subgroup& g);

/// A conjugator c with c G c^-1 contained in H, found by brute force over
/// GL_2(F_ell) in ascending key order (identity tried first), or nullopt.
std::optional<Matrix2> is_conjugate_into(const Subgroup& g, const Subgroup& h);

/// |N_{GL_2}(G)|, by brute force.
std::uint64_t normalizer_order(const Subgroup& g);

enum class DicksonType { Cs, Cn, Ns, Nn, A4, S4, A5, B, PSL, PGL };
std::string to_string(DicksonType t);

/// A subgroup's position in Dickson's classification plus the evidence.
struct DicksonReport {
    DicksonType type;
    bool ell_divides_order;
    std::uint64_t projective_order;
    std::uint64_t scalar_intersection_order;
    /// Witness conjugating G into the standard group named by `type`, when
    /// the type is defined by containment. Re-verified before returning.
    std::optional<Matrix2> conjugator;
};

/// Dickson type of G. For ell not dividing |G|, containments are tested in
/// the precedence order Cs, Cns, Cs+, Cns+ before the exceptional types,
/// which are identified by projective order (12/24/60) and cross-checked
/// against the exact element-order statistics of A4/S4/A5. For ell dividing
/// |G|: Borel containment, then PSL/PGL by projective order. At ell = 2 the
/// report degenerates to order-based labels (1, 2, 3, 6 -> Cs, B, Cn, PGL).
DicksonReport dickson_type(const Subgroup& g);

struct EnumerationConfig {
    /// Refusal bound for enumerate_up_to_conjugacy; 11 is the hard ceiling.
    std::uint32_t max_ell = 7;
    unsigned threads = 1;
};

/// One representative per conjugacy class of subgroups of GL_2(F_ell),
/// computed by repeatedly extending known representatives by single elements
/// and deduplicating by brute-force conjugacy. Deterministic output order,
/// independent of the thread count. For ell <= 3 the result is checked
/// against an independent count of all subgroups.
std::vector<Subgroup> enumerate_up_to_conjugacy(PrimeModulus m, const EnumerationConfig& cfg = {});

/// Every subgroup of GL_2(F_ell), not up to conjugacy (ell <= 3).
std::vector<Subgroup> all_subgroups(PrimeModulus m);
std::uint64_t total_subgroup_count(PrimeModulus m);

}  // namespace gl2den
