#pragma once

#include "gl2den/field.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace gl2den {

/// Invertible 2x2 matrix over F_ell, row-major [[a,b],[c,d]].
/// Value type: cheap to copy, hashable via key(), totally ordered within one
/// modulus so element lists have a canonical order.
class Matrix2 {
public:
    Matrix2(Fp a, Fp b, Fp c, Fp d);

    static Matrix2 from_values(PrimeModulus m, std::int64_t a, std::int64_t b, std::int64_t c,
                               std::int64_t d);
    /// Fast path over reduced residues; nullopt if the matrix is singular.
    static std::optional<Matrix2> try_from_raw(std::uint32_t ell, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t c, std::uint32_t d) noexcept;
    static Matrix2 identity(PrimeModulus m);
    static Matrix2 scalar(Fp a);

    std::uint32_t ell() const noexcept { return ell_; }
    /// Entry as a reduced residue; index order a, b, c, d.
    std::uint32_t entry(int i) const { return e_[static_cast<std::size_t>(i)]; }
    Fp at(int row, int col) const { return Fp::raw(e_[static_cast<std::size_t>(2 * row + col)], ell_); }

    Fp det() const noexcept;
    Fp tr() const noexcept;

    Matrix2 operator*(const Matrix2& o) const;
    Matrix2 inverse() const;
    Matrix2 pow(std::uint64_t e) const;
    /// Multiplicative order in GL_2(F_ell).
    std::uint64_t order() const;

    bool is_scalar() const noexcept { return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3]; }
    bool is_identity() const noexcept { return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1; }

    /// Packs the four entries base ell; a total order on matrices of one modulus.
    std::uint64_t key() const noexcept {
        return ((std::uint64_t(e_[0]) * ell_ + e_[1]) * ell_ + e_[2]) * ell_ + e_[3];
    }

    friend bool operator==(const Matrix2& x, const Matrix2& y) noexcept {
        return x.ell_ == y.ell_ && x.e_ == y.e_;
    }
    friend std::strong_ordering operator<=>(const Matrix2& x, const Matrix2& y) noexcept {
        if (auto c = x.ell_ <=> y.ell_; c != 0) return c;
        return x.key() <=> y.key();
    }

    /// Text form "[[a,b],[c,d]] mod ell".
    std::string str() const;
    /// Parses the text form; whitespace between tokens is ignored and entries
    /// may be arbitrary integers (reduced mod ell).
    static Matrix2 parse(const std::string& text);

private:
    Matrix2(std::uint32_t ell, std::array<std::uint32_t, 4> e) noexcept : ell_(ell), e_(e) {}

    std::uint32_t ell_;
    std::array<std::uint32_t, 4> e_;
};

/// Discriminant of the characteristic polynomial, tr(g)^2 - 4 det(g).
Fp discriminant(const Matrix2& g);

/// Quadratic character of the discriminant; detects eigenvalues in F_ell for
/// odd ell. Rejected at ell = 2 (use in_I / in_I1, which handle 2 directly).
int chi(const Matrix2& g);

/// g has some eigenvalue in F_ell. For odd ell this is chi(g) != -1; for
/// ell = 2 the characteristic polynomial is evaluated at both field elements.
bool in_I(const Matrix2& g);

/// g has 1 as an eigenvalue, equivalently det(g) + 1 = tr(g).
bool in_I1(const Matrix2& g);

/// Member of the set of non-square scalar matrices.
bool is_nonsquare_scalar(const Matrix2& g);

std::uint64_t gl2_order(std::uint32_t ell);  // (ell^2-1)(ell^2-ell)
std::uint64_t sl2_order(std::uint32_t ell);  // ell(ell^2-1)

/// All of GL_2(F_ell), sorted by key. Intended for tiny ell; refuses ell for
/// which the ell^4 scan would be unreasonable.
std::vector<Matrix2> all_gl2(PrimeModulus m);

enum class ClassKind { scalar, nonsemisimple, split, nonsplit };
std::string to_string(ClassKind k);

/// One conjugacy class of GL_2(F_ell), identified by its canonical
/// representative: scalar aI; [[a,1],[0,a]]; diag(a,b) with a < b; or
/// [[a,eps*b],[b,a]] with 0 <= a < ell, 0 < b <= (ell-1)/2.
struct ClassDescriptor {
    ClassKind kind;
    Matrix2 representative;
    std::array<std::uint32_t, 2> parameters;  // (a,0), (a,0), (a,b), (a,b)
    std::uint64_t class_size;
    std::vector<std::uint32_t> eigenvalues;

    /// Stable identifier of the class within its modulus.
    std::uint64_t class_key() const noexcept;
};

/// Identifies the conjugacy class of g (odd ell).
ClassDescriptor classify_conjugacy(const Matrix2& g);

/// All conjugacy classes of GL_2(F_ell) (odd ell), in canonical order:
/// scalar, nonsemisimple, split, nonsplit.
std::vector<ClassDescriptor> enumerate_class_table(PrimeModulus m);

/// Canonical representative of the coset g.Z(ell): g scaled so that its first
/// nonzero entry in reading order equals 1.
class ProjectivePoint {
public:
    explicit ProjectivePoint(const Matrix2& g);

    const Matrix2& rep() const noexcept { return rep_; }
    std::uint64_t key() const noexcept { return rep_.key(); }

    friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) noexcept {
        return x.rep_ == y.rep_;
    }

private:
    Matrix2 rep_;
};

/// Order of the image of g in PGL_2(F_ell): least k >= 1 with g^k scalar.
std::uint64_t projective_order(const Matrix2& g);

/// Square root mod ell by direct search (tiny moduli); nullopt if a is not a square.
std::optional<std::uint32_t> sqrt_mod(std::uint32_t a, std::uint32_t ell);

}  // namespace gl2den
