#include "gl2den/gl2.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gl2den {

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t ell) {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % ell);
}

std::uint32_t det_raw(const std::array<std::uint32_t, 4>& e, std::uint32_t ell) {
    std::uint64_t ad = std::uint64_t(e[0]) * e[3] % ell;
    std::uint64_t bc = std::uint64_t(e[1]) * e[2] % ell;
    return static_cast<std::uint32_t>((ad + ell - bc) % ell);
}

}  // namespace

Matrix2::Matrix2(Fp a, Fp b, Fp c, Fp d) : ell_(a.modulus()), e_{a.value(), b.value(), c.value(), d.value()} {
    if (b.modulus() != ell_ || c.modulus() != ell_ || d.modulus() != ell_) {
        throw std::invalid_argument("Matrix2: mixed moduli");
    }
    if (det_raw(e_, ell_) == 0) throw std::invalid_argument("Matrix2: singular matrix");
}

Matrix2 Matrix2::from_values(PrimeModulus m, std::int64_t a, std::int64_t b, std::int64_t c,
                             std::int64_t d) {
    return Matrix2(Fp(a, m), Fp(b, m), Fp(c, m), Fp(d, m));
}

std::optional<Matrix2> Matrix2::try_from_raw(std::uint32_t ell, std::uint32_t a, std::uint32_t b,
                                             std::uint32_t c, std::uint32_t d) noexcept {
    std::array<std::uint32_t, 4> e{a, b, c, d};
    if (det_raw(e, ell) == 0) return std::nullopt;
    return Matrix2(ell, e);
}

Matrix2 Matrix2::identity(PrimeModulus m) {
    return Matrix2(m.value(), {1, 0, 0, 1});
}

Matrix2 Matrix2::scalar(Fp a) {
    if (a.is_zero()) throw std::invalid_argument("Matrix2: zero scalar is singular");
    return Matrix2(a.modulus(), {a.value(), 0, 0, a.value()});
}

Fp Matrix2::det() const noexcept { return Fp::raw(det_raw(e_, ell_), ell_); }

Fp Matrix2::tr() const noexcept { return Fp::raw((e_[0] + e_[3]) % ell_, ell_); }

Matrix2 Matrix2::operator*(const Matrix2& o) const {
    if (ell_ != o.ell_) throw std::invalid_argument("Matrix2: mixed moduli");
    const auto& x = e_;
    const auto& y = o.e_;
    std::array<std::uint32_t, 4> r{
        static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[0] + std::uint64_t(x[1]) * y[2]) % ell_),
        static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[1] + std::uint64_t(x[1]) * y[3]) % ell_),
        static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[0] + std::uint64_t(x[3]) * y[2]) % ell_),
        static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[1] + std::uint64_t(x[3]) * y[3]) % ell_)};
    return Matrix2(ell_, r);
}

Matrix2 Matrix2::inverse() const {
    std::uint32_t dinv = Fp::raw(det_raw(e_, ell_), ell_).inverse().value();
    auto neg = [&](std::uint32_t v) { return v == 0 ? 0u : ell_ - v; };
    std::array<std::uint32_t, 4> r{mul_mod(e_[3], dinv, ell_), mul_mod(neg(e_[1]), dinv, ell_),
                                   mul_mod(neg(e_[2]), dinv, ell_), mul_mod(e_[0], dinv, ell_)};
    return Matrix2(ell_, r);
}

Matrix2 Matrix2::pow(std::uint64_t e) const {
    Matrix2 r(ell_, {1, 0, 0, 1});
    Matrix2 b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::uint64_t Matrix2::order() const {
    Matrix2 p = *this;
    std::uint64_t k = 1;
    while (!p.is_identity()) {
        p = p * *this;
        ++k;
    }
    return k;
}

std::string Matrix2::str() const {
    std::ostringstream os;
    os << "[[" << e_[0] << "," << e_[1] << "],[" << e_[2] << "," << e_[3] << "]] mod " << ell_;
    return os.str();
}

namespace {

// Tokenizer for the matrix text form: punctuation, integers, and the word "mod".
struct MatrixLexer {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c) {
            throw std::invalid_argument("Matrix2::parse: expected '" + std::string(1, c) + "' in \"" + s + "\"");
        }
        ++i;
    }
    std::int64_t integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        std::size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw std::invalid_argument("Matrix2::parse: expected integer in \"" + s + "\"");
        return std::stoll(s.substr(start, i - start));
    }
    void expect_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) != 0) {
            throw std::invalid_argument("Matrix2::parse: expected \"" + w + "\" in \"" + s + "\"");
        }
        i += w.size();
    }
    void expect_end() {
        skip_ws();
        if (i != s.size()) throw std::invalid_argument("Matrix2::parse: trailing input in \"" + s + "\"");
    }
};

}  // namespace

Matrix2 Matrix2::parse(const std::string& text) {
    MatrixLexer lx{text};
    lx.expect('[');
    lx.expect('[');
    std::int64_t a = lx.integer();
    lx.expect(',');
    std::int64_t b = lx.integer();
    lx.expect(']');
    lx.expect(',');
    lx.expect('[');
    std::int64_t c = lx.integer();
    lx.expect(',');
    std::int64_t d = lx.integer();
    lx.expect(']');
    lx.expect(']');
    lx.expect_word("mod");
    std::int64_t ell = lx.integer();
    lx.expect_end();
    if (ell < 2) throw std::invalid_argument("Matrix2::parse: modulus must be a prime >= 2");
    return from_values(PrimeModulus(static_cast<std::uint32_t>(ell)), a, b, c, d);
}

Fp discriminant(const Matrix2& g) {
    Fp t = g.tr();
    Fp four = Fp(4, PrimeModulus(g.ell()));
    return t * t - four * g.det();
}

int chi(const Matrix2& g) {
    if (g.ell() == 2) throw std::invalid_argument("chi: undefined for ell = 2");
    return legendre(discriminant(g));
}

namespace {

// Does x^2 - tr x + det have a root in F_ell?  Direct evaluation; used where
// the quadratic character is unavailable (ell = 2).
bool charpoly_has_root(const Matrix2& g) {
    std::uint32_t ell = g.ell();
    std::uint32_t t = g.tr().value();
    std::uint32_t d = g.det().value();
    for (std::uint32_t x = 0; x < ell; ++x) {
        std::uint64_t v = (std::uint64_t(x) * x + d) % ell;
        std::uint64_t tx = std::uint64_t(t) * x % ell;
        if (v == tx) return true;
    }
    return false;
}

}  // namespace

bool in_I(const Matrix2& g) {
    if (g.ell() == 2) return charpoly_has_root(g);
    return chi(g) != -1;
}

bool in_I1(const Matrix2& g) {
    std::uint32_t ell = g.ell();
    return (g.det().value() + 1) % ell == g.tr().value();
}

bool is_nonsquare_scalar(const Matrix2& g) {
    if (!g.is_scalar()) return false;
    if (g.ell() == 2) return false;  // every element of F_2^x is a square
    return legendre_symbol(g.entry(0), g.ell()) == -1;
}

std::uint64_t gl2_order(std::uint32_t ell) {
    std::uint64_t l = ell;
    return (l * l - 1) * (l * l - l);
}

std::uint64_t sl2_order(std::uint32_t ell) {
    std::uint64_t l = ell;
    return l * (l * l - 1);
}

std::vector<Matrix2> all_gl2(PrimeModulus m) {
    std::uint32_t ell = m.value();
    if (ell > 41) throw std::invalid_argument("all_gl2: ell too large for exhaustive enumeration");
    std::vector<Matrix2> out;
    out.reserve(gl2_order(ell));
    for (std::uint32_t a = 0; a < ell; ++a)
        for (std::uint32_t b = 0; b < ell; ++b)
            for (std::uint32_t c = 0; c < ell; ++c)
                for (std::uint32_t d = 0; d < ell; ++d) {
                    if (auto g = Matrix2::try_from_raw(ell, a, b, c, d)) out.push_back(*g);
                }
    return out;  // the loop order is ascending key order already
}

std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::scalar: return "scalar";
        case ClassKind::nonsemisimple: return "nonsemisimple";
        case ClassKind::split: return "split";
        case ClassKind::nonsplit: return "nonsplit";
    }
    throw std::logic_error("to_string(ClassKind): bad value");
}

std::uint64_t ClassDescriptor::class_key() const noexcept {
    std::uint64_t ell = representative.ell();
    return (static_cast<std::uint64_t>(kind) * ell + parameters[0]) * ell + parameters[1];
}

std::optional<std::uint32_t> sqrt_mod(std::uint32_t a, std::uint32_t ell) {
    a %= ell;
    for (std::uint32_t x = 0; x <= ell / 2; ++x) {
        if (std::uint64_t(x) * x % ell == a) return x;
    }
    return std::nullopt;
}

ClassDescriptor classify_conjugacy(const Matrix2& g) {
    std::uint32_t ell = g.ell();
    if (ell == 2) throw std::invalid_argument("classify_conjugacy: requires odd ell");
    PrimeModulus m(ell);
    std::uint64_t l = ell;

    if (g.is_scalar()) {
        std::uint32_t a = g.entry(0);
        return ClassDescriptor{ClassKind::scalar, Matrix2::scalar(Fp::raw(a, ell)), {a, 0}, 1, {a}};
    }

    std::uint32_t t = g.tr().value();
    std::uint32_t d = g.det().value();
    Fp half = Fp(2, m).inverse();
    int c = chi(g);

    if (c == 0) {
        // one repeated eigenvalue a = tr/2
        std::uint32_t a = (Fp::raw(t, ell) * half).value();
        return ClassDescriptor{ClassKind::nonsemisimple, Matrix2::from_values(m, a, 1, 0, a),
                               {a, 0}, (l + 1) * (l - 1), {a}};
    }
    if (c == 1) {
        std::uint32_t s = *sqrt_mod(discriminant(g).value(), ell);
        std::uint32_t r1 = ((Fp::raw(t, ell) + Fp::raw(s, ell)) * half).value();
        std::uint32_t r2 = ((Fp::raw(t, ell) - Fp::raw(s, ell)) * half).value();
        std::uint32_t a = std::min(r1, r2);
        std::uint32_t b = std::max(r1, r2);
        return ClassDescriptor{ClassKind::split, Matrix2::from_values(m, a, 0, 0, b),
                               {a, b}, l * (l + 1), {a, b}};
    }
    // chi = -1: conjugate to [[a, eps b],[b, a]] with a = tr/2, eps b^2 = a^2 - det
    std::uint32_t eps = canonical_nonresidue(m).value();
    std::uint32_t a = (Fp::raw(t, ell) * half).value();
    Fp bb = (Fp::raw(a, ell) * Fp::raw(a, ell) - Fp::raw(d, ell)) / Fp::raw(eps, ell);
    std::uint32_t b0 = *sqrt_mod(bb.value(), ell);
    std::uint32_t b = (b0 <= (ell - 1) / 2) ? b0 : ell - b0;
    std::uint32_t eb = mul_mod(eps, b, ell);
    return ClassDescriptor{ClassKind::nonsplit, Matrix2::from_values(m, a, eb, b, a),
                           {a, b}, l * (l - 1), {}};
}

std::vector<ClassDescriptor> enumerate_class_table(PrimeModulus m) {
    std::uint32_t ell = m.value();
    if (!m.is_odd()) throw std::invalid_argument("enumerate_class_table: requires odd ell");
    if (ell > 41) throw std::invalid_argument("enumerate_class_table: ell too large");
    std::uint64_t l = ell;
    std::vector<ClassDescriptor> out;
    out.reserve(static_cast<std::size_t>(l * l - 1));

    for (std::uint32_t a = 1; a < ell; ++a) {
        out.push_back({ClassKind::scalar, Matrix2::scalar(Fp::raw(a, ell)), {a, 0}, 1, {a}});
    }
    for (std::uint32_t a = 1; a < ell; ++a) {
        out.push_back({ClassKind::nonsemisimple, Matrix2::from_values(m, a, 1, 0, a),
                       {a, 0}, (l + 1) * (l - 1), {a}});
    }
    for (std::uint32_t a = 1; a < ell; ++a) {
        for (std::uint32_t b = a + 1; b < ell; ++b) {
            out.push_back({ClassKind::split, Matrix2::from_values(m, a, 0, 0, b),
                           {a, b}, l * (l + 1), {a, b}});
        }
    }
    std::uint32_t eps = canonical_nonresidue(m).value();
    for (std::uint32_t a = 0; a < ell; ++a) {
        for (std::uint32_t b = 1; b <= (ell - 1) / 2; ++b) {
            out.push_back({ClassKind::nonsplit,
                           Matrix2::from_values(m, a, mul_mod(eps, b, ell), b, a),
                           {a, b}, l * (l - 1), {}});
        }
    }
    return out;
}

ProjectivePoint::ProjectivePoint(const Matrix2& g) : rep_(g) {
    // det != 0 forces a != 0 or b != 0
    std::uint32_t lead = g.entry(0) != 0 ? g.entry(0) : g.entry(1);
    Fp scale = Fp::raw(lead, g.ell()).inverse();
    rep_ = Matrix2::scalar(scale) * g;
}

std::uint64_t projective_order(const Matrix2& g) {
    Matrix2 p = g;
    std::uint64_t k = 1;
    while (!p.is_scalar()) {
        p = p * g;
        ++k;
    }
    return k;
}

}  // namespace gl2den
