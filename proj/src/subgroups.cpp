#include "gl2den/subgroups.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace gl2den {

namespace {

struct RawMat {
    std::uint32_t e[4];
};

RawMat decode(std::uint64_t key, std::uint32_t ell) {
    RawMat m;
    m.e[3] = static_cast<std::uint32_t>(key % ell);
    key /= ell;
    m.e[2] = static_cast<std::uint32_t>(key % ell);
    key /= ell;
    m.e[1] = static_cast<std::uint32_t>(key % ell);
    key /= ell;
    m.e[0] = static_cast<std::uint32_t>(key);
    return m;
}

std::uint64_t encode(const RawMat& m, std::uint32_t ell) {
    return ((std::uint64_t(m.e[0]) * ell + m.e[1]) * ell + m.e[2]) * ell + m.e[3];
}

RawMat raw_mul(const RawMat& x, const RawMat& y, std::uint32_t ell) {
    RawMat r;
    r.e[0] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[0] + std::uint64_t(x.e[1]) * y.e[2]) % ell);
    r.e[1] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[1] + std::uint64_t(x.e[1]) * y.e[3]) % ell);
    r.e[2] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[0] + std::uint64_t(x.e[3]) * y.e[2]) % ell);
    r.e[3] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[1] + std::uint64_t(x.e[3]) * y.e[3]) % ell);
    return r;
}

std::uint64_t identity_key(std::uint32_t ell) {
    return std::uint64_t(1) * ell * ell * ell + 1;
}

// Breadth-first closure from the identity under right multiplication by the
// generators. Products of invertible matrices stay invertible, so no
// per-element validation is needed. Returns sorted keys.
std::vector<std::uint64_t> closure_keys(std::uint32_t ell, const std::vector<RawMat>& gens,
                                        std::uint64_t cap) {
    std::uint64_t space = std::uint64_t(ell) * ell * ell * ell;
    std::vector<std::uint8_t> seen(space, 0);
    std::vector<std::uint64_t> out;
    out.push_back(identity_key(ell));
    seen[out[0]] = 1;
    for (std::size_t qi = 0; qi < out.size(); ++qi) {
        RawMat cur = decode(out[qi], ell);
        for (const RawMat& g : gens) {
            std::uint64_t k = encode(raw_mul(cur, g, ell), ell);
            if (!seen[k]) {
                seen[k] = 1;
                out.push_back(k);
                if (out.size() > cap) {
                    throw std::runtime_error("Subgroup::close: size cap " + std::to_string(cap) +
                                             " exceeded");
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RawMat> to_raw(const std::vector<Matrix2>& ms) {
    std::vector<RawMat> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(RawMat{{m.entry(0), m.entry(1), m.entry(2), m.entry(3)}});
    return out;
}

Matrix2 from_key(std::uint64_t key, std::uint32_t ell) {
    RawMat m = decode(key, ell);
    return *Matrix2::try_from_raw(ell, m.e[0], m.e[1], m.e[2], m.e[3]);
}

// Greedy generating set: walk the candidates in order, keeping those that
// enlarge the closure, until the target order is reached.
std::vector<Matrix2> greedy_generators(std::uint32_t ell, const std::vector<Matrix2>& candidates,
                                       std::uint64_t target_order) {
    std::vector<Matrix2> chosen;
    if (target_order <= 1) return chosen;
    std::vector<std::uint64_t> cur{identity_key(ell)};
    for (const auto& c : candidates) {
        if (std::binary_search(cur.begin(), cur.end(), c.key())) continue;
        chosen.push_back(c);
        cur = closure_keys(ell, to_raw(chosen), gl2_order(ell));
        if (cur.size() == target_order) break;
    }
    return chosen;
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Subgroup Subgroup::close(PrimeModulus m, const std::vector<Matrix2>& generators,
                         std::uint64_t size_cap) {
    std::uint32_t ell = m.value();
    for (const auto& g : generators) {
        if (g.ell() != ell) throw std::invalid_argument("Subgroup::close: mixed moduli");
    }
    std::uint64_t cap = size_cap == 0 ? gl2_order(ell) : size_cap;
    Subgroup s;
    s.ell_ = ell;
    s.gens_ = generators;
    s.keys_ = closure_keys(ell, to_raw(generators), cap);
    s.elems_.reserve(s.keys_.size());
    for (std::uint64_t k : s.keys_) s.elems_.push_back(from_key(k, ell));
    s.small_gens_ = greedy_generators(ell, generators, s.keys_.size());
    return s;
}

Subgroup Subgroup::from_elements(PrimeModulus m, std::vector<Matrix2> elements) {
    std::uint32_t ell = m.value();
    for (const auto& g : elements) {
        if (g.ell() != ell) throw std::invalid_argument("Subgroup::from_elements: mixed moduli");
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup s;
    s.ell_ = ell;
    s.elems_ = std::move(elements);
    s.keys_.reserve(s.elems_.size());
    for (const auto& e : s.elems_) s.keys_.push_back(e.key());
    s.small_gens_ = greedy_generators(ell, s.elems_, s.keys_.size());
    s.gens_ = s.small_gens_;
    return s;
}

bool Subgroup::contains(const Matrix2& g) const {
    return g.ell() == ell_ && contains_key(g.key());
}

bool Subgroup::contains_key(std::uint64_t key) const {
    return std::binary_search(keys_.begin(), keys_.end(), key);
}

Subgroup Subgroup::conjugated_by(const Matrix2& c) const {
    if (c.ell() != ell_) throw std::invalid_argument("Subgroup::conjugated_by: mixed moduli");
    Matrix2 cinv = c.inverse();
    std::vector<Matrix2> mapped;
    mapped.reserve(elems_.size());
    for (const auto& g : elems_) mapped.push_back(c * g * cinv);
    return from_elements(PrimeModulus(ell_), std::move(mapped));
}

Subgroup parse_subgroup_stream(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::optional<PrimeModulus> m;
    std::vector<Matrix2> gens;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        if (!m) {
            std::string word;
            if (!(ls >> word)) continue;  // blank
            std::uint64_t ell;
            if (word != "ell" || !(ls >> ell)) {
                throw SubgroupParseError(lineno, "expected header \"ell <prime>\"");
            }
            std::string extra;
            if (ls >> extra) throw SubgroupParseError(lineno, "trailing tokens after modulus");
            try {
                m.emplace(static_cast<std::uint32_t>(ell));
            } catch (const std::invalid_argument& e) {
                throw SubgroupParseError(lineno, e.what());
            }
            continue;
        }
        std::int64_t a, b, c, d;
        if (!(ls >> a)) continue;  // blank
        if (!(ls >> b >> c >> d)) {
            throw SubgroupParseError(lineno, "expected four residues \"a b c d\"");
        }
        std::string extra;
        if (ls >> extra) throw SubgroupParseError(lineno, "trailing tokens after generator");
        try {
            gens.push_back(Matrix2::from_values(*m, a, b, c, d));
        } catch (const std::invalid_argument&) {
            throw SubgroupParseError(lineno, "singular generator");
        }
    }
    if (!m) throw SubgroupParseError(lineno, "missing header \"ell <prime>\"");
    return Subgroup::close(*m, gens);
}

Subgroup load_subgroup_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open subgroup file: " + path);
    return parse_subgroup_stream(in);
}

std::string to_string(StandardGroup which) {
    switch (which) {
        case StandardGroup::Cs: return "Cs";
        case StandardGroup::Cns: return "Cns";
        case StandardGroup::CsPlus: return "Cs+";
        case StandardGroup::CnsPlus: return "Cns+";
        case StandardGroup::B: return "B";
        case StandardGroup::B1: return "B1";
        case StandardGroup::Z: return "Z";
        case StandardGroup::SL2: return "SL2";
        case StandardGroup::GL2: return "GL2";
    }
    throw std::logic_error("to_string(StandardGroup): bad value");
}

std::optional<StandardGroup> standard_group_from_name(std::string_view name) {
    if (name == "Cs") return StandardGroup::Cs;
    if (name == "Cns") return StandardGroup::Cns;
    if (name == "Cs+" || name == "CsPlus" || name == "Ns") return StandardGroup::CsPlus;
    if (name == "Cns+" || name == "CnsPlus" || name == "Nn") return StandardGroup::CnsPlus;
    if (name == "B") return StandardGroup::B;
    if (name == "B1") return StandardGroup::B1;
    if (name == "Z") return StandardGroup::Z;
    if (name == "SL2") return StandardGroup::SL2;
    if (name == "GL2") return StandardGroup::GL2;
    return std::nullopt;
}

Subgroup standard(StandardGroup which, PrimeModulus m) {
    std::uint32_t ell = m.value();
    std::uint64_t l = ell;
    bool cartan = which == StandardGroup::Cs || which == StandardGroup::Cns ||
                  which == StandardGroup::CsPlus || which == StandardGroup::CnsPlus;
    if (cartan && !m.is_odd()) {
        throw std::invalid_argument("standard: Cartan subgroups are only defined for odd ell");
    }

    std::vector<Matrix2> elems;
    std::uint64_t expected = 0;
    switch (which) {
        case StandardGroup::Cs:
        case StandardGroup::CsPlus: {
            for (std::uint32_t a = 1; a < ell; ++a)
                for (std::uint32_t b = 1; b < ell; ++b)
                    elems.push_back(*Matrix2::try_from_raw(ell, a, 0, 0, b));
            if (which == StandardGroup::CsPlus) {
                Matrix2 swap = *Matrix2::try_from_raw(ell, 0, 1, 1, 0);
                std::size_t n = elems.size();
                for (std::size_t i = 0; i < n; ++i) elems.push_back(swap * elems[i]);
                expected = 2 * (l - 1) * (l - 1);
            } else {
                expected = (l - 1) * (l - 1);
            }
            break;
        }
        case StandardGroup::Cns:
        case StandardGroup::CnsPlus: {
            std::uint32_t eps = canonical_nonresidue(m).value();
            for (std::uint32_t a = 0; a < ell; ++a)
                for (std::uint32_t b = 0; b < ell; ++b) {
                    if (a == 0 && b == 0) continue;
                    std::uint32_t eb = static_cast<std::uint32_t>(std::uint64_t(eps) * b % ell);
                    elems.push_back(*Matrix2::try_from_raw(ell, a, eb, b, a));
                }
            if (which == StandardGroup::CnsPlus) {
                Matrix2 refl = *Matrix2::try_from_raw(ell, 1, 0, 0, ell - 1);
                std::size_t n = elems.size();
                for (std::size_t i = 0; i < n; ++i) elems.push_back(refl * elems[i]);
                expected = 2 * (l * l - 1);
            } else {
                expected = l * l - 1;
            }
            break;
        }
        case StandardGroup::B: {
            for (std::uint32_t a = 1; a < ell; ++a)
                for (std::uint32_t b = 0; b < ell; ++b)
                    for (std::uint32_t d = 1; d < ell; ++d)
                        elems.push_back(*Matrix2::try_from_raw(ell, a, b, 0, d));
            expected = l * (l - 1) * (l - 1);
            break;
        }
        case StandardGroup::B1: {
            for (std::uint32_t b = 0; b < ell; ++b)
                for (std::uint32_t d = 1; d < ell; ++d)
                    elems.push_back(*Matrix2::try_from_raw(ell, 1, b, 0, d));
            expected = l * (l - 1);
            break;
        }
        case StandardGroup::Z: {
            for (std::uint32_t a = 1; a < ell; ++a)
                elems.push_back(*Matrix2::try_from_raw(ell, a, 0, 0, a));
            expected = l - 1;
            break;
        }
        case StandardGroup::SL2:
        case StandardGroup::GL2: {
            for (const auto& g : all_gl2(m)) {
                if (which == StandardGroup::GL2 || g.det().value() == 1) elems.push_back(g);
            }
            expected = which == StandardGroup::GL2 ? gl2_order(ell) : sl2_order(ell);
            break;
        }
    }
    Subgroup s = Subgroup::from_elements(m, std::move(elems));
    if (s.order() != expected) {
        throw std::logic_error("standard: " + to_string(which) + " has order " +
                               std::to_string(s.order()) + ", expected " + std::to_string(expected));
    }
    return s;
}

ProjectiveImage projective_image(const Subgroup& g) {
    std::vector<std::uint64_t> proj_keys;
    proj_keys.reserve(g.order());
    std::vector<Matrix2> reps;
    for (const auto& e : g.elements()) {
        ProjectivePoint p(e);
        proj_keys.push_back(p.key());
        reps.push_back(p.rep());
    }
    // dedup canonical representatives, keyed
    std::vector<std::size_t> idx(proj_keys.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return proj_keys[a] < proj_keys[b]; });
    ProjectiveImage out{0, {}};
    std::uint64_t last = ~std::uint64_t(0);
    for (std::size_t i : idx) {
        if (proj_keys[i] == last) continue;
        last = proj_keys[i];
        ++out.order;
        ++out.element_order_counts[projective_order(reps[i])];
    }
    return out;
}

std::uint64_t scalar_intersection_order(const Subgroup& g) {
    std::uint64_t n = 0;
    for (const auto& e : g.elements()) {
        if (e.is_scalar()) ++n;
    }
    return n;
}

namespace {

bool conjugates_into(const Matrix2& c, const std::vector<Matrix2>& gens, const Subgroup& h) {
    Matrix2 cinv = c.inverse();
    for (const auto& g : gens) {
        if (!h.contains_key((c * g * cinv).key())) return false;
    }
    return true;
}

}  // namespace

std::optional<Matrix2> is_conjugate_into(const Subgroup& g, const Subgroup& h) {
    if (g.ell() != h.ell()) throw std::invalid_argument("is_conjugate_into: mixed moduli");
    PrimeModulus m(g.ell());
    Matrix2 id = Matrix2::identity(m);
    const auto& gens = g.small_generators();
    if (conjugates_into(id, gens, h)) return id;
    for (const auto& c : all_gl2(m)) {
        if (conjugates_into(c, gens, h)) return c;
    }
    return std::nullopt;
}

std::uint64_t normalizer_order(const Subgroup& g) {
    PrimeModulus m(g.ell());
    std::uint64_t n = 0;
    for (const auto& c : all_gl2(m)) {
        if (conjugates_into(c, g.small_generators(), g)) ++n;
    }
    return n;
}

std::string to_string(DicksonType t) {
    switch (t) {
        case DicksonType::Cs: return "Cs";
        case DicksonType::Cn: return "Cn";
        case DicksonType::Ns: return "Ns";
        case DicksonType::Nn: return "Nn";
        case DicksonType::A4: return "A4";
        case DicksonType::S4: return "S4";
        case DicksonType::A5: return "A5";
        case DicksonType::B: return "B";
        case DicksonType::PSL: return "PSL";
        case DicksonType::PGL: return "PGL";
    }
    throw std::logic_error("to_string(DicksonType): bad value");
}

namespace {

void verify_conjugator(const Subgroup& g, const Subgroup& target, const Matrix2& c) {
    Matrix2 cinv = c.inverse();
    for (const auto& e : g.elements()) {
        if (!target.contains_key((c * e * cinv).key())) {
            throw std::logic_error("dickson_type: conjugator fails to map G into the standard group");
        }
    }
}

bool order_counts_match(const ProjectiveImage& img,
                        std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> want) {
    if (img.element_order_counts.size() != want.size()) return false;
    for (auto [ord, cnt] : want) {
        auto it = img.element_order_counts.find(ord);
        if (it == img.element_order_counts.end() || it->second != cnt) return false;
    }
    return true;
}

}  // namespace

DicksonReport dickson_type(const Subgroup& g) {
    std::uint32_t ell = g.ell();
    PrimeModulus m(ell);
    ProjectiveImage img = projective_image(g);
    std::uint64_t scalars = scalar_intersection_order(g);
    bool divides = g.order() % ell == 0;

    if (ell == 2) {
        // GL_2(F_2) has subgroups of orders 1, 2, 3, 6 only; label them after
        // the groups they coincide with.
        DicksonReport r{DicksonType::Cs, divides, img.order, scalars, std::nullopt};
        switch (g.order()) {
            case 1:
                r.type = DicksonType::Cs;
                r.conjugator = Matrix2::identity(m);
                break;
            case 2: {
                r.type = DicksonType::B;
                Subgroup borel = standard(StandardGroup::B, m);
                r.conjugator = is_conjugate_into(g, borel);
                if (r.conjugator) verify_conjugator(g, borel, *r.conjugator);
                break;
            }
            case 3: r.type = DicksonType::Cn; break;
            case 6: r.type = DicksonType::PGL; break;
            default: throw std::logic_error("dickson_type: impossible subgroup order for ell = 2");
        }
        return r;
    }

    DicksonReport r{DicksonType::Cs, divides, img.order, scalars, std::nullopt};
    if (!divides) {
        const std::pair<StandardGroup, DicksonType> ladder[] = {
            {StandardGroup::Cs, DicksonType::Cs},
            {StandardGroup::Cns, DicksonType::Cn},
            {StandardGroup::CsPlus, DicksonType::Ns},
            {StandardGroup::CnsPlus, DicksonType::Nn},
        };
        for (auto [std_name, type] : ladder) {
            Subgroup target = standard(std_name, m);
            if (auto c = is_conjugate_into(g, target)) {
                verify_conjugator(g, target, *c);
                r.type = type;
                r.conjugator = c;
                return r;
            }
        }
        // Exceptional projective image; the order statistics of A4, S4, A5
        // are checked exactly to guard against a classifier bug.
        if (img.order == 12 && order_counts_match(img, {{1, 1}, {2, 3}, {3, 8}})) {
            r.type = DicksonType::A4;
        } else if (img.order == 24 && order_counts_match(img, {{1, 1}, {2, 9}, {3, 8}, {4, 6}})) {
            r.type = DicksonType::S4;
        } else if (img.order == 60 && order_counts_match(img, {{1, 1}, {2, 15}, {3, 20}, {5, 24}})) {
            r.type = DicksonType::A5;
        } else {
            throw std::logic_error("dickson_type: subgroup matches no classification clause");
        }
        return r;
    }

    Subgroup borel = standard(StandardGroup::B, m);
    if (auto c = is_conjugate_into(g, borel)) {
        verify_conjugator(g, borel, *c);
        r.type = DicksonType::B;
        r.conjugator = c;
        return r;
    }
    if (img.order == sl2_order(ell) / 2) {
        r.type = DicksonType::PSL;
    } else if (img.order == sl2_order(ell)) {
        r.type = DicksonType::PGL;
    } else {
        throw std::logic_error("dickson_type: subgroup matches no classification clause");
    }
    return r;
}

namespace {

// Conjugacy-invariant fingerprint of an element set, cheap to compute from
// keys alone: order, scalar count, and the multiset of (tr, det) pairs.
std::uint64_t class_fingerprint(const std::vector<std::uint64_t>& keys, std::uint32_t ell) {
    std::uint64_t scalars = 0;
    std::vector<std::uint32_t> trdet;
    trdet.reserve(keys.size());
    for (std::uint64_t k : keys) {
        RawMat m = decode(k, ell);
        if (m.e[1] == 0 && m.e[2] == 0 && m.e[0] == m.e[3]) ++scalars;
        std::uint32_t tr = (m.e[0] + m.e[3]) % ell;
        std::uint32_t det = static_cast<std::uint32_t>(
            (std::uint64_t(m.e[0]) * m.e[3] % ell + ell - std::uint64_t(m.e[1]) * m.e[2] % ell) % ell);
        trdet.push_back(tr * ell + det);
    }
    std::sort(trdet.begin(), trdet.end());
    std::uint64_t h = fnv1a(&scalars, sizeof scalars);
    std::uint64_t n = keys.size();
    h = fnv1a(&n, sizeof n, h);
    h = fnv1a(trdet.data(), trdet.size() * sizeof(std::uint32_t), h);
    return h;
}

// Is <gens> conjugate to the subgroup with element keys `target` (same order)?
bool conjugate_to(const std::vector<Matrix2>& gens, const std::vector<std::uint64_t>& target,
                  const std::vector<Matrix2>& ambient) {
    auto contains = [&](std::uint64_t k) {
        return std::binary_search(target.begin(), target.end(), k);
    };
    for (const auto& c : ambient) {
        Matrix2 cinv = c.inverse();
        bool ok = true;
        for (const auto& g : gens) {
            if (!contains((c * g * cinv).key())) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

struct SeenSets {
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> by_hash;

    bool insert(const std::vector<std::uint64_t>& keys) {
        std::uint64_t h = fnv1a(keys.data(), keys.size() * sizeof(std::uint64_t));
        auto& bucket = by_hash[h];
        for (const auto& k : bucket) {
            if (k == keys) return false;
        }
        bucket.push_back(keys);
        return true;
    }
};

}  // namespace

std::vector<Subgroup> enumerate_up_to_conjugacy(PrimeModulus m, const EnumerationConfig& cfg) {
    std::uint32_t ell = m.value();
    std::uint32_t bound = std::min<std::uint32_t>(cfg.max_ell, 11);
    if (ell > bound) {
        throw std::invalid_argument("enumerate_up_to_conjugacy: ell = " + std::to_string(ell) +
                                    " exceeds the configured bound " + std::to_string(bound));
    }

    const std::vector<Matrix2> ambient = all_gl2(m);
    std::vector<Subgroup> reps;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

    auto add_class = [&](const Subgroup& s, std::uint64_t fingerprint) {
        buckets[fingerprint].push_back(reps.size());
        reps.push_back(s);
    };

    Subgroup trivial = Subgroup::close(m, {});
    add_class(trivial, class_fingerprint(trivial.element_keys(), ell));

    unsigned threads = std::max(1u, cfg.threads);

    for (std::size_t ri = 0; ri < reps.size(); ++ri) {
        const Subgroup base = reps[ri];
        std::vector<RawMat> base_gens = to_raw(base.small_generators());

        std::vector<Matrix2> candidates;
        for (const auto& x : ambient) {
            if (!base.contains_key(x.key())) candidates.push_back(x);
        }

        SeenSets seen;
        const std::size_t block = 512;
        std::vector<std::vector<std::uint64_t>> results(std::min(block, candidates.size()));
        for (std::size_t start = 0; start < candidates.size(); start += block) {
            std::size_t end = std::min(candidates.size(), start + block);
            results.resize(end - start);

            auto work = [&](std::size_t lo, std::size_t hi) {
                std::vector<RawMat> gens = base_gens;
                gens.push_back(RawMat{});
                for (std::size_t i = lo; i < hi; ++i) {
                    const Matrix2& x = candidates[start + i];
                    gens.back() = RawMat{{x.entry(0), x.entry(1), x.entry(2), x.entry(3)}};
                    results[i] = closure_keys(ell, gens, gl2_order(ell));
                }
            };
            if (threads <= 1 || end - start < 64) {
                work(0, end - start);
            } else {
                std::vector<std::thread> pool;
                std::size_t n = end - start;
                std::size_t per = (n + threads - 1) / threads;
                for (unsigned t = 0; t < threads; ++t) {
                    std::size_t lo = std::min(n, t * per);
                    std::size_t hi = std::min(n, lo + per);
                    if (lo < hi) pool.emplace_back(work, lo, hi);
                }
                for (auto& th : pool) th.join();
            }

            // Merge in candidate order so discovery order (and therefore the
            // chosen representatives) is independent of the thread count.
            for (std::size_t i = 0; i < end - start; ++i) {
                std::vector<std::uint64_t>& keys = results[i];
                if (!seen.insert(keys)) continue;
                std::uint64_t fp = class_fingerprint(keys, ell);
                bool known = false;
                std::vector<Matrix2> cand_gens = base.small_generators();
                cand_gens.push_back(candidates[start + i]);
                if (auto it = buckets.find(fp); it != buckets.end()) {
                    for (std::size_t idx : it->second) {
                        if (reps[idx].order() != keys.size()) continue;
                        if (reps[idx].element_keys() == keys ||
                            conjugate_to(cand_gens, reps[idx].element_keys(), ambient)) {
                            known = true;
                            break;
                        }
                    }
                }
                if (!known) {
                    add_class(Subgroup::close(m, cand_gens), fp);
                }
            }
        }
    }

    if (ell <= 3) {
        // Independent completeness check: class sizes (index of normalizer)
        // must account for every subgroup found by direct enumeration.
        std::uint64_t total = 0;
        for (const auto& s : reps) total += gl2_order(ell) / normalizer_order(s);
        std::uint64_t expected = total_subgroup_count(m);
        if (total != expected) {
            throw std::logic_error("enumerate_up_to_conjugacy: found " + std::to_string(total) +
                                   " subgroups in total, expected " + std::to_string(expected));
        }
    }
    return reps;
}

std::vector<Subgroup> all_subgroups(PrimeModulus m) {
    std::uint32_t ell = m.value();
    if (ell > 3) throw std::invalid_argument("all_subgroups: only supported for ell <= 3");

    const std::vector<Matrix2> ambient = all_gl2(m);
    SeenSets seen;
    std::vector<std::vector<std::uint64_t>> sets;
    std::vector<std::vector<Matrix2>> gens_of;

    std::vector<std::uint64_t> triv{identity_key(ell)};
    seen.insert(triv);
    sets.push_back(triv);
    gens_of.push_back({});

    for (std::size_t qi = 0; qi < sets.size(); ++qi) {
        std::vector<Matrix2> gens = gens_of[qi];
        const std::vector<std::uint64_t> cur = sets[qi];
        gens.push_back(Matrix2::identity(m));
        for (const auto& x : ambient) {
            if (std::binary_search(cur.begin(), cur.end(), x.key())) continue;
            gens.back() = x;
            std::vector<std::uint64_t> keys = closure_keys(ell, to_raw(gens), gl2_order(ell));
            if (seen.insert(keys)) {
                sets.push_back(keys);
                gens_of.push_back(gens);
            }
        }
    }

    std::vector<Subgroup> out;
    out.reserve(sets.size());
    for (const auto& keys : sets) {
        std::vector<Matrix2> elems;
        elems.reserve(keys.size());
        for (std::uint64_t k : keys) elems.push_back(from_key(k, ell));
        out.push_back(Subgroup::from_elements(m, std::move(elems)));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.element_keys() < b.element_keys();
    });
    return out;
}

std::uint64_t total_subgroup_count(PrimeModulus m) {
    return all_subgroups(m).size();
}

}  // namespace gl2den
