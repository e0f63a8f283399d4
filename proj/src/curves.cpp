#include "gl2den/curves.hpp"

#include "gl2den/field.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gl2den {

namespace {

std::uint64_t mod_i64(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

}  // namespace

CurveQ CurveQ::make(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                    std::int64_t a6) {
    BigInt b2 = BigInt(a1) * a1 + 4 * BigInt(a2);
    BigInt b4 = 2 * BigInt(a4) + BigInt(a1) * a3;
    BigInt b6 = BigInt(a3) * a3 + 4 * BigInt(a6);
    BigInt b8 = BigInt(a1) * a1 * a6 + 4 * BigInt(a2) * a6 - BigInt(a1) * a3 * a4 +
                BigInt(a2) * a3 * a3 - BigInt(a4) * a4;
    BigInt disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw std::invalid_argument("CurveQ: singular curve (zero discriminant)");
    return CurveQ{a1, a2, a3, a4, a6, disc};
}

CurveQ CurveQ::parse(const std::string& text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text) {
        if (c == '[' || c == ']' || c == ',') {
            cleaned.push_back(' ');
        } else {
            cleaned.push_back(c);
        }
    }
    std::istringstream is(cleaned);
    std::int64_t a1, a2, a3, a4, a6;
    if (!(is >> a1 >> a2 >> a3 >> a4 >> a6)) {
        throw std::invalid_argument("CurveQ::parse: expected five integers in \"" + text + "\"");
    }
    std::string extra;
    if (is >> extra) throw std::invalid_argument("CurveQ::parse: trailing input in \"" + text + "\"");
    return make(a1, a2, a3, a4, a6);
}

bool CurveQ::good_reduction(std::uint64_t p) const {
    return discriminant % BigInt(p) != 0;
}

std::string CurveQ::str() const {
    std::ostringstream os;
    os << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
    return os.str();
}

std::uint64_t count_points_naive(const CurveQ& e, std::uint64_t p) {
    if (p > 10000) throw std::invalid_argument("count_points_naive: p too large for enumeration");
    std::uint64_t a1 = mod_i64(e.a1, p), a2 = mod_i64(e.a2, p), a3 = mod_i64(e.a3, p),
                  a4 = mod_i64(e.a4, p), a6 = mod_i64(e.a6, p);
    std::uint64_t count = 1;  // point at infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t rhs = ((x * x % p) * x % p + a2 * (x * x % p) % p + a4 * x % p + a6) % p;
        for (std::uint64_t y = 0; y < p; ++y) {
            std::uint64_t lhs = (y * y % p + a1 * (x % p) % p * y % p + a3 * y % p) % p;
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

std::uint64_t count_points(const CurveQ& e, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("count_points: p must be prime");
    if (!e.good_reduction(p)) {
        throw std::invalid_argument("count_points: bad reduction at p = " + std::to_string(p));
    }
    if (p <= 3) return count_points_naive(e, p);

    // Short form y^2 = x^3 + A x + B over F_p (valid in characteristic > 3):
    // A = -27 c4, B = -54 c6.
    std::uint64_t b2 = (mod_i64(e.a1, p) * mod_i64(e.a1, p) + 4 * mod_i64(e.a2, p)) % p;
    std::uint64_t b4 = (2 * mod_i64(e.a4, p) + mod_i64(e.a1, p) * mod_i64(e.a3, p)) % p;
    std::uint64_t b6 = (mod_i64(e.a3, p) * mod_i64(e.a3, p) + 4 * mod_i64(e.a6, p)) % p;
    std::uint64_t c4 = (b2 * b2 % p + 24 * (p - 1) % p * b4) % p;       // b2^2 - 24 b4
    std::uint64_t c6 = ((p - 1) * (b2 * b2 % p) % p * b2 % p +          // -b2^3
                        36 * b2 % p * b4 % p +                          // + 36 b2 b4
                        216 * (p - 1) % p * b6) % p;                    // - 216 b6
    std::uint64_t A = 27 * (p - 1) % p * c4 % p;
    std::uint64_t B = 54 * (p - 1) % p * c6 % p;

    // chi table: chi[t] = legendre symbol of t mod p
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t t = 1; t <= (p - 1) / 2; ++t) chi[t * t % p] = 1;

    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t fx = ((x * x % p) * x + A * x + B) % p;
        sum += chi[fx];
    }
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

std::int64_t trace_of_frobenius(const CurveQ& e, std::uint64_t p) {
    return static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(count_points(e, p));
}

LocalCondition local_conditions(const CurveQ& e, std::uint64_t p, std::uint32_t ell) {
    if (!is_prime(ell)) throw std::invalid_argument("local_conditions: ell must be prime");
    if (p == ell) throw std::invalid_argument("local_conditions: requires p != ell");
    std::uint64_t n = count_points(e, p);  // rejects bad reduction
    std::int64_t ap = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(n);

    LocalCondition out{};
    out.in_S1 = n % ell == 0;
    // Frobenius has characteristic polynomial x^2 - a_p x + p; an eigenvalue
    // mod ell exists iff its discriminant is not a non-residue.
    if (ell == 2) {
        std::uint64_t tr = mod_i64(ap, 2), det = p % 2;
        bool root = false;
        for (std::uint64_t x = 0; x < 2; ++x) {
            if ((x * x + det) % 2 == tr * x % 2) root = true;
        }
        out.in_S = root;
    } else {
        std::int64_t disc = ap * ap - 4 * static_cast<std::int64_t>(p);
        out.in_S = legendre_symbol(disc, ell) != -1;
    }
    return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        primes.push_back(n);
        for (std::uint64_t k = std::uint64_t(n) * n; k <= limit; k += n) composite[k] = true;
    }
    return primes;
}

CurveScan scan(const CurveQ& e, std::uint32_t ell, std::uint64_t limit, const ScanConfig& cfg) {
    if (!is_prime(ell)) throw std::invalid_argument("scan: ell must be prime");
    if (limit < 10) throw std::invalid_argument("scan: limit must be at least 10");
    if (limit > kScanLimitMax) {
        throw std::invalid_argument("scan: limit exceeds the maximum " +
                                    std::to_string(kScanLimitMax));
    }

    std::vector<std::uint32_t> ps = primes_up_to(static_cast<std::uint32_t>(limit));
    std::vector<std::uint64_t> todo;
    for (std::uint32_t p : ps) {
        if (p != ell && e.good_reduction(p)) todo.push_back(p);
    }

    std::vector<PrimeRecord> records(todo.size());
    std::vector<std::string> errors;
    std::mutex errors_mutex;
    auto work = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) {
                std::uint64_t p = todo[i];
                std::uint64_t n = count_points(e, p);
                std::int64_t ap = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(n);
                LocalCondition lc = local_conditions(e, p, ell);
                if (ap * ap > 4 * static_cast<std::int64_t>(p)) {
                    throw std::logic_error("scan: Hasse bound violated at p = " + std::to_string(p));
                }
                if (lc.in_S1 && !lc.in_S) {
                    throw std::logic_error("scan: torsion without isogeny at p = " +
                                           std::to_string(p));
                }
                records[i] = PrimeRecord{p, ap, lc.in_S1, lc.in_S};
            }
        } catch (const std::exception& ex) {
            std::lock_guard<std::mutex> lock(errors_mutex);
            errors.emplace_back(ex.what());
        }
    };

    unsigned threads = std::max(1u, cfg.threads);
    if (threads <= 1 || todo.size() < 32) {
        work(0, todo.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t per = (todo.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = std::min(todo.size(), t * per);
            std::size_t hi = std::min(todo.size(), lo + per);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    if (!errors.empty()) throw std::logic_error(errors.front());

    CurveScan out{e, ell, limit, 0, 0, 0, {}};
    out.records = std::move(records);
    for (const auto& r : out.records) {
        ++out.good_primes;
        if (r.in_S1) ++out.hits_torsion;
        if (r.in_S) ++out.hits_isogeny;
    }
    return out;
}

}  // namespace gl2den
