#pragma once

/**
 * @file exactreal.hpp
 * @brief Exact arithmetic in the real cyclotomic field Q(cos(pi/m)).
 *
 * Elements are stored in the power basis of the algebraic integer
 * g = 2cos(pi/m), reduced modulo its minimal polynomial. Signs are decided
 * by exact zero test followed by rational interval evaluation on an
 * isolating interval of g that is refined until it excludes zero.
 */

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gti/errors.hpp"

namespace gti {

using Rational = mpq_class;

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(const Rational& q) {
    int s = sgn(q);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw usage_error("malformed rational: " + text);
    if (q.get_den() == 0) throw usage_error("zero denominator: " + text);
    q.canonicalize();
    return q;
}

namespace poly {

/// Dense polynomial over Q; entry i is the coefficient of x^i, no trailing zeros.
using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline RatPoly sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline RatPoly scale(const RatPoly& a, const Rational& s) {
    RatPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    trim(r);
    return r;
}

inline RatPoly derivative(const RatPoly& a) {
    RatPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    trim(r);
    return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw usage_error("polynomial division by zero");
    trim(a);
    RatPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline RatPoly monic(const RatPoly& a) {
    if (a.empty()) return a;
    return scale(a, Rational(1) / a.back());
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline Rational eval(const RatPoly& p, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

/// Number of distinct real roots of p in (lo, hi], via a Sturm sequence.
inline int sturm_count(const RatPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<RatPoly> seq{p, derivative(p)};
    while (!seq.back().empty()) {
        RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty()) break;
        seq.push_back(scale(r, Rational(-1)));
    }
    auto changes = [&](const Rational& x) {
        int count = 0, prev = 0;
        for (const auto& s : seq) {
            int v = sgn(eval(s, x));
            if (v == 0) continue;
            if (prev != 0 && v != prev) ++count;
            prev = v;
        }
        return count;
    };
    return changes(lo) - changes(hi);
}

/// Dickson polynomial D_k with D_k(2cos t) = 2cos(k t).
inline RatPoly dickson(int k) {
    RatPoly prev{Rational(2)}, cur{Rational(0), Rational(1)};
    if (k == 0) return prev;
    for (int i = 1; i < k; ++i) {
        RatPoly next = sub(mul(RatPoly{Rational(0), Rational(1)}, cur), prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Minimal polynomial of 2cos(pi/m) for m >= 1.
///
/// Every 2cos(k pi/m) with k odd is a root of D_m(x) + 2. Its squarefree part
/// keeps each such value once; dividing out the roots coming from the
/// coarser orders m' | m with m/m' odd leaves exactly the primitive ones.
inline RatPoly min_poly_2cos(int m) {
    RatPoly q = add(dickson(m), RatPoly{Rational(2)});
    RatPoly r = divmod(q, gcd(q, derivative(q))).first;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0 || (m / d) % 2 == 0) continue;
        RatPoly sub_factor = gcd(r, min_poly_2cos(d));
        r = divmod(r, sub_factor).first;
    }
    return monic(r);
}

}  // namespace poly

/**
 * Context for Q(cos(pi/m)): the minimal polynomial of g = 2cos(pi/m), the
 * reduction rules of the power basis, the cosine table cos(t pi/m) and a
 * ladder of nested isolating intervals for g used by the sign oracle.
 *
 * Immutable after construction; share it through make_field().
 */
class FieldContext {
public:
    /// Start precision (bits) of the sign oracle; performance only.
    static constexpr const char* kStartBitsEnv = "GTI_SIGN_START_BITS";

    explicit FieldContext(int m) : m_(m) {
        if (m < 3) throw domain_error("dihedral order m must be >= 3, got " + std::to_string(m));
        minpoly_ = poly::min_poly_2cos(m);
        degree_ = poly::degree(minpoly_);
        for (const auto& c : minpoly_)
            if (c.get_den() != 1) throw std::logic_error("minimal polynomial is not integral");
        build_cos_table();
        if (degree_ > 1) build_intervals();
    }

    int m() const { return m_; }
    int degree() const { return degree_; }
    const poly::RatPoly& minimal_polynomial() const { return minpoly_; }

    /// Power-basis coefficients of cos(t pi/m); t is reduced mod 2m.
    const std::vector<Rational>& cos_coeffs(long t) const {
        long r = t % (2L * m_);
        if (r < 0) r += 2L * m_;
        return cos_table_[static_cast<std::size_t>(r)];
    }

    /// Reduce an arbitrary polynomial in g into canonical power-basis form.
    std::vector<Rational> reduce(std::vector<Rational> c) const {
        const std::size_t d = static_cast<std::size_t>(degree_);
        for (std::size_t k = c.size(); k-- > d;) {
            if (sgn(c[k]) == 0) continue;
            Rational lead = c[k];
            // g^d = -(psi_0 + ... + psi_{d-1} g^{d-1})
            for (std::size_t i = 0; i < d; ++i) c[k - d + i] -= lead * minpoly_[i];
            c[k] = 0;
        }
        c.resize(d);
        return c;
    }

    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        std::vector<Rational> c(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (sgn(a[i]) == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (sgn(b[j]) == 0) continue;
                c[i + j] += a[i] * b[j];
            }
        }
        return reduce(std::move(c));
    }

    /// Inverse of a nonzero element by the extended Euclidean algorithm mod psi.
    std::vector<Rational> invert(const std::vector<Rational>& a) const {
        poly::RatPoly r0 = minpoly_, r1 = a;
        poly::trim(r1);
        if (r1.empty()) throw domain_error("division by zero in Q(cos(pi/m))");
        poly::RatPoly s0, s1{Rational(1)};
        while (poly::degree(r1) > 0) {
            auto [q, r] = poly::divmod(r0, r1);
            poly::RatPoly s = poly::sub(s0, poly::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r1 is a nonzero constant because psi is irreducible
        poly::RatPoly inv = poly::scale(s1, Rational(1) / r1[0]);
        inv.resize(static_cast<std::size_t>(degree_));
        return reduce(std::move(inv));
    }

    Sign sign(const std::vector<Rational>& c) const {
        bool all_zero = true, only_constant = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (sgn(c[i]) == 0) continue;
            all_zero = false;
            if (i > 0) only_constant = false;
        }
        if (all_zero) return Sign::zero;
        if (only_constant) return sign_of(c[0]);
        for (const auto& level : levels_) {
            Sign s = interval_sign(c, level);
            if (s != Sign::zero) return s;
        }
        // Past the precomputed ladder: keep bisecting a private copy.
        Rational lo = levels_.back().lo[1], hi = levels_.back().hi[1];
        int bits = levels_.back().bits;
        for (;;) {
            bisect(lo, hi, bits);
            bits *= 2;
            Level level = make_level(lo, hi, bits);
            Sign s = interval_sign(c, level);
            if (s != Sign::zero) return s;
        }
    }

    /// Float shadow; not used by any predicate.
    double approximate(const std::vector<Rational>& c) const {
        if (degree_ == 1) return c[0].get_d();
        const Level& level = levels_.back();
        Rational acc = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (sgn(c[i]) == 0) continue;
            Rational mid = (level.lo[i] + level.hi[i]) / 2;
            acc += c[i] * mid;
        }
        return acc.get_d();
    }

    /// Isolating interval for g at the coarsest precomputed level.
    std::pair<Rational, Rational> generator_interval() const {
        if (degree_ == 1) return {Rational(1), Rational(1)};
        return {levels_.front().lo[1], levels_.front().hi[1]};
    }

private:
    struct Level {
        int bits = 0;
        std::vector<Rational> lo, hi;  // interval of g^i for i < degree
    };

    void build_cos_table() {
        const std::size_t d = static_cast<std::size_t>(degree_);
        const std::size_t period = 2 * static_cast<std::size_t>(m_);
        cos_table_.assign(period, std::vector<Rational>(d));
        // c_0 = 1, c_1 = g/2, c_{t+1} = g c_t - c_{t-1}
        std::vector<Rational> g(d > 1 ? d : 1);
        if (d > 1) g[1] = 1; else g[0] = minpoly_.size() == 2 ? Rational(-minpoly_[0]) : Rational(0);
        cos_table_[0][0] = 1;
        std::vector<Rational> half_g(g);
        for (auto& x : half_g) x /= 2;
        cos_table_[1] = half_g;
        for (std::size_t t = 1; t + 1 < period; ++t) {
            std::vector<Rational> next = multiply(g, cos_table_[t]);
            for (std::size_t i = 0; i < d; ++i) next[i] -= cos_table_[t - 1][i];
            cos_table_[t + 1] = std::move(next);
        }
    }

    void bisect(Rational& lo, Rational& hi, int steps) const {
        const int lo_sign = sgn(poly::eval(minpoly_, lo));
        for (int i = 0; i < steps; ++i) {
            Rational mid = (lo + hi) / 2;
            int s = sgn(poly::eval(minpoly_, mid));
            if (s == 0) throw std::logic_error("rational root of an irreducible minimal polynomial");
            if (s == lo_sign) lo = mid; else hi = mid;
        }
    }

    Level make_level(const Rational& lo, const Rational& hi, int bits) const {
        Level level;
        level.bits = bits;
        level.lo.assign(static_cast<std::size_t>(degree_), Rational(1));
        level.hi.assign(static_cast<std::size_t>(degree_), Rational(1));
        // g > 0 for m >= 3, so powers are monotone on [lo, hi]
        for (std::size_t i = 1; i < level.lo.size(); ++i) {
            level.lo[i] = level.lo[i - 1] * lo;
            level.hi[i] = level.hi[i - 1] * hi;
        }
        return level;
    }

    void build_intervals() {
        const double g0 = 2.0 * std::cos(std::numbers::pi / m_);
        const Rational eps = Rational(1) / Rational(1L << 30);
        Rational lo = Rational(g0) - eps, hi = Rational(g0) + eps;
        if (sgn(poly::eval(minpoly_, lo)) == 0 || sgn(poly::eval(minpoly_, hi)) == 0 ||
            poly::sturm_count(minpoly_, lo, hi) != 1 ||
            sgn(poly::eval(minpoly_, lo)) == sgn(poly::eval(minpoly_, hi)))
            throw std::logic_error("failed to isolate 2cos(pi/m)");
        int start = 64;
        if (const char* env = std::getenv(kStartBitsEnv)) {
            int v = std::atoi(env);
            if (v >= 32 && v <= 4096) start = v;
        }
        // width is 2^-29 now
        bisect(lo, hi, start - 29);
        int bits = start;
        levels_.push_back(make_level(lo, hi, bits));
        while (bits < 512) {
            bisect(lo, hi, bits);
            bits *= 2;
            levels_.push_back(make_level(lo, hi, bits));
        }
    }

    static Sign interval_sign(const std::vector<Rational>& c, const Level& level) {
        Rational lo = 0, hi = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            int s = sgn(c[i]);
            if (s == 0) continue;
            if (s > 0) {
                lo += c[i] * level.lo[i];
                hi += c[i] * level.hi[i];
            } else {
                lo += c[i] * level.hi[i];
                hi += c[i] * level.lo[i];
            }
        }
        if (sgn(lo) > 0) return Sign::positive;
        if (sgn(hi) < 0) return Sign::negative;
        return Sign::zero;  // undecided at this level
    }

    int m_;
    int degree_ = 0;
    poly::RatPoly minpoly_;
    std::vector<std::vector<Rational>> cos_table_;
    std::vector<Level> levels_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// Shared, cached context for Q(cos(pi/m)).
inline FieldPtr make_field(int m) {
    static std::mutex mutex;
    static std::map<int, FieldPtr> cache;
    if (m < 3) throw domain_error("dihedral order m must be >= 3, got " + std::to_string(m));
    std::lock_guard lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const FieldContext>(m);
    cache.emplace(m, ctx);
    return ctx;
}

/// An exact element of Q(cos(pi/m)).
class CycloReal {
public:
    CycloReal() = default;
    explicit CycloReal(FieldPtr ctx) : ctx_(std::move(ctx)), c_(static_cast<std::size_t>(ctx_->degree())) {}
    CycloReal(FieldPtr ctx, const Rational& q) : CycloReal(std::move(ctx)) {
        c_[0] = q;
        c_[0].canonicalize();
    }
    CycloReal(FieldPtr ctx, long q) : CycloReal(std::move(ctx)) { c_[0] = q; }

    /// Element with the given power-basis coefficients (reduced if longer).
    static CycloReal from_coeffs(FieldPtr ctx, std::vector<Rational> coeffs) {
        CycloReal x(ctx);
        if (coeffs.empty()) return x;
        for (auto& c : coeffs) c.canonicalize();
        x.c_ = ctx->reduce(std::move(coeffs));
        return x;
    }

    /// g = 2cos(pi/m).
    static CycloReal generator(FieldPtr ctx) {
        std::vector<Rational> c{Rational(0), Rational(1)};
        return from_coeffs(std::move(ctx), std::move(c));
    }

    /// cos(t pi/m).
    static CycloReal cos_pi(FieldPtr ctx, long t) {
        CycloReal x(ctx);
        x.c_ = ctx->cos_coeffs(t);
        return x;
    }

    const FieldPtr& context() const { return ctx_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool valid() const { return static_cast<bool>(ctx_); }

    bool is_zero() const {
        for (const auto& q : c_)
            if (sgn(q) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }

    Sign sign() const { return ctx_->sign(c_); }
    double to_double() const { return ctx_->approximate(c_); }

    CycloReal& operator+=(const CycloReal& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycloReal& operator-=(const CycloReal& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CycloReal& operator*=(const CycloReal& o) {
        check(o);
        if (c_.size() == 1) {
            c_[0] *= o.c_[0];
        } else {
            c_ = ctx_->multiply(c_, o.c_);
        }
        return *this;
    }
    CycloReal& operator*=(Rational q) {
        q.canonicalize();
        for (auto& x : c_) x *= q;
        return *this;
    }
    CycloReal& operator/=(const CycloReal& o) {
        check(o);
        if (o.is_zero()) throw domain_error("division by zero in Q(cos(pi/m))");
        if (o.is_rational()) return *this *= Rational(Rational(1) / o.c_[0]);
        c_ = ctx_->multiply(c_, ctx_->invert(o.c_));
        return *this;
    }

    CycloReal inverse() const {
        CycloReal one(ctx_, 1L);
        one /= *this;
        return one;
    }

    friend CycloReal operator+(CycloReal a, const CycloReal& b) { return a += b; }
    friend CycloReal operator-(CycloReal a, const CycloReal& b) { return a -= b; }
    friend CycloReal operator*(CycloReal a, const CycloReal& b) { return a *= b; }
    friend CycloReal operator*(CycloReal a, const Rational& q) { return a *= q; }
    friend CycloReal operator*(const Rational& q, CycloReal a) { return a *= q; }
    friend CycloReal operator/(CycloReal a, const CycloReal& b) { return a /= b; }
    friend CycloReal operator-(CycloReal a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend bool operator==(const CycloReal& a, const CycloReal& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend std::strong_ordering operator<=>(const CycloReal& a, const CycloReal& b) {
        Sign s = (a - b).sign();
        if (s == Sign::negative) return std::strong_ordering::less;
        if (s == Sign::positive) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "c0 + c1*g + ..." with g = 2cos(pi/m).
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].get_str();
            if (i == 1) out += "*g";
            if (i > 1) out += "*g^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloReal& x) { return os << x.to_string(); }

private:
    void check(const CycloReal& o) const {
        if (!ctx_ || !o.ctx_) throw usage_error("uninitialized field element");
        if (ctx_ != o.ctx_ && ctx_->m() != o.ctx_->m())
            throw usage_error("mixed field contexts: m=" + std::to_string(ctx_->m()) + " and m=" +
                              std::to_string(o.ctx_->m()));
    }

    FieldPtr ctx_;
    std::vector<Rational> c_;
};

}  // namespace gti
