#pragma once

/**
 * @file coxeter.hpp
 * @brief The dihedral Coxeter complex I2(m) and its planar model apartment.
 *
 * Directions, walls and chambers are integers mod 2m (resp. m). Direction k
 * is the unit vector at angle k*pi/m, chamber c is the closed arc
 * [c*pi/m, (c+1)*pi/m], wall j is the line through directions j and j+m.
 * Chamber 0 is the model Weyl chamber; its vertices u0 = e(0), u1 = e(1) are
 * the coordinate basis of the apartment E.
 */

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "gti/exactreal.hpp"

namespace gti {

struct DirectionIndex {
    int k = 0;
    auto operator<=>(const DirectionIndex&) const = default;
};

struct WallIndex {
    int j = 0;
    auto operator<=>(const WallIndex&) const = default;
};

struct ChamberIndex {
    int c = 0;
    auto operator<=>(const ChamberIndex&) const = default;
};

/// rotation_j: k -> k + 2j, reflection_j: k -> 2j - k (indices mod 2m).
/// The defaulted ordering (rotations first, then by j) is the tie-break order.
struct WeylElement {
    enum class Kind { rotation = 0, reflection = 1 };
    Kind kind = Kind::rotation;
    int j = 0;
    auto operator<=>(const WeylElement&) const = default;

    bool is_identity() const { return kind == Kind::rotation && j == 0; }
    std::string to_string() const {
        return (kind == Kind::rotation ? "rot_" : "ref_") + std::to_string(j);
    }
};

enum class Side { minus = -1, on = 0, plus = 1 };

/// The dihedral group I2(m) acting on directions, chambers and walls.
class Dihedral {
public:
    explicit Dihedral(int m) : m_(m) {
        if (m < 3) throw domain_error("dihedral order m must be >= 3, got " + std::to_string(m));
    }

    int m() const { return m_; }
    int order() const { return 2 * m_; }

    DirectionIndex direction(long k) const { return {static_cast<int>(mod(k, 2L * m_))}; }
    ChamberIndex chamber(long c) const { return {static_cast<int>(mod(c, 2L * m_))}; }
    WallIndex wall(long j) const { return {static_cast<int>(mod(j, m_))}; }

    WeylElement identity() const { return {}; }
    WeylElement rotation(long j) const { return {WeylElement::Kind::rotation, static_cast<int>(mod(j, m_))}; }
    WeylElement reflection(long j) const { return {WeylElement::Kind::reflection, static_cast<int>(mod(j, m_))}; }

    /// All 2m elements in tie-break order.
    std::vector<WeylElement> elements() const {
        std::vector<WeylElement> out;
        for (int j = 0; j < m_; ++j) out.push_back(rotation(j));
        for (int j = 0; j < m_; ++j) out.push_back(reflection(j));
        return out;
    }

    DirectionIndex act(const WeylElement& g, DirectionIndex d) const {
        if (g.kind == WeylElement::Kind::rotation) return direction(d.k + 2L * g.j);
        return direction(2L * g.j - d.k);
    }

    ChamberIndex act(const WeylElement& g, ChamberIndex ch) const {
        if (g.kind == WeylElement::Kind::rotation) return chamber(ch.c + 2L * g.j);
        // the arc [c, c+1] is reflected onto [2j-c-1, 2j-c]
        return chamber(2L * g.j - ch.c - 1);
    }

    /// g o h
    WeylElement compose(const WeylElement& g, const WeylElement& h) const {
        using K = WeylElement::Kind;
        if (g.kind == K::rotation && h.kind == K::rotation) return rotation(g.j + h.j);
        if (g.kind == K::rotation) return reflection(g.j + h.j);
        if (h.kind == K::rotation) return reflection(g.j - h.j);
        return rotation(g.j - h.j);
    }

    WeylElement inverse(const WeylElement& g) const {
        return g.kind == WeylElement::Kind::rotation ? rotation(-g.j) : g;
    }

    int orbit_type(DirectionIndex d) const { return d.k % 2; }

    std::vector<DirectionIndex> orbit(DirectionIndex d) const {
        std::vector<DirectionIndex> out;
        for (int k = orbit_type(d); k < 2 * m_; k += 2) out.push_back({k});
        return out;
    }

    DirectionIndex antipode(DirectionIndex d) const { return direction(d.k + m_); }

    /// The unique g with g(chamber 0) = chamber c.
    WeylElement chamber_element(ChamberIndex ch) const {
        if (ch.c % 2 == 0) return rotation(ch.c / 2);
        return reflection((ch.c + 1) / 2);
    }

    /// Chamber g(chamber 0).
    ChamberIndex chamber_of(const WeylElement& g) const { return act(g, ChamberIndex{0}); }

    std::pair<DirectionIndex, DirectionIndex> chamber_vertices(ChamberIndex ch) const {
        return {direction(ch.c), direction(ch.c + 1L)};
    }

    bool chamber_has_vertex(ChamberIndex ch, DirectionIndex d) const {
        auto [a, b] = chamber_vertices(ch);
        return a == d || b == d;
    }

    /// Sign of sin((k - j) pi/m), from integers only.
    Side side_of_wall(DirectionIndex d, WallIndex w) const {
        long r = mod(static_cast<long>(d.k) - w.j, 2L * m_);
        if (r == 0 || r == m_) return Side::on;
        return r < m_ ? Side::plus : Side::minus;
    }

    /// Strict side of the open chamber arc; never Side::on.
    Side chamber_side(ChamberIndex ch, WallIndex w) const {
        auto [a, b] = chamber_vertices(ch);
        Side s = side_of_wall(a, w);
        return s != Side::on ? s : side_of_wall(b, w);
    }

    /// Reflections whose axis is wall j are reflection_j.
    WeylElement wall_reflection(WallIndex w) const { return reflection(w.j); }

private:
    static long mod(long a, long n) {
        long r = a % n;
        return r < 0 ? r + n : r;
    }

    int m_;
};

/// A vector of E in the extreme-ray basis (u0, u1) of the model chamber.
struct Vec2 {
    CycloReal p, q;

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.p + b.p, a.q + b.q}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.p - b.p, a.q - b.q}; }
    friend Vec2 operator-(const Vec2& a) { return {-a.p, -a.q}; }
    friend Vec2 operator*(const CycloReal& s, const Vec2& a) { return {s * a.p, s * a.q}; }
    friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.p, s * a.q}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.p == b.p && a.q == b.q; }

    bool is_zero() const { return p.is_zero() && q.is_zero(); }
};

/// Coordinate determinant; its sign is the orientation of (a, b) in E.
inline CycloReal cross(const Vec2& a, const Vec2& b) { return a.p * b.q - a.q * b.p; }

/// 2x2 matrix over the field acting on (u0, u1) coordinates (columns = images).
struct Mat2 {
    CycloReal a, b, c, d;  // [[a, b], [c, d]]
    Vec2 operator()(const Vec2& v) const { return {a * v.p + b * v.q, c * v.p + d * v.q}; }
};

/**
 * The model apartment E = R^2 with the W-action in extreme-ray coordinates.
 * Gram matrix of (u0, u1) is [[1, cos(pi/m)], [cos(pi/m), 1]].
 */
class ApartmentModel {
public:
    explicit ApartmentModel(int m) : group_(m), ctx_(make_field(m)) {
        const int n = 2 * m;
        CycloReal g = CycloReal::generator(ctx_);
        unit_.reserve(static_cast<std::size_t>(n));
        unit_.push_back({CycloReal(ctx_, 1L), CycloReal(ctx_)});
        unit_.push_back({CycloReal(ctx_), CycloReal(ctx_, 1L)});
        // e(k+1) = 2cos(pi/m) e(k) - e(k-1)
        for (int k = 1; k + 1 < n; ++k) unit_.push_back(g * unit_[k] - unit_[k - 1]);
        cos1_ = CycloReal::cos_pi(ctx_, 1);
        for (const auto& w : group_.elements()) {
            const Vec2& x = unit(group_.act(w, DirectionIndex{0}));
            const Vec2& y = unit(group_.act(w, DirectionIndex{1}));
            matrices_.push_back({x.p, y.p, x.q, y.q});
        }
    }

    int m() const { return group_.m(); }
    const Dihedral& group() const { return group_; }
    const FieldPtr& field() const { return ctx_; }

    const Vec2& unit(DirectionIndex d) const { return unit_[static_cast<std::size_t>(group_.direction(d.k).k)]; }
    Vec2 unit_vector(DirectionIndex d) const { return unit(d); }

    Vec2 zero() const { return {CycloReal(ctx_), CycloReal(ctx_)}; }
    Vec2 vec(const Rational& p, const Rational& q) const { return {CycloReal(ctx_, p), CycloReal(ctx_, q)}; }

    /// <x, y> through the Gram matrix.
    CycloReal inner(const Vec2& x, const Vec2& y) const {
        return x.p * y.p + x.q * y.q + cos1_ * (x.p * y.q + x.q * y.p);
    }

    const Mat2& matrix(const WeylElement& g) const {
        std::size_t idx = static_cast<std::size_t>(g.j) +
                          (g.kind == WeylElement::Kind::reflection ? static_cast<std::size_t>(m()) : 0);
        return matrices_[idx];
    }

    Vec2 apply(const WeylElement& g, const Vec2& v) const { return matrix(g)(v); }

    /// True iff v lies in the closed cone over chamber c.
    bool in_chamber_cone(const Vec2& v, ChamberIndex ch) const {
        Vec2 w = apply(group_.inverse(group_.chamber_element(ch)), v);
        return w.p.sign() != Sign::negative && w.q.sign() != Sign::negative;
    }

    /// True iff v lies in the open cone over chamber c.
    bool in_open_chamber_cone(const Vec2& v, ChamberIndex ch) const {
        Vec2 w = apply(group_.inverse(group_.chamber_element(ch)), v);
        return w.p.sign() == Sign::positive && w.q.sign() == Sign::positive;
    }

private:
    Dihedral group_;
    FieldPtr ctx_;
    std::vector<Vec2> unit_;
    std::vector<Mat2> matrices_;
    CycloReal cos1_;
};

}  // namespace gti
