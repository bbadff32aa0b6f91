#pragma once

/**
 * @file polygonlab.hpp
 * @brief Polygons and billiard paths in the model apartment, with the affine
 *        group W x| (all translations).
 *
 * Conventions. Opening lays side i down after applying acc_i = t_1 o ... o t_i,
 * so x'_i = x'_{i-1} + acc_i(v_i) and the returned holonomy is t_1 o ... o t_n.
 * Straightening a billiard path (apex x0, points y1..yk) uses one isometry
 * mu_i fixing y_i per point and mu_0 fixing the apex; breaks are y2..y_{k-1}.
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gti/functionals.hpp"

namespace gti {

using ApartmentPoint = Vec2;

struct ApartmentPolygon {
    int m = 3;
    std::vector<ApartmentPoint> vertices;

    std::size_t size() const { return vertices.size(); }
    Vec2 side(std::size_t i) const { return vertices[(i + 1) % vertices.size()] - vertices[i]; }
    bool has_degenerate_side() const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (side(i).is_zero()) return true;
        return false;
    }
};

/// Billiard polygon: apex x0 followed by y1..yk, closed back to x0.
/// transitions holds the linear parts at the true vertices (apex, y1, yk).
struct BilliardPath {
    int m = 3;
    ApartmentPoint apex;
    std::vector<ApartmentPoint> points;
    std::optional<std::array<WeylElement, 3>> transitions;
};

struct AffineIsometry {
    WeylElement linear;
    Vec2 translation;
};

class non_billiard_error : public domain_error {
public:
    non_billiard_error(int index, const std::string& what) : domain_error(what), index_(index) {}
    /// Index into BilliardPath::points of the offending break.
    int index() const { return index_; }

private:
    int index_;
};

inline Vec2 apply(const ApartmentModel& E, const AffineIsometry& f, const Vec2& x) {
    return E.apply(f.linear, x) + f.translation;
}

/// f o g
inline AffineIsometry compose(const ApartmentModel& E, const AffineIsometry& f, const AffineIsometry& g) {
    return {E.group().compose(f.linear, g.linear), E.apply(f.linear, g.translation) + f.translation};
}

inline AffineIsometry inverse(const ApartmentModel& E, const AffineIsometry& f) {
    WeylElement gi = E.group().inverse(f.linear);
    return {gi, -E.apply(gi, f.translation)};
}

inline AffineIsometry identity_isometry(const ApartmentModel& E) { return {E.group().identity(), E.zero()}; }

/// The isometry with linear part g fixing the point p.
inline AffineIsometry fixing(const ApartmentModel& E, const WeylElement& g, const Vec2& p) {
    return {g, p - E.apply(g, p)};
}

/// A closed chamber whose cone contains v (v != 0).
inline ChamberIndex chamber_containing(const ApartmentModel& E, const Vec2& v) {
    const int m = E.m();
    double c1 = std::cos(std::numbers::pi / m), s1 = std::sin(std::numbers::pi / m);
    double p = v.p.to_double(), q = v.q.to_double();
    double theta = std::atan2(q * s1, p + q * c1);
    if (theta < 0) theta += 2 * std::numbers::pi;
    long guess = static_cast<long>(std::floor(theta * m / std::numbers::pi));
    for (long d : {0L, -1L, 1L}) {
        ChamberIndex ch = E.group().chamber(guess + d);
        if (E.in_chamber_cone(v, ch)) return ch;
    }
    for (int c = 0; c < 2 * m; ++c)
        if (E.in_chamber_cone(v, ChamberIndex{c})) return ChamberIndex{c};
    throw std::logic_error("vector lies in no chamber cone");
}

/// Delta-valued length of the vector v.
inline DeltaVector delta_of(const ApartmentModel& E, const Vec2& v) {
    if (v.is_zero()) return {CycloReal(E.field()), CycloReal(E.field())};
    ChamberIndex ch = chamber_containing(E, v);
    Vec2 w = E.apply(E.group().inverse(E.group().chamber_element(ch)), v);
    return {w.p, w.q};
}

inline DeltaVector sigma_side(const ApartmentModel& E, const ApartmentPoint& x, const ApartmentPoint& y) {
    return delta_of(E, y - x);
}

inline std::vector<DeltaVector> sigma(const ApartmentModel& E, const ApartmentPolygon& poly) {
    std::vector<DeltaVector> out;
    for (std::size_t i = 0; i < poly.size(); ++i) out.push_back(delta_of(E, poly.side(i)));
    return out;
}

/// Reversal involution: Delta-representative of -s.
inline DeltaVector iota(const ApartmentModel& E, const DeltaVector& s) { return delta_of(E, -s.as_vec()); }

struct OpenedPath {
    std::vector<ApartmentPoint> points;  // x'_0 .. x'_n
    WeylElement holonomy;
};

/// Opening with explicit side vectors.
inline OpenedPath open_vectors(const ApartmentModel& E, const std::vector<Vec2>& sides,
                               const std::vector<WeylElement>& transitions, const ApartmentPoint& start) {
    if (sides.size() != transitions.size()) throw usage_error("open_polygon needs one transition per side");
    OpenedPath out;
    out.points.push_back(start);
    WeylElement acc = E.group().identity();
    for (std::size_t i = 0; i < sides.size(); ++i) {
        acc = E.group().compose(acc, transitions[i]);
        out.points.push_back(out.points.back() + E.apply(acc, sides[i]));
    }
    out.holonomy = acc;
    return out;
}

/// Opening from Delta-lengths placed in chambers: side i is omega_{c_i}(s_i).
inline OpenedPath open_polygon(const ApartmentModel& E, const std::vector<std::pair<DeltaVector, ChamberIndex>>& sides,
                               const std::vector<WeylElement>& transitions) {
    std::vector<Vec2> vecs;
    for (const auto& [s, ch] : sides) {
        if (!s.in_chamber()) throw domain_error("side length outside the Weyl chamber");
        vecs.push_back(E.apply(E.group().chamber_element(ch), s.as_vec()));
    }
    return open_vectors(E, vecs, transitions, E.zero());
}

/// Least g (rotations first) with g(out) a positive multiple of in, if any.
inline std::optional<WeylElement> continuation(const ApartmentModel& E, const Vec2& in, const Vec2& out) {
    if (in.is_zero() || out.is_zero()) return std::nullopt;
    for (const auto& g : E.group().elements()) {
        Vec2 w = E.apply(g, out);
        if (!cross(w, in).is_zero()) continue;
        if (E.inner(w, in).sign() == Sign::positive) return g;
    }
    return std::nullopt;
}

struct Straightened {
    ApartmentPoint endpoint;          // mu_1 o ... o mu_k o mu_0 (y1)
    std::vector<AffineIsometry> mus;  // mu_0, mu_1, ..., mu_k
    WeylElement holonomy;             // linear part of mu_0^-1 o mu_k^-1 o ... o mu_1^-1
};

inline Straightened straighten(const ApartmentModel& E, const BilliardPath& path) {
    const std::size_t k = path.points.size();
    if (k < 2) throw usage_error("billiard path needs at least two points after the apex");
    const auto& W = E.group();
    std::array<WeylElement, 3> tv{W.identity(), W.identity(), W.identity()};
    if (path.transitions) tv = *path.transitions;
    Straightened out;
    out.mus.push_back(fixing(E, tv[0], path.apex));
    for (std::size_t i = 0; i < k; ++i) {
        WeylElement g = W.identity();
        if (i == 0) {
            g = tv[1];
        } else if (i + 1 == k) {
            g = tv[2];
        } else {
            Vec2 in = path.points[i] - path.points[i - 1];
            Vec2 outv = path.points[i + 1] - path.points[i];
            auto c = continuation(E, in, outv);
            if (!c)
                throw non_billiard_error(static_cast<int>(i), "break " + std::to_string(i) +
                                                                  " is not a billiard reflection point");
            g = *c;
        }
        out.mus.push_back(fixing(E, g, path.points[i]));
    }
    AffineIsometry D = identity_isometry(E);
    for (std::size_t i = 1; i <= k; ++i) D = compose(E, D, out.mus[i]);
    D = compose(E, D, out.mus[0]);
    out.endpoint = apply(E, D, path.points[0]);
    AffineIsometry H = inverse(E, out.mus[0]);
    for (std::size_t i = k; i >= 1; --i) H = compose(E, H, inverse(E, out.mus[i]));
    out.holonomy = H.linear;
    return out;
}

/// Opening data matching a straightened billiard path: sides y2-y1, ...,
/// x0-yk, y1-x0 with transitions lin(mu_1), ..., lin(mu_k), lin(mu_0).
inline std::pair<std::vector<Vec2>, std::vector<WeylElement>> straightening_opening_data(const BilliardPath& path,
                                                                                         const Straightened& s) {
    std::vector<Vec2> sides;
    std::vector<WeylElement> trans;
    const std::size_t k = path.points.size();
    for (std::size_t i = 0; i + 1 < k; ++i) sides.push_back(path.points[i + 1] - path.points[i]);
    sides.push_back(path.apex - path.points[k - 1]);
    sides.push_back(path.points[0] - path.apex);
    for (std::size_t i = 1; i <= k; ++i) trans.push_back(s.mus[i].linear);
    trans.push_back(s.mus[0].linear);
    return {sides, trans};
}

struct FoldedPiece {
    Vec2 from, to;  // endpoints inside the model chamber cone
    DeltaVector sigma;
    CycloReal fraction;  // share of the original segment
};

/// Folds each segment of a path onto the model chamber cone, cutting at wall crossings.
inline std::vector<std::vector<FoldedPiece>> fold_onto_chamber(const ApartmentModel& E,
                                                               const std::vector<ApartmentPoint>& path) {
    const auto& W = E.group();
    const FieldPtr& ctx = E.field();
    std::vector<std::vector<FoldedPiece>> out;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const Vec2 &P = path[s], D = path[s + 1] - path[s];
        std::vector<CycloReal> cuts{CycloReal(ctx), CycloReal(ctx, 1L)};
        if (!D.is_zero()) {
            for (int j = 0; j < E.m(); ++j) {
                const Vec2& ej = E.unit(DirectionIndex{j});
                CycloReal den = cross(D, ej);
                if (den.is_zero()) continue;
                CycloReal t = -(cross(P, ej) / den);
                if (t.sign() == Sign::positive && (t - CycloReal(ctx, 1L)).sign() == Sign::negative) cuts.push_back(t);
            }
        }
        std::sort(cuts.begin(), cuts.end(), [](const CycloReal& a, const CycloReal& b) { return a < b; });
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<FoldedPiece> pieces;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Vec2 a = P + cuts[i] * D, b = P + cuts[i + 1] * D;
            Vec2 mid = Rational(1, 2) * (a + b);
            ChamberIndex ch = mid.is_zero() ? ChamberIndex{0} : chamber_containing(E, mid);
            WeylElement back = W.inverse(W.chamber_element(ch));
            FoldedPiece fp{E.apply(back, a), E.apply(back, b), {}, cuts[i + 1] - cuts[i]};
            fp.sigma = delta_of(E, fp.to - fp.from);
            pieces.push_back(std::move(fp));
        }
        out.push_back(std::move(pieces));
    }
    return out;
}

struct FixedDirections {
    bool all = false;
    std::vector<DirectionIndex> indices;
};

inline FixedDirections holonomy_fixes_vertex(const Dihedral& W, const WeylElement& g) {
    FixedDirections out;
    if (g.is_identity()) {
        out.all = true;
        for (int k = 0; k < W.order(); ++k) out.indices.push_back({k});
        return out;
    }
    for (int k = 0; k < W.order(); ++k)
        if (W.act(g, DirectionIndex{k}).k == k) out.indices.push_back({k});
    return out;
}

/// sum_i <x_{i+1} - x_i, e(eta)>; closed polygons wrap around.
inline CycloReal aligned_functional_value(const ApartmentModel& E, const std::vector<ApartmentPoint>& pts,
                                          DirectionIndex eta, bool closed = true) {
    CycloReal acc(E.field());
    if (pts.empty()) return acc;
    const Vec2& e = E.unit(eta);
    std::size_t n = closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i < n; ++i) acc += E.inner(pts[(i + 1) % pts.size()] - pts[i], e);
    return acc;
}

/// Index k with omega(k) = eta for the chamber element omega of v's chamber,
/// so that <v, e(eta)> = l_{e(k)}(delta_of(v)).
inline DirectionIndex aligned_index(const ApartmentModel& E, const Vec2& v, DirectionIndex eta) {
    const auto& W = E.group();
    ChamberIndex ch = v.is_zero() ? ChamberIndex{0} : chamber_containing(E, v);
    return W.act(W.inverse(W.chamber_element(ch)), eta);
}

}  // namespace gti
