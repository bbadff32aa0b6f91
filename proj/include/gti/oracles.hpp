#pragma once

/**
 * @file oracles.hpp
 * @brief Evidence generators: spectra of traceless 3x3 Hermitian pairs
 *        (m = 3 only), exact random apartment polygons, and closed polygons
 *        saturating a chosen functional.
 */

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "gti/polygonlab.hpp"

namespace gti {

using Spectrum = std::array<double, 3>;  // descending

/// Spectra of A, B and C = -(A + B).
struct SpectralTriple {
    Spectrum a, b, c;
};

using HermitianMatrix = Eigen::Matrix3cd;

inline Spectrum spectrum_of(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    return {ev(2), ev(1), ev(0)};
}

inline SpectralTriple spectral_triple(const HermitianMatrix& a, const HermitianMatrix& b) {
    HermitianMatrix c = -(a + b);
    return {spectrum_of(a), spectrum_of(b), spectrum_of(c)};
}

inline HermitianMatrix random_traceless_hermitian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    HermitianMatrix g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = {normal(rng), normal(rng)};
    HermitianMatrix h = (g + g.adjoint()) / 2.0;
    std::complex<double> tr = h.trace() / 3.0;
    for (int i = 0; i < 3; ++i) h(i, i) -= tr;
    return h;
}

inline std::vector<SpectralTriple> hermitian_sample(std::uint64_t seed, std::size_t count) {
    if (count < 1) throw usage_error("sample count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<SpectralTriple> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        HermitianMatrix a = random_traceless_hermitian(rng);
        HermitianMatrix b = random_traceless_hermitian(rng);
        out.push_back(spectral_triple(a, b));
    }
    return out;
}

constexpr double kSpectralTolerance = 1e-9;
constexpr double kSanityTolerance = 1e-12;

/// Floating shadow of a Delta-vector.
struct DeltaShadow {
    double a = 0, b = 0;
};

/// Coordinates of a traceless spectrum in the unit fundamental-coweight basis.
inline DeltaShadow spectrum_to_delta(const Spectrum& l) {
    if (l[0] < l[1] - kSanityTolerance || l[1] < l[2] - kSanityTolerance)
        throw domain_error("spectrum must be sorted in descending order");
    const double s = std::sqrt(2.0 / 3.0);
    return {(l[0] - l[1]) * s, (l[1] - l[2]) * s};
}

struct Violation {
    std::size_t sample = 0;
    std::string functional;
    double margin = 0;      // positive amount by which L <= 0 fails
    std::string exact;      // exact value when available
};

struct SampleReport {
    std::string oracle;
    int m = 3;
    int n = 3;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    double tolerance = 0;
    std::vector<Violation> violations;
    std::vector<std::string> functionals;
    std::vector<double> worst;           // max of L over the samples, per functional
    std::vector<std::size_t> saturated;  // samples with L = 0 (exact) or |L| <= tolerance

    bool passed() const { return violations.empty(); }
};

inline double functional_shadow(const Functional& f, const std::vector<DeltaShadow>& s) {
    double acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double k = f.indices[i].k;
        acc += s[i].a * std::cos(k * std::numbers::pi / f.m) + s[i].b * std::cos((k - 1) * std::numbers::pi / f.m);
    }
    return acc;
}

inline SampleReport check_triples(const InequalitySystem& sys, const std::vector<SpectralTriple>& triples,
                                  std::uint64_t seed = 0) {
    if (sys.m != 3 || sys.n != 3) throw usage_error("the spectral oracle needs m = 3 and n = 3");
    SampleReport rep;
    rep.oracle = "hermitian";
    rep.m = 3;
    rep.n = 3;
    rep.seed = seed;
    rep.count = triples.size();
    rep.tolerance = kSpectralTolerance;
    for (const auto& f : sys.functionals) rep.functionals.push_back(f.to_string());
    rep.worst.assign(sys.size(), -std::numeric_limits<double>::infinity());
    rep.saturated.assign(sys.size(), 0);
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& tr = triples[t];
        for (const auto* sp : {&tr.a, &tr.b, &tr.c})
            if (std::abs((*sp)[0] + (*sp)[1] + (*sp)[2]) > 1e-9) throw domain_error("spectrum is not traceless");
        std::vector<DeltaShadow> s{spectrum_to_delta(tr.a), spectrum_to_delta(tr.b), spectrum_to_delta(tr.c)};
        for (std::size_t i = 0; i < sys.size(); ++i) {
            double v = functional_shadow(sys.functionals[i], s);
            rep.worst[i] = std::max(rep.worst[i], v);
            if (std::abs(v) <= kSpectralTolerance) ++rep.saturated[i];
            if (v > kSpectralTolerance) rep.violations.push_back({t, sys.functionals[i].to_string(), v, ""});
        }
    }
    return rep;
}

inline void write_triples_csv(std::ostream& os, const std::vector<SpectralTriple>& triples) {
    os << "a1,a2,a3,b1,b2,b3,c1,c2,c3\n";
    os.precision(17);
    for (const auto& t : triples) {
        os << t.a[0] << ',' << t.a[1] << ',' << t.a[2] << ',' << t.b[0] << ',' << t.b[1] << ',' << t.b[2] << ','
           << t.c[0] << ',' << t.c[1] << ',' << t.c[2] << '\n';
    }
}

// ---------------------------------------------------------------------------
// Exact apartment sampling

/// Random coordinate: small rational, plus a rational multiple of 2cos(pi/m)
/// half of the time when the field is not Q.
inline CycloReal random_coordinate(const FieldPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-12, 12), den(1, 6), coin(0, 1);
    CycloReal x(ctx, Rational(num(rng), den(rng)));
    if (ctx->degree() > 1 && coin(rng)) x += CycloReal::generator(ctx) * Rational(num(rng), den(rng));
    return x;
}

inline ApartmentPolygon random_polygon(const ApartmentModel& E, std::mt19937_64& rng, int n) {
    ApartmentPolygon p{E.m(), {}};
    for (int i = 0; i < n; ++i) p.vertices.push_back({random_coordinate(E.field(), rng), random_coordinate(E.field(), rng)});
    return p;
}

/// Evaluates every row of sys exactly on sigma(p); reports positive values.
inline void check_polygon(const ApartmentModel& E, const InequalitySystem& sys, const ApartmentPolygon& p,
                          std::size_t sample, SampleReport& rep) {
    auto s = sigma(E, p);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        CycloReal v = eval_functional(E.field(), sys.functionals[i], s);
        Sign sg = v.sign();
        double d = v.to_double();
        rep.worst[i] = std::max(rep.worst[i], d);
        if (sg == Sign::zero) ++rep.saturated[i];
        if (sg == Sign::positive) rep.violations.push_back({sample, sys.functionals[i].to_string(), d, v.to_string()});
    }
}

inline SampleReport apartment_sample(const InequalitySystem& sys, std::uint64_t seed, std::size_t count) {
    ApartmentModel E(sys.m);
    SampleReport rep;
    rep.oracle = "apartment";
    rep.m = sys.m;
    rep.n = sys.n;
    rep.seed = seed;
    rep.count = count;
    for (const auto& f : sys.functionals) rep.functionals.push_back(f.to_string());
    rep.worst.assign(sys.size(), -std::numeric_limits<double>::infinity());
    rep.saturated.assign(sys.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < count; ++t) check_polygon(E, sys, random_polygon(E, rng, sys.n), t, rep);
    return rep;
}

inline SampleReport apartment_sample(int m, int n, std::uint64_t seed, std::size_t count) {
    return apartment_sample(enumerate_Bn(m, n), seed, count);
}

/// Random billiard polygon: every segment y_i -> y_{i+1} is a W-image of a
/// positive multiple of one direction, so each break is a reflection point.
inline BilliardPath random_billiard(const ApartmentModel& E, std::mt19937_64& rng, int k) {
    if (k < 2) throw usage_error("billiard path needs at least two points");
    BilliardPath path;
    path.m = E.m();
    Vec2 d;
    do d = {random_coordinate(E.field(), rng), random_coordinate(E.field(), rng)};
    while (d.is_zero());
    auto els = E.group().elements();
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    std::uniform_int_distribution<int> lam(1, 7), lam_den(1, 3);
    path.apex = {random_coordinate(E.field(), rng), random_coordinate(E.field(), rng)};
    path.points.push_back({random_coordinate(E.field(), rng), random_coordinate(E.field(), rng)});
    for (int i = 1; i < k; ++i) {
        Rational l(lam(rng), lam_den(rng));
        l.canonicalize();
        path.points.push_back(path.points.back() + E.apply(els[pick(rng)], l * d));
    }
    path.transitions = std::array<WeylElement, 3>{els[pick(rng)], els[pick(rng)], els[pick(rng)]};
    return path;
}

// ---------------------------------------------------------------------------
// Facet witnesses

/// Closed polygon with side i in the open cone of chamber omega_i(chamber 0),
/// where the omegas come from the weak witness of f; f vanishes on its sigma.
inline ApartmentPolygon facet_witness(const ApartmentModel& E, const Functional& f) {
    const auto& W = E.group();
    if (f.m != E.m()) throw usage_error("functional order does not match the apartment");
    auto w = weak_witness(W, f.indices);
    if (!w) throw domain_error("functional " + f.to_string() + " has no antipodal witness pair");
    const std::size_t n = f.indices.size();
    const Vec2 d0 = E.vec(1, 1);  // interior of chamber 0
    std::vector<Vec2> sides(n, E.zero());
    Vec2 rest = E.zero();
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == w->j || static_cast<int>(i) == w->j_prime) continue;
        sides[i] = E.apply(w->omegas[i], d0);
        rest = rest + sides[i];
    }
    const std::size_t j = static_cast<std::size_t>(w->j), jp = static_cast<std::size_t>(w->j_prime);
    const Vec2 dj = E.apply(w->omegas[j], d0);
    const ChamberIndex target = W.chamber_of(w->omegas[jp]);
    Rational t(1);
    for (;;) {
        sides[jp] = -(t * dj) - rest;
        if (E.in_open_chamber_cone(sides[jp], target)) break;
        t *= 2;
    }
    sides[j] = t * dj;
    ApartmentPolygon p{E.m(), {E.zero()}};
    for (std::size_t i = 0; i + 1 < n; ++i) p.vertices.push_back(p.vertices.back() + sides[i]);
    return p;
}

}  // namespace gti
