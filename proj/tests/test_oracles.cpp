#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gti/cone.hpp"
#include "gti/oracles.hpp"

using namespace gti;

namespace {

const double kS = std::sqrt(2.0 / 3.0);

HermitianMatrix diag(double x, double y, double z) {
    HermitianMatrix h = HermitianMatrix::Zero();
    h(0, 0) = x;
    h(1, 1) = y;
    h(2, 2) = z;
    return h;
}

double value_of(const Functional& f, const SpectralTriple& t) {
    return functional_shadow(f, {spectrum_to_delta(t.a), spectrum_to_delta(t.b), spectrum_to_delta(t.c)});
}

}  // namespace

TEST(SpectrumToDelta, Examples) {
    auto d = spectrum_to_delta({1, 0, -1});
    EXPECT_NEAR(d.a, kS, 1e-15);
    EXPECT_NEAR(d.b, kS, 1e-15);
    d = spectrum_to_delta({0, 0, 0});
    EXPECT_EQ(d.a, 0.0);
    EXPECT_EQ(d.b, 0.0);
    d = spectrum_to_delta({2, -1, -1});
    EXPECT_NEAR(d.a, 3 * kS, 1e-15);
    EXPECT_NEAR(d.b, 0.0, 1e-15);
    EXPECT_THROW(spectrum_to_delta({0, 1, -1}), domain_error);
}

// The coweight basis is unit length at angle pi/3, matching the apartment Gram matrix:
// |delta|^2 = a^2 + ab + b^2 must equal the squared norm of the spectrum.
TEST(SpectrumToDelta, NormMatchesGram) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Spectrum s = spectrum_of(random_traceless_hermitian(rng));
        auto d = spectrum_to_delta(s);
        double lhs = d.a * d.a + d.a * d.b + d.b * d.b;
        double rhs = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
        EXPECT_NEAR(lhs, rhs, 1e-10 * (1 + rhs));
    }
}

TEST(SpectralOracle, CommutingExamples) {
    auto f = Functional::from_ints(3, {0, 4, 4});
    auto same = spectral_triple(diag(1, 0, -1), diag(1, 0, -1));
    EXPECT_NEAR(same.c[0], 2, 1e-12);
    EXPECT_NEAR(same.c[2], -2, 1e-12);
    EXPECT_NEAR(value_of(f, same), -2 * std::sqrt(1.5), 1e-12);

    auto opposite = spectral_triple(diag(1, 0, -1), diag(-1, 0, 1));
    for (double x : opposite.c) EXPECT_NEAR(x, 0, 1e-12);
    EXPECT_NEAR(value_of(f, opposite), 0, 1e-12);
}

TEST(SpectralOracle, ExtremeFunctionalsAreEigenvalues) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Spectrum s = spectrum_of(random_traceless_hermitian(rng));
        std::vector<DeltaShadow> one{spectrum_to_delta(s)};
        EXPECT_NEAR(functional_shadow(Functional::from_ints(3, {0}), one), std::sqrt(1.5) * s[0], 1e-12);
        EXPECT_NEAR(functional_shadow(Functional::from_ints(3, {4}), one), std::sqrt(1.5) * s[2], 1e-12);
    }
}

TEST(SpectralOracle, SampleIsTracelessAndDeterministic) {
    auto t1 = hermitian_sample(42, 500);
    auto t2 = hermitian_sample(42, 500);
    ASSERT_EQ(t1.size(), 500u);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        for (const auto* sp : {&t1[i].a, &t1[i].b, &t1[i].c}) {
            EXPECT_LT(std::abs((*sp)[0] + (*sp)[1] + (*sp)[2]), kSanityTolerance);
            EXPECT_GE((*sp)[0], (*sp)[1]);
            EXPECT_GE((*sp)[1], (*sp)[2]);
        }
        EXPECT_EQ(t1[i].a, t2[i].a);
        EXPECT_EQ(t1[i].c, t2[i].c);
    }
    EXPECT_NE(hermitian_sample(43, 1)[0].a, t1[0].a);
    EXPECT_THROW(hermitian_sample(1, 0), usage_error);
}

TEST(SpectralOracle, NoViolationsOnB3) {
    auto rep = check_triples(enumerate_Bn(3, 3), hermitian_sample(42, 2000), 42);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.count, 2000u);
    EXPECT_EQ(rep.functionals.size(), 12u);
    for (double w : rep.worst) EXPECT_LE(w, kSpectralTolerance);
    EXPECT_THROW(check_triples(enumerate_Bn(4, 3), {}, 0), usage_error);
}

// A functional outside B_3 must be caught by the spectral sample.
TEST(SpectralOracle, DetectsANonInequality) {
    auto bad = InequalitySystem(3, 3, {Functional::from_ints(3, {0, 0, 0})}, Provenance::custom);
    auto rep = check_triples(bad, hermitian_sample(5, 50), 5);
    EXPECT_FALSE(rep.passed());
}

TEST(SpectralOracle, CsvShape) {
    std::ostringstream os;
    write_triples_csv(os, hermitian_sample(3, 4));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "a1,a2,a3,b1,b2,b3,c1,c2,c3");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    }
    EXPECT_EQ(rows, 4);
}

TEST(ApartmentOracle, DegenerateTriangleSaturatesSomething) {
    ApartmentModel E(3);
    const Vec2 v = E.vec(1, 1);
    ApartmentPolygon p{3, {E.zero(), v, v + v}};
    auto sys = enumerate_Bn(3, 3);
    SampleReport rep;
    rep.worst.assign(sys.size(), -1e300);
    rep.saturated.assign(sys.size(), 0);
    check_polygon(E, sys, p, 0, rep);
    EXPECT_TRUE(rep.passed());
    std::size_t hit = 0;
    for (auto s : rep.saturated) hit += s;
    EXPECT_GE(hit, 1u);
}

TEST(ApartmentOracle, RandomPolygonsRespectTheSystem) {
    for (int m : {3, 4, 5, 6}) {
        for (int n : {3, 4}) {
            auto rep = apartment_sample(m, n, 17, 300);
            EXPECT_TRUE(rep.passed()) << "m=" << m << " n=" << n << " first: "
                                      << (rep.violations.empty() ? "" : rep.violations.front().functional);
            EXPECT_EQ(rep.seed, 17u);
        }
    }
}

TEST(ApartmentOracle, DetectsANonInequality) {
    auto bad = InequalitySystem(5, 3, {Functional::from_ints(5, {0, 0, 0})}, Provenance::custom);
    EXPECT_FALSE(apartment_sample(bad, 1, 50).passed());
}

TEST(ApartmentOracle, Deterministic) {
    auto r1 = apartment_sample(5, 3, 9, 40);
    auto r2 = apartment_sample(5, 3, 9, 40);
    EXPECT_EQ(r1.worst, r2.worst);
    EXPECT_EQ(r1.saturated, r2.saturated);
}

TEST(FacetWitness, EveryRowOfB3IsSaturated) {
    ApartmentModel E(3);
    auto sys = enumerate_Bn(3, 3);
    auto cone = build_cone(sys);
    ASSERT_EQ(sys.size(), 12u);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const auto& f = sys.functionals[i];
        auto p = facet_witness(E, f);
        auto s = sigma(E, p);
        EXPECT_TRUE(eval_functional(E.field(), f, s).is_zero()) << f.to_string();
        auto mem = member(cone, s);
        EXPECT_EQ(mem.status, Membership::Status::boundary) << f.to_string();
        EXPECT_NE(std::find(mem.active.begin(), mem.active.end(), i), mem.active.end());
        // apartment triangles form a 4-dimensional family inside the 6-dimensional
        // side-length space, so they reach facets only along codimension-2 faces
        EXPECT_EQ(mem.active.size(), 2u) << f.to_string();
    }
}

TEST(FacetWitness, OtherDihedralOrders) {
    for (int m : {4, 5, 6, 8}) {
        ApartmentModel E(m);
        for (int n : {3, 4}) {
            auto sys = enumerate_Bn(m, n);
            auto cone = build_cone(sys);
            for (const auto& f : sys.functionals) {
                auto s = sigma(E, facet_witness(E, f));
                EXPECT_TRUE(eval_functional(E.field(), f, s).is_zero()) << m << " " << f.to_string();
                EXPECT_NE(member(cone, s).status, Membership::Status::outside) << m << " " << f.to_string();
            }
        }
    }
}

TEST(FacetWitness, RejectsMismatchedOrder) {
    ApartmentModel E(4);
    EXPECT_THROW(facet_witness(E, Functional::from_ints(3, {0, 4, 4})), usage_error);
}

TEST(RandomBilliard, SegmentsShareOneDeltaLength) {
    ApartmentModel E(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto path = random_billiard(E, rng, 5);
        ASSERT_EQ(path.points.size(), 5u);
        auto d0 = delta_of(E, path.points[1] - path.points[0]);
        for (std::size_t i = 2; i < path.points.size(); ++i) {
            auto di = delta_of(E, path.points[i] - path.points[i - 1]);
            // collinear in the chamber: a0 * bi == ai * b0
            EXPECT_TRUE((d0.a * di.b - di.a * d0.b).is_zero());
        }
    }
}

TEST(ApartmentOracle, EquilateralTriangleSaturates) {
    ApartmentModel E(3);
    const Vec2 a = E.unit({0}), b = E.unit({2});
    ApartmentPolygon p{3, {E.zero(), a, a + b}};  // sides e(0), e(2), e(4)
    EXPECT_EQ(p.side(2), E.unit({4}));
    auto sys = enumerate_Bn(3, 3);
    auto s = sigma(E, p);
    int zeros = 0;
    for (const auto& f : sys.functionals) {
        auto v = eval_functional(E.field(), f, s);
        EXPECT_NE(v.sign(), Sign::positive) << f.to_string();
        zeros += v.is_zero();
    }
    EXPECT_GE(zeros, 1);
}

TEST(ApartmentOracle, RepeatedVertexIsHarmless) {
    ApartmentModel E(5);
    ApartmentPolygon p{5, {E.zero(), E.vec(2, 1), E.vec(2, 1)}};
    for (const auto& f : enumerate_Bn(5, 3).functionals)
        EXPECT_NE(eval_functional(E.field(), f, sigma(E, p)).sign(), Sign::positive) << f.to_string();
}

// Diagonal A, B: the spectral triple is the sigma of the apartment triangle whose
// sides are the diagonals written in the coweight basis (up to the factor sqrt(2/3)).
TEST(SpectralOracle, CommutingBridgeToApartment) {
    ApartmentModel E(3);
    auto sys = enumerate_Bn(3, 3);
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 50; ++t) {
        std::array<int, 3> x{d(rng), d(rng), 0}, y{d(rng), d(rng), 0};
        x[2] = -x[0] - x[1];
        y[2] = -y[0] - y[1];
        auto tri = spectral_triple(diag(x[0], x[1], x[2]), diag(y[0], y[1], y[2]));
        auto side = [&](int a0, int a1, int a2) { return E.vec(a0 - a1, a1 - a2); };
        Vec2 va = side(x[0], x[1], x[2]), vb = side(y[0], y[1], y[2]);
        ApartmentPolygon p{3, {E.zero(), va, va + vb}};
        auto s = sigma(E, p);
        for (const auto& f : sys.functionals) {
            double exact = eval_functional(E.field(), f, s).to_double() * kS;
            EXPECT_NEAR(value_of(f, tri), exact, 1e-12) << f.to_string();
        }
    }
}
