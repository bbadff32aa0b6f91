#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <numeric>
#include <random>

#include "gti/exactreal.hpp"

using namespace gti;
using Big = boost::multiprecision::cpp_dec_float_100;

namespace {

// Independent oracles: Euler totient by gcd counting, and 100-digit cosines.
int totient(int n) {
    int count = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

Big big_cos_pi(int t, int m) { return boost::multiprecision::cos(Big(t) * boost::math::constants::pi<Big>() / Big(m)); }

Big big_value(const CycloReal& x) {
    Big g = 2 * big_cos_pi(1, x.context()->m());
    Big acc = 0, power = 1;
    for (const auto& c : x.coeffs()) {
        acc += Big(c.get_num().get_str()) / Big(c.get_den().get_str()) * power;
        power *= g;
    }
    return acc;
}

std::vector<long> ints(const poly::RatPoly& p) {
    std::vector<long> out;
    for (const auto& c : p) out.push_back(c.get_num().get_si());
    return out;
}

}  // namespace

TEST(FieldContext, RejectsSmallOrders) {
    EXPECT_THROW(FieldContext(2), gti::domain_error);
    EXPECT_THROW(make_field(1), gti::domain_error);
}

TEST(FieldContext, DegreeMatchesHalfTotient) {
    for (int m = 3; m <= 30; ++m) {
        FieldContext ctx(m);
        EXPECT_EQ(ctx.degree(), totient(2 * m) / 2) << "m=" << m;
    }
}

TEST(FieldContext, KnownMinimalPolynomials) {
    EXPECT_EQ(ints(FieldContext(3).minimal_polynomial()), (std::vector<long>{-1, 1}));
    EXPECT_EQ(ints(FieldContext(4).minimal_polynomial()), (std::vector<long>{-2, 0, 1}));
    EXPECT_EQ(ints(FieldContext(5).minimal_polynomial()), (std::vector<long>{-1, -1, 1}));
    EXPECT_EQ(ints(FieldContext(6).minimal_polynomial()), (std::vector<long>{-3, 0, 1}));
}

TEST(FieldContext, MinimalPolynomialAnnihilatesGenerator) {
    for (int m : {3, 4, 5, 6, 7, 8, 9, 10, 12, 15}) {
        FieldContext ctx(m);
        const auto& psi = ctx.minimal_polynomial();
        EXPECT_EQ(psi.back(), 1) << "monic";
        Big g = 2 * big_cos_pi(1, m), acc = 0, power = 1;
        for (const auto& c : psi) {
            acc += Big(c.get_num().get_str()) * power;
            power *= g;
        }
        EXPECT_LT(boost::multiprecision::abs(acc), Big("1e-30")) << "m=" << m;
    }
}

TEST(FieldContext, PentagonPolynomialIsIrreducible) {
    // rational root test for x^2 - x - 1: only candidates are +-1
    FieldContext ctx(5);
    for (int r : {-1, 1}) EXPECT_NE(poly::eval(ctx.minimal_polynomial(), Rational(r)), 0);
}

TEST(FieldContext, IsolatingIntervalContainsGenerator) {
    for (int m : {4, 5, 7, 8, 11}) {
        FieldContext ctx(m);
        auto [lo, hi] = ctx.generator_interval();
        Big g = 2 * big_cos_pi(1, m);
        EXPECT_LE(Big(lo.get_num().get_str()) / Big(lo.get_den().get_str()), g);
        EXPECT_GE(Big(hi.get_num().get_str()) / Big(hi.get_den().get_str()), g);
        EXPECT_EQ(poly::sturm_count(ctx.minimal_polynomial(), lo, hi), 1);
    }
}

TEST(CycloReal, CosineExamples) {
    auto f3 = make_field(3);
    EXPECT_EQ(CycloReal::cos_pi(f3, 0), CycloReal(f3, 1L));
    EXPECT_EQ(CycloReal::cos_pi(f3, 2), CycloReal(f3, Rational(-1, 2)));

    auto f5 = make_field(5);
    CycloReal g = CycloReal::generator(f5);
    // cos(2pi/5) = (g - 1)/2
    EXPECT_EQ(CycloReal::cos_pi(f5, 2), (g - CycloReal(f5, 1L)) * Rational(1, 2));
    EXPECT_NEAR(CycloReal::cos_pi(f5, 2).to_double(), 0.30901699437494745, 1e-15);
}

TEST(CycloReal, ArithmeticExamples) {
    auto f5 = make_field(5);
    CycloReal x = CycloReal::cos_pi(f5, 3) + CycloReal::generator(f5) * Rational(7, 3);
    EXPECT_TRUE((x + (-x)).is_zero());

    auto f4 = make_field(4);
    CycloReal g4 = CycloReal::generator(f4);
    EXPECT_EQ(g4 * g4 * Rational(1, 4), CycloReal(f4, Rational(1, 2)));

    // cos(pi/5) cos(2pi/5) = 1/4
    EXPECT_EQ(CycloReal::cos_pi(f5, 1) * CycloReal::cos_pi(f5, 2), CycloReal(f5, Rational(1, 4)));
}

TEST(CycloReal, MixedContextsAreRejected) {
    EXPECT_THROW(CycloReal(make_field(3), 1L) + CycloReal(make_field(5), 1L), gti::usage_error);
}

TEST(CycloReal, SignExamples) {
    auto f5 = make_field(5);
    EXPECT_EQ(CycloReal(f5).sign(), Sign::zero);
    EXPECT_EQ(CycloReal::cos_pi(f5, 3).sign(), Sign::negative);
    CycloReal s = CycloReal::cos_pi(f5, 1) + CycloReal::cos_pi(f5, 3) + CycloReal::cos_pi(f5, 5);
    EXPECT_EQ(s, CycloReal(f5, Rational(-1, 2)));
    EXPECT_EQ(s.sign(), Sign::negative);
}

TEST(CycloReal, InverseAndDivision) {
    for (int m : {4, 5, 7, 8}) {
        auto f = make_field(m);
        CycloReal x = CycloReal::cos_pi(f, 1) * Rational(3) - CycloReal(f, Rational(2, 7)) + CycloReal::cos_pi(f, 3);
        EXPECT_EQ(x * x.inverse(), CycloReal(f, 1L)) << "m=" << m;
        CycloReal y = CycloReal::generator(f) + CycloReal(f, 5L);
        EXPECT_EQ((x / y) * y, x);
    }
    EXPECT_THROW(CycloReal(make_field(5), 1L) / CycloReal(make_field(5)), gti::domain_error);
}

TEST(CycloRealProperty, CosineParityAndPeriodicity) {
    for (int m : {3, 4, 5, 6, 8, 9}) {
        auto f = make_field(m);
        for (long t = -3L * m; t <= 3L * m; ++t) {
            EXPECT_EQ(CycloReal::cos_pi(f, t), CycloReal::cos_pi(f, -t));
            EXPECT_EQ(CycloReal::cos_pi(f, t), CycloReal::cos_pi(f, t + 2L * m));
        }
    }
}

TEST(CycloRealProperty, ProductToSum) {
    std::mt19937 rng(2024);
    for (int m : {3, 4, 5, 6, 8}) {
        auto f = make_field(m);
        std::uniform_int_distribution<long> dist(-4L * m, 4L * m);
        for (int trial = 0; trial < 1000; ++trial) {
            long a = dist(rng), b = dist(rng);
            CycloReal lhs = CycloReal::cos_pi(f, a) * CycloReal::cos_pi(f, b) * Rational(2);
            CycloReal rhs = CycloReal::cos_pi(f, a + b) + CycloReal::cos_pi(f, a - b);
            ASSERT_EQ(lhs, rhs) << "m=" << m << " a=" << a << " b=" << b;
        }
    }
}

TEST(CycloRealProperty, SignAgreesWithHundredDigitEvaluation) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int m : {4, 5, 7, 8, 12}) {
        auto f = make_field(m);
        int checked = 0;
        while (checked < 1000) {
            std::vector<Rational> c(static_cast<std::size_t>(f->degree()));
            for (auto& q : c) q = Rational(coef(rng), 1 + std::abs(coef(rng)));
            CycloReal x = CycloReal::from_coeffs(f, c);
            if (x.is_zero()) continue;
            Big v = big_value(x);
            Sign expect = v > 0 ? Sign::positive : Sign::negative;
            ASSERT_EQ(x.sign(), expect) << "m=" << m << " x=" << x;
            ++checked;
        }
    }
}

TEST(CycloRealProperty, NearCancellationStillCertified) {
    // cos(pi/5) approximated by a rational to ~1e-40: the difference is tiny but nonzero
    auto f = make_field(5);
    CycloReal c1 = CycloReal::cos_pi(f, 1);
    Rational approx("80901699437494742410229341718281905886436104/100000000000000000000000000000000000000000000");
    approx.canonicalize();
    CycloReal d = c1 - CycloReal(f, approx);
    Big v = big_value(d);
    EXPECT_EQ(d.sign(), v > 0 ? Sign::positive : Sign::negative);
}

TEST(CycloRealProperty, CanonicalReductionIsIdempotent) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-20, 20);
    for (int m : {5, 7, 8}) {
        auto f = make_field(m);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Rational> c(static_cast<std::size_t>(3 * f->degree()));
            for (auto& q : c) q = coef(rng);
            auto once = f->reduce(c);
            EXPECT_EQ(f->reduce(once), once);
            EXPECT_EQ(once.size(), static_cast<std::size_t>(f->degree()));
        }
    }
}
