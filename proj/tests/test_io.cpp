#include <gtest/gtest.h>

#include <random>

#include "gti/io.hpp"

using namespace gti;
using io::json;

TEST(ExactJson, RoundTripsFieldElements) {
    for (int m : {3, 4, 5, 7, 8, 12}) {
        auto ctx = make_field(m);
        std::mt19937 rng(static_cast<unsigned>(m));
        std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
        for (int t = 0; t < 50; ++t) {
            std::vector<Rational> c;
            for (int i = 0; i < ctx->degree(); ++i) c.push_back(Rational(num(rng), den(rng)));
            auto x = CycloReal::from_coeffs(ctx, c);
            json j = io::exact_json(x);
            // through text as a file would go
            auto back = io::exact_from_json(ctx, json::parse(j.dump()));
            EXPECT_EQ(back, x);
            EXPECT_NEAR(j["approx"].get<double>(), x.to_double(), 1e-12 * (1 + std::abs(x.to_double())));
        }
    }
}

TEST(ExactJson, AcceptsShorthand) {
    auto ctx = make_field(5);
    EXPECT_EQ(io::exact_from_json(ctx, json(3)), CycloReal(ctx, 3L));
    EXPECT_EQ(io::exact_from_json(ctx, json("6/8")), CycloReal(ctx, Rational(3, 4)));
    EXPECT_EQ(io::exact_from_json(ctx, json::parse(R"({"coeffs":["0","1"]})")), CycloReal::generator(ctx));
    EXPECT_THROW(io::exact_from_json(ctx, json(0.5)), usage_error);
    EXPECT_THROW(io::exact_from_json(ctx, json("1/0")), usage_error);
    EXPECT_THROW(io::exact_from_json(ctx, json("abc")), usage_error);
    EXPECT_THROW(io::exact_from_json(ctx, json::parse(R"({"c":[1]})")), usage_error);
}

TEST(TextValue, TwelveDigitsAndExactMarker) {
    auto ctx = make_field(5);
    EXPECT_EQ(io::text_value(CycloReal(ctx, Rational(1, 2))), "0.5 (exact)");
    EXPECT_EQ(io::text_value(CycloReal(ctx, -3L)), "-3 (exact)");
    EXPECT_EQ(io::text_value(CycloReal(ctx)), "0 (exact)");
    EXPECT_EQ(io::text_value(CycloReal(ctx, Rational(1, 3))), "0.333333333333");
    // 2cos(pi/5) is the golden ratio
    EXPECT_EQ(io::text_value(CycloReal::generator(ctx)), "1.61803398875");
    EXPECT_EQ(io::text_value(CycloReal(ctx, Rational(1, 1024))), "0.0009765625 (exact)");
}

TEST(TextValue, DecimalParser) {
    EXPECT_EQ(io::decimal_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(io::decimal_rational("-1.5e-3"), Rational(-3, 2000));
    EXPECT_EQ(io::decimal_rational("2e3"), Rational(2000));
    EXPECT_EQ(io::decimal_rational("7"), Rational(7));
}

TEST(WeylJson, Shape) {
    Dihedral W(5);
    for (const auto& g : W.elements()) EXPECT_EQ(io::weyl_from_json(W, io::weyl_json(g)), g);
    EXPECT_EQ(io::weyl_json(W.reflection(2)).dump(), R"({"kind":"ref","j":2})");
    EXPECT_THROW(io::weyl_from_json(W, json::parse(R"({"kind":"flip","j":0})")), usage_error);
}

TEST(SystemJson, ShapeAndRoundTrip) {
    auto sys = enumerate_Bn(3, 3);
    json j = io::system_json(sys);
    EXPECT_EQ(j["m"], 3);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["provenance"], "Bn");
    ASSERT_EQ(j["parityGroups"].size(), 2u);
    EXPECT_EQ(j["parityGroups"][0]["parity"], 0);
    EXPECT_EQ(j["parityGroups"][0]["tuples"][0], json::array({0, 4, 4}));
    EXPECT_EQ(j["parityGroups"][1]["tuples"].size(), 6u);
    for (int m : {3, 4, 5, 6, 8}) {
        for (int n : {2, 3, 4}) {
            auto s = enumerate_Bn(m, n);
            auto back = io::system_from_json(json::parse(io::system_json(s).dump()));
            EXPECT_EQ(back.functionals, s.functionals);
            EXPECT_EQ(back.provenance, s.provenance);
            EXPECT_EQ(io::system_json(back).dump(), io::system_json(s).dump());
        }
    }
}

TEST(SystemJson, RejectsBadInput) {
    EXPECT_THROW(io::system_from_json(json::parse(R"({"n":3,"parityGroups":[]})")), usage_error);
    EXPECT_THROW(io::system_from_json(json::parse(R"({"m":3,"n":3,"parityGroups":[{"parity":1,"tuples":[[0,4,4]]}]})")),
                 usage_error);
    EXPECT_THROW(io::system_from_json(json::parse(R"({"m":3,"n":3,"parityGroups":[{"parity":0,"tuples":[[0,4]]}]})")),
                 usage_error);
    EXPECT_THROW(io::system_from_json(json::parse(R"({"m":3,"n":3,"parityGroups":[{"parity":0,"tuples":[[0,1,4]]}]})")),
                 domain_error);
    EXPECT_THROW(io::system_from_json(json::parse(R"({"m":2,"n":3,"parityGroups":[]})")), domain_error);
}

TEST(PointJson, RoundTripAndChamberGuard) {
    auto [m, s] = io::point_from_json(json::parse(R"({"m":5,"sides":[[1,"1/2"],[{"coeffs":["0","1"]},0],[0,0]]})"));
    EXPECT_EQ(m, 5);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[1].a, CycloReal::generator(make_field(5)));
    auto [m2, s2] = io::point_from_json(json::parse(io::point_json(m, s).dump()));
    EXPECT_EQ(m2, m);
    EXPECT_EQ(s2, s);
    EXPECT_THROW(io::point_from_json(json::parse(R"({"m":3,"sides":[[-1,0]]})")), domain_error);
    EXPECT_THROW(io::point_from_json(json::parse(R"({"m":3,"sides":[[1]]})")), usage_error);
}

TEST(PolygonJson, RoundTrip) {
    ApartmentModel E(5);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        auto p = random_polygon(E, rng, 4);
        auto back = io::polygon_from_json(json::parse(io::polygon_json(p).dump()));
        EXPECT_EQ(back.m, p.m);
        EXPECT_EQ(back.vertices, p.vertices);
    }
}

TEST(PathJson, RoundTripWithAndWithoutTransitions) {
    ApartmentModel E(5);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        auto p = random_billiard(E, rng, 4);
        if (t % 2) p.transitions.reset();
        json j = io::path_json(p);
        EXPECT_EQ(j.contains("vertexTransitions"), p.transitions.has_value());
        auto back = io::path_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.apex, p.apex);
        EXPECT_EQ(back.points, p.points);
        EXPECT_EQ(back.transitions, p.transitions);
    }
    EXPECT_THROW(io::path_from_json(json::parse(R"({"m":3,"apex":[0,0],"points":[[0,0]],"vertexTransitions":[]})")),
                 usage_error);
}

TEST(ReportJson, CarriesSeedAndWorstMargins) {
    auto rep = apartment_sample(3, 3, 99, 20);
    json j = io::report_json(rep);
    EXPECT_EQ(j["seed"], 99u);
    EXPECT_EQ(j["count"], 20u);
    EXPECT_EQ(j["violationCount"], 0u);
    EXPECT_EQ(j["exact"], true);
    EXPECT_EQ(j["functionals"].size(), 12u);
}

TEST(CertificateJson, WitnessOrCombination) {
    auto cone = build_cone(enumerate_Bn(3, 3));
    json ok = io::certificate_json(irredundant(cone, 0).certificate);
    EXPECT_EQ(ok["status"], "feasible");
    EXPECT_EQ(ok["witness"].size(), 6u);

    auto sys = enumerate_Bn(3, 3);
    auto fs = sys.functionals;
    fs.push_back(Functional::from_ints(3, {4, 4, 4}));
    auto ext = build_cone(InequalitySystem(3, 3, fs, Provenance::custom));
    std::size_t row = 0;
    for (std::size_t i = 0; i < ext.rows.size(); ++i)
        if (ext.rows[i].label == "(4,4,4)") row = i;
    auto r = irredundant(ext, row);
    ASSERT_FALSE(r.irredundant);
    json bad = io::irredundancy_json(ext, r);
    EXPECT_EQ(bad["label"], "(4,4,4)");
    EXPECT_EQ(bad["certificate"]["status"], "infeasible");
    EXPECT_TRUE(bad["certificate"].contains("combination"));
}

TEST(ConeJson, Shape) {
    json j = io::cone_json(build_cone(enumerate_Bn(3, 3)));
    EXPECT_EQ(j["variables"].size(), 6u);
    EXPECT_EQ(j["rows"].size(), 18u);
    EXPECT_EQ(j["rows"][0]["kind"], "functional");
    EXPECT_EQ(j["rows"][17]["kind"], "nonnegativity");
}
