// Tests for the symbolic hinge systems: the three-body two-row system and
// its determinant constraint, the four-body 5x4 matrix in reciprocal
// distances, the elimination to three sparse x-polynomials, and the
// all-distances-equal special case.  Reference coefficients are pinned as
// exact rational-function fixtures and cross-checked numerically.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "unhinge/hinge.hpp"
#include "unhinge/parse.hpp"
#include "unhinge/positivity.hpp"
#include "unhinge/sturm.hpp"

using namespace unhinge;

namespace {

double eval_rf(const RatFunc& v, const std::vector<double>& pt) {
    double den = 1.0;
    for (const Poly& f : v.provenance()) den *= f.evaluate_double(pt);
    return v.num().evaluate_double(pt) / den;
}

std::vector<double> random_point(std::mt19937& rng, int size) {
    std::uniform_real_distribution<double> u(0.6, 1.9);
    std::vector<double> pt(static_cast<std::size_t>(size));
    for (double& c : pt) c = u(rng);
    return pt;
}

bool same_up_to_sign(const Poly& a, const Poly& b) { return a == b || a == -b; }

}  // namespace

// ---------------------------------------------------------------- n = 3

TEST_CASE("three-body problem shape") {
    HingeProblem hp = make_hinge_problem(3);
    REQUIRE(hp.n == 3);
    std::vector<std::string> names;
    for (int i = 0; i < hp.reg->size(); ++i) names.push_back(hp.reg->name(i));
    CHECK(names == std::vector<std::string>{"r12", "r13", "m2", "m3", "x"});
    CHECK(hp.unknowns == std::vector<std::string>{"rho12", "g23"});
    CHECK(hp.catalog->size() == std::size_t{5});

    LinearSystem sys = gddot_system(hp);
    CHECK(sys.row_labels == std::vector<std::string>{"gddot_12", "gddot_13"});
    CHECK(sys.row_scale == Rational(1));
    REQUIRE(sys.rows.size() == 2);
    REQUIRE(sys.rows[0].size() == 2);
}

TEST_CASE("three-body rows match the reference coefficients") {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    auto rf = [&](const char* t) {
        return RatFunc(parse_poly(t, hp.reg), hp.catalog);
    };
    auto over = [&](RatFunc v, const char* d) {
        return v.divided_by(parse_poly(d, hp.reg));
    };
    RatFunc e00 = over(rf("2*m3"), "r13^3") - over(rf("2*m3"), "x^3");
    RatFunc e01 = over(rf("2*m3"), "r13^3") +
                  over(rf("3/2*m3*r12^2 - 3/2*m3*r13^2"), "x^5") -
                  over(rf("1/2*m3"), "x^3");
    RatFunc e10 = over(rf("2*m2"), "x^3") - over(rf("2*m2"), "r12^3");
    RatFunc e11 = over(rf("2*m2"), "r12^3") +
                  over(rf("3/2*m2*r13^2 - 3/2*m2*r12^2"), "x^5") -
                  over(rf("1/2*m2"), "x^3");
    CHECK(sys.rows[0][0] == e00);
    CHECK(sys.rows[0][1] == e01);
    CHECK(sys.rows[1][0] == e10);
    CHECK(sys.rows[1][1] == e11);
}

TEST_CASE("three-body rows match an independent numeric assembly") {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    std::mt19937 rng(20231);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> pt = random_point(rng, hp.reg->size());
        double r12 = pt[0], r13 = pt[1], m2 = pt[2], m3 = pt[3], x = pt[4];
        double want[2][2] = {
            {2 * m3 * (1 / std::pow(r13, 3) - 1 / std::pow(x, 3)),
             2 * m3 / std::pow(r13, 3) +
                 1.5 * m3 * (r12 * r12 - r13 * r13) / std::pow(x, 5) -
                 0.5 * m3 / std::pow(x, 3)},
            {2 * m2 * (1 / std::pow(x, 3) - 1 / std::pow(r12, 3)),
             2 * m2 / std::pow(r12, 3) +
                 1.5 * m2 * (r13 * r13 - r12 * r12) / std::pow(x, 5) -
                 0.5 * m2 / std::pow(x, 3)}};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                CHECK(eval_rf(sys.rows[static_cast<std::size_t>(r)]
                                      [static_cast<std::size_t>(c)],
                              pt) == doctest::Approx(want[r][c]).epsilon(1e-9));
    }
}

TEST_CASE("three-body determinant constraint") {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    ThreeBodyReport rep = three_body_determinant(hp, sys);

    CHECK(rep.clear_multiplier == parse_poly("x^5*r12^3*r13^3", hp.reg));
    REQUIRE(rep.cleared.size() == 2);

    // The cleared entries reproduce the rational entries times the common
    // multiplier, so the polynomial determinant must match the numeric
    // 2x2 determinant of the original system times the multiplier squared.
    std::mt19937 rng(55202);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> pt = random_point(rng, hp.reg->size());
        double mult = rep.clear_multiplier.evaluate_double(pt);
        double det_num = (eval_rf(sys.rows[0][0], pt) * eval_rf(sys.rows[1][1], pt) -
                          eval_rf(sys.rows[0][1], pt) * eval_rf(sys.rows[1][0], pt)) *
                         mult * mult;
        CHECK(rep.det.evaluate_double(pt) ==
              doctest::Approx(det_num).epsilon(1e-9));
    }

    // The stripped core is the frozen degree-6 constraint; what stripping
    // removed is exactly the positive monomial m2*m3*r12^3*r13^3*x^4.
    Poly core = parse_poly(
        "8*x^6 - 5*(r12^3 + r13^3)*x^3 + 3*(r13^2 - r12^2)*(r12^3 - r13^3)*x "
        "+ 2*r12^3*r13^3",
        hp.reg);
    CHECK(same_up_to_sign(rep.det_stripped, core));
    auto quotient = rep.det.divide_exact(rep.det_stripped);
    REQUIRE(quotient.has_value());
    CHECK(same_up_to_sign(*quotient,
                          parse_poly("m2*m3*r12^3*r13^3*x^4", hp.reg)));

    int xvar = hp.reg->index_of("x");
    CHECK(rep.det_stripped.degree_in(xvar) == 6);
    CHECK(rep.det_stripped.coefficient_of(xvar, 6).is_constant());
}

TEST_CASE("equal-distance restriction factors the determinant") {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    ThreeBodyReport rep = three_body_determinant(hp, sys);
    std::map<int, Poly> bind;
    bind[hp.reg->index_of("r13")] =
        Poly::variable(hp.reg, MonOrder::degrevlex, "r12");
    Poly restricted = rep.det_stripped.substitute(bind);
    Poly factored = parse_poly("2*(4*x^3 - r12^3)*(x^3 - r12^3)", hp.reg);
    CHECK(same_up_to_sign(restricted, factored));
}

TEST_CASE("determinant restriction positive root counts") {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    ThreeBodyReport rep = three_body_determinant(hp, sys);
    RegistryPtr regx = make_registry({"x"});
    // Regression fixture: each sampled distance pair leaves exactly two
    // positive roots in the varying distance.
    const long pairs[5][2] = {{1, 1}, {1, 2}, {2, 3}, {5, 7}, {3, 10}};
    for (const auto& pr : pairs) {
        std::map<int, Poly> bind;
        bind[hp.reg->index_of("r12")] =
            Poly::constant(hp.reg, MonOrder::degrevlex, Rational(pr[0]));
        bind[hp.reg->index_of("r13")] =
            Poly::constant(hp.reg, MonOrder::degrevlex, Rational(pr[1]));
        Poly u = rep.det_stripped.substitute(bind).map_to(regx,
                                                          MonOrder::degrevlex);
        CHECK(sturm_count(u, Rational(0), Rational(1000)) == 2);
    }
}

// ---------------------------------------------------------------- n = 4

TEST_CASE("four-body problem shape") {
    HingeProblem hp = make_hinge_problem(4);
    REQUIRE(hp.n == 4);
    std::vector<std::string> names;
    for (int i = 0; i < hp.reg->size(); ++i) names.push_back(hp.reg->name(i));
    CHECK(names == std::vector<std::string>{"k13", "k14", "k23", "k24", "m1",
                                            "m2", "m3", "x"});
    REQUIRE(hp.reg_params);
    std::vector<std::string> params;
    for (int i = 0; i < hp.reg_params->size(); ++i)
        params.push_back(hp.reg_params->name(i));
    CHECK(params == std::vector<std::string>{"k13", "k14", "k23", "k24", "m1",
                                             "m2", "m3"});
    CHECK(hp.unknowns ==
          std::vector<std::string>{"rho12", "rho13", "rho23", "g34"});
    // Catalog: the eight positive symbols plus the two pivot differences.
    CHECK(hp.catalog->size() == std::size_t{10});
    bool has13 = false, has23 = false;
    for (const Poly& f : *hp.catalog) {
        if (same_up_to_sign(f, parse_poly("k13^3 - x^3", hp.reg))) has13 = true;
        if (same_up_to_sign(f, parse_poly("k23^3 - x^3", hp.reg))) has23 = true;
    }
    CHECK(has13);
    CHECK(has23);

    LinearSystem sys = gddot_system(hp);
    CHECK(sys.row_labels ==
          std::vector<std::string>{"gddot_12", "gddot_13", "gddot_14",
                                   "gddot_23", "gddot_24"});
    CHECK(sys.row_scale == Rational(1) / Rational(2));
    REQUIRE(sys.rows.size() == 5);
    REQUIRE(sys.rows[0].size() == 4);
}

TEST_CASE("four-body matrix matches the reference entries") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    auto rf = [&](const char* t) {
        return RatFunc(parse_poly(t, hp.reg), hp.catalog);
    };
    auto over = [&](RatFunc v, const char* d) {
        return v.divided_by(parse_poly(d, hp.reg));
    };
    RatFunc a24 = over(rf("3/4*x^5"), "k13^2") - over(rf("3/4*x^5"), "k14^2") +
                  rf("k14^3 - 1/4*x^3");
    RatFunc a34 = over(rf("3/4*m3*x^5"), "k14^2") -
                  over(rf("3/4*m3*x^5"), "k13^2") +
                  rf("m3*k13^3 - 1/4*m3*x^3");
    RatFunc a44 = over(rf("3/4*x^5"), "k23^2") - over(rf("3/4*x^5"), "k24^2") +
                  rf("k24^3 - 1/4*x^3");
    RatFunc a54 = over(rf("3/4*m3*x^5"), "k24^2") -
                  over(rf("3/4*m3*x^5"), "k23^2") +
                  rf("m3*k23^3 - 1/4*m3*x^3");
    RatFunc expect[5][4] = {
        {rf("m3*(k13^3-k23^3) + k14^3 - k24^3"), rf("m3*(k23^3-k13^3)"),
         rf("m3*(k13^3-k23^3)"), rf("0")},
        {rf("(k23^3-1)*m2"), rf("m2*(1-k23^3) + k14^3 - x^3"),
         rf("(k23^3-1)*m2"), a24},
        {rf("(k24^3-1)*m2"), rf("m3*(x^3-k13^3)"), rf("0"), a34},
        {rf("(1-k13^3)*m1"), rf("(k13^3-1)*m1"),
         rf("m1*(1-k13^3) + k24^3 - x^3"), a44},
        {rf("(1-k14^3)*m1"), rf("0"), rf("m3*(x^3-k23^3)"), a54},
    };
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 4; ++c) {
            CAPTURE(r);
            CAPTURE(c);
            CHECK(sys.rows[static_cast<std::size_t>(r)]
                          [static_cast<std::size_t>(c)] == expect[r][c]);
        }
}

TEST_CASE("four-body matrix matches an independent numeric assembly") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    std::mt19937 rng(77011);
    auto cb = [](double v) { return v * v * v; };
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> pt = random_point(rng, hp.reg->size());
        double k13 = pt[0], k14 = pt[1], k23 = pt[2], k24 = pt[3];
        double m1 = pt[4], m2 = pt[5], m3 = pt[6], x = pt[7];
        double x3 = cb(x), x5 = x3 * x * x;
        double want[5][4] = {
            {m3 * (cb(k13) - cb(k23)) + cb(k14) - cb(k24),
             m3 * (cb(k23) - cb(k13)), m3 * (cb(k13) - cb(k23)), 0.0},
            {(cb(k23) - 1) * m2, m2 * (1 - cb(k23)) + cb(k14) - x3,
             (cb(k23) - 1) * m2,
             0.75 * x5 / (k13 * k13) - 0.75 * x5 / (k14 * k14) + cb(k14) -
                 0.25 * x3},
            {(cb(k24) - 1) * m2, m3 * (x3 - cb(k13)), 0.0,
             0.75 * m3 * x5 / (k14 * k14) - 0.75 * m3 * x5 / (k13 * k13) +
                 m3 * cb(k13) - 0.25 * m3 * x3},
            {(1 - cb(k13)) * m1, (cb(k13) - 1) * m1,
             m1 * (1 - cb(k13)) + cb(k24) - x3,
             0.75 * x5 / (k23 * k23) - 0.75 * x5 / (k24 * k24) + cb(k24) -
                 0.25 * x3},
            {(1 - cb(k14)) * m1, 0.0, m3 * (x3 - cb(k23)),
             0.75 * m3 * x5 / (k24 * k24) - 0.75 * m3 * x5 / (k23 * k23) +
                 m3 * cb(k23) - 0.25 * m3 * x3}};
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 4; ++c) {
                CAPTURE(r);
                CAPTURE(c);
                double got = eval_rf(sys.rows[static_cast<std::size_t>(r)]
                                             [static_cast<std::size_t>(c)],
                                     pt);
                CHECK(got == doctest::Approx(want[r][c]).epsilon(1e-9));
            }
    }
}

TEST_CASE("four-body elimination sparsity") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    FourBodyElimination el = four_body_eliminate(hp, sys);

    CHECK(el.support == std::vector<int>{0, 3, 5, 6, 8, 9});
    int xvar = hp.reg->index_of("x");
    int nonzero = 0;
    for (const auto& row : el.coeff)
        for (const Poly& c : row) {
            if (c.is_zero()) continue;
            ++nonzero;
            CHECK(c == c.primitive_part());
            CHECK(c.registry() == hp.reg_params);
        }
    CHECK(nonzero == 18);

    const int expect_terms[3] = {256, 162, 162};
    for (int i = 0; i < 3; ++i) {
        CHECK(el.f[static_cast<std::size_t>(i)].degree_in(xvar) == 9);
        CHECK(static_cast<int>(el.f[static_cast<std::size_t>(i)].term_count()) ==
              expect_terms[i]);
    }
    REQUIRE(el.subset.size() == 6);
    const int expect_subset[6] = {23, 8, 12, 19, 19, 4};
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(static_cast<int>(el.subset[i].term_count()) == expect_subset[i]);
}

TEST_CASE("cross determinants reproduce the system minors") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    FourBodyElimination el = four_body_eliminate(hp, sys);
    std::vector<Poly> minors = four_body_minors(hp, sys);
    REQUIRE(minors.size() == 5);

    PositivityContext ctx(hp.reg);
    for (const char* v : {"k13", "k14", "k23", "k24", "m1", "m2", "m3", "x"})
        ctx.declare_positive(v);
    ctx.assume_nonzero(parse_poly("k13^3 - x^3", hp.reg));
    ctx.assume_nonzero(parse_poly("k23^3 - x^3", hp.reg));
    auto strip = [&](const Poly& p) {
        return strip_positive_factors(p, ctx, *hp.catalog).primitive_part();
    };

    // The three solved equations a_i * rho12 = b_i are indexed by the rows
    // gddot_12, gddot_13, gddot_23.  The cross determinant that omits
    // equation i equals (up to nonzero factors) the 4x4 minor of the cleared
    // 5x4 system omitting that same row.
    const int omitted_row[3] = {0, 1, 3};
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        Poly cross = el.a_cleared[static_cast<std::size_t>(j)] *
                         el.b_cleared[static_cast<std::size_t>(k)] -
                     el.a_cleared[static_cast<std::size_t>(k)] *
                         el.b_cleared[static_cast<std::size_t>(j)];
        CAPTURE(i);
        CHECK(same_up_to_sign(
            strip(cross),
            strip(minors[static_cast<std::size_t>(omitted_row[i])])));
    }

    // The published constraints f_i are the stripped minors omitting rows
    // gddot_12, gddot_14, gddot_24.
    const int f_row[3] = {0, 2, 4};
    for (int i = 0; i < 3; ++i)
        CHECK(same_up_to_sign(
            el.f[static_cast<std::size_t>(i)].primitive_part(),
            strip(minors[static_cast<std::size_t>(f_row[i])])));
}

TEST_CASE("minors vanish when all distances coincide") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    std::vector<Poly> minors = four_body_minors(hp, sys);
    std::map<int, Poly> bind;
    for (const char* v : {"k13", "k14", "k23", "k24"})
        bind[hp.reg->index_of(v)] =
            Poly::constant(hp.reg, MonOrder::degrevlex, Rational(1));
    for (const Poly& m : minors) CHECK(m.substitute(bind).is_zero());
}

TEST_CASE("all-distances-equal special case") {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    AllKOneReport akr = special_case_all_k_one(hp, sys);

    CHECK(akr.side2.provenance().empty());
    CHECK(akr.side3.provenance().empty());
    CHECK(akr.side2.num() == parse_poly("1 - 1/4*x^3", hp.reg));
    CHECK(akr.side3.num() == parse_poly("1/4*x^3 - 1", hp.reg));

    RegistryPtr regx = make_registry({"x"});
    CHECK(akr.witness == parse_poly("x^3 - 4", regx));
    CHECK(sturm_count(akr.witness, Rational(0), Rational(10)) == 1);
    CHECK(sturm_count(akr.witness, Rational(1), Rational(2)) == 1);
    CHECK(sturm_count(akr.witness, Rational(0), Rational(1)) == 0);
}
