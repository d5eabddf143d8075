#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fcover/covering.hpp"
#include "fcover/parse.hpp"

using namespace fcover;

namespace {

GridConfig cfg_1d(double wc, std::int64_t nc, double wa, std::int64_t na) {
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::symmetric(1, wc, nc);
    cfg.atom_grid = GridSpec::symmetric(1, wa, na);
    return cfg;
}

const FunctionExpr kOne = FunctionExpr::one();

}  // namespace

TEST_CASE("instance assembly matches the exact kernel") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    CoveringInstance inst = build_instance(g0, g0, kOne, cfg);
    CHECK(inst.matrix.rows == 241);
    CHECK(inst.matrix.cols == 321);
    for (std::int64_t i : {0L, 57L, 120L, 240L}) {
        for (std::int64_t j : {0L, 13L, 160L, 320L}) {
            const double x = inst.constraint_grid.node(i)[0];
            const double t = inst.atom_grid.node(j)[0];
            const double expect = std::exp(-(x - t) * (x - t) / 2.0);
            const double got = inst.matrix.at(i, j);
            CHECK(std::fabs(got - (expect < 1e-300 ? 0.0 : expect)) <= 1e-15);
        }
    }
    CHECK(inst.density > 0.1);
    CHECK(inst.density < 1.0);
}

TEST_CASE("indicator instance is 0/1 banded") {
    FunctionExpr f = parse_expr("ind_box(0,2)");
    FunctionExpr g = parse_expr("ind_box(0,1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::make_1d(-0.5, 2.5, 61);
    cfg.atom_grid = GridSpec::make_1d(-1.5, 2.5, 81);
    CoveringInstance inst = build_instance(f, g, kOne, cfg);
    for (std::int64_t i = 0; i < inst.matrix.rows; ++i)
        for (std::int64_t j = 0; j < inst.matrix.cols; ++j) {
            const double v = inst.matrix.at(i, j);
            CHECK((v == 0.0 || v == 1.0));
            const double diff = inst.constraint_grid.node(i)[0] - inst.atom_grid.node(j)[0];
            CHECK(v == ((diff >= 0.0 && diff <= 1.0) ? 1.0 : 0.0));
        }
}

TEST_CASE("dimension mismatch is rejected") {
    GridConfig cfg = cfg_1d(4.0, 41, 5.0, 51);
    CHECK_THROWS_AS(build_instance(parse_expr("gauss2(1,0,1)"), parse_expr("gauss(1)"), kOne, cfg),
                    EvalError);
}

TEST_CASE("self-covering of the gaussian is exactly 1") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    CoveringResult r = covering_number(g0, g0, kOne, cfg_1d(6.0, 241, 8.0, 321));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value_primal == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::fabs(r.value_primal - r.value_dual) <= 1e-7 * (1.0 + r.value_primal));
    CHECK(r.mu.mass() == doctest::Approx(r.value_primal).epsilon(1e-9));
    CHECK(r.lower_bound == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.lower_bound <= r.value_primal + 1e-6);
    CHECK(r.value_primal <= r.upper_bound + 1e-6);
}

TEST_CASE("interval covering value is two") {
    FunctionExpr f = parse_expr("ind_box(0,2)");
    FunctionExpr g = parse_expr("ind_box(0,1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::make_1d(-0.5, 2.5, 301);  // step 0.01
    cfg.atom_grid = GridSpec::make_1d(-1.5, 2.5, 401);
    CoveringResult r = covering_number(f, g, kOne, cfg);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value_primal == doctest::Approx(2.0).epsilon(0.025));
    CHECK(std::fabs(r.value_primal - r.value_dual) <= 1e-7 * (1.0 + r.value_primal));
}

TEST_CASE("gaussian sandwich: N(gauss(1/4), gauss(1))") {
    FunctionExpr f = parse_expr("gauss(0.25)");
    FunctionExpr g = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(8.0, 321, 10.0, 401);
    CoveringResult r = covering_number(f, g, kOne, cfg);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value_primal >= 1.98);
    CHECK(r.value_primal <= 3.17);

    BoundsReport b = volume_bounds(f, g, {2.0}, nullptr, cfg);
    CHECK(b.lower_ratio == doctest::Approx(2.0).epsilon(1e-3));
    REQUIRE(b.even_variant.has_value());
    CHECK(b.even_variant->second == doctest::Approx(std::sqrt(10.0)).epsilon(1e-3));
    // constraint sampling can sit a hair below the continuous lower bound
    CHECK(b.best_lower() <= r.value_primal + 5e-4 * (1.0 + r.value_primal));
    CHECK(r.value_primal <= b.best_upper() + 1e-6);
}

TEST_CASE("separation equals covering through the transpose") {
    FunctionExpr f = parse_expr("gauss(0.25)");
    FunctionExpr g = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(8.0, 321, 10.0, 401);
    CoveringResult cov = covering_number(f, g, kOne, cfg);
    // M(f, g-, h) computed as its own program must match N(f, g, h)
    CoveringResult sep = separation_number(f, FunctionExpr::reflect(g), kOne, cfg);
    REQUIRE(cov.status == LpStatus::Optimal);
    REQUIRE(sep.status == LpStatus::Optimal);
    CHECK(std::fabs(cov.value_primal - sep.value_dual) <=
          1e-7 * (1.0 + cov.value_primal));
    // weak duality across the two independent solves
    CHECK(sep.value_dual <= cov.value_primal + 1e-7 * (1.0 + cov.value_primal));
}

TEST_CASE("separation measure is feasible for its constraints") {
    FunctionExpr f = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    CoveringResult sep = separation_number(f, f, kOne, cfg);
    REQUIRE(sep.status == LpStatus::Optimal);
    CHECK(sep.value_dual == doctest::Approx(1.0).epsilon(1e-4));
    // rho * g <= h at every atom-grid node
    const double sup = sup_convolved_measure(sep.rho, f, cfg.atom_grid);
    CHECK(sup <= 1.0 + 1e-7);
}

TEST_CASE("explicit covering measure for the gaussian") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    ExplicitMeasure mu = explicit_covering_measure(g0, g0, cfg);
    CHECK(mu.x0[0] == 0.0);
    CHECK(mu.sup_conv == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-4));
    CHECK(mu.measure.mass() == doctest::Approx(2.0).epsilon(1e-3));

    const double slack = verify_cover(mu.measure, g0, g0, cfg.constraint_grid);
    CHECK(slack >= -1e-6);

    // the explicit mass dominates the LP optimum
    CoveringResult lp = covering_number(g0, g0, kOne, cfg);
    CHECK(lp.value_primal <= mu.measure.mass() + 1e-6);
}

TEST_CASE("explicit separation measure for the gaussian") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    ExplicitMeasure rho = explicit_separation_measure(g0, g0, cfg);
    CHECK(rho.payoff == doctest::Approx(1.0).epsilon(1e-3));
    const double sup = sup_convolved_measure(rho.measure, g0, cfg.atom_grid);
    CHECK(sup <= 1.0 + 1e-6);
    // payoff never exceeds the covering optimum (weak duality)
    CoveringResult lp = covering_number(g0, g0, kOne, cfg);
    CHECK(rho.payoff <= lp.value_primal + 1e-6);
}

TEST_CASE("explicit covering mass never exceeds 2^n int f^2 / ||f*g||") {
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    for (const char* text : {"gauss(1)", "gauss(2)", "expnorm(2,1)"}) {
        FunctionExpr f = parse_expr(text);
        ExplicitMeasure mu = explicit_covering_measure(f, f, cfg);
        SampledFunction f2 = evaluate(FunctionExpr::power(f, 2.0), cfg.atom_grid);
        const double bound = 2.0 * integrate(f2) / mu.sup_conv;
        CHECK(mu.measure.mass() <= bound + 1e-6);
    }
}

TEST_CASE("verify_cover catches the zero measure and passes the identity cover") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridSpec grid = GridSpec::symmetric(1, 6.0, 241);
    GridSpec atoms = GridSpec::symmetric(1, 1.0, 3);  // nodes -1, 0, 1

    DiscreteMeasure zero{atoms, {0.0, 0.0, 0.0}};
    CHECK(verify_cover(zero, g0, g0, grid) == doctest::Approx(-1.0).epsilon(1e-12));

    DiscreteMeasure delta0{atoms, {0.0, 1.0, 0.0}};
    CHECK(verify_cover(delta0, g0, g0, grid) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("volume bounds for the gaussian pair") {
    FunctionExpr g0 = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    BoundsReport b = volume_bounds(g0, g0, {1.5, 2.0, 3.0}, nullptr, cfg);
    CHECK(b.lower_ratio == doctest::Approx(1.0).epsilon(1e-6));
    // int (g0 star g0) / int g0^2 = 2 in one dimension
    CHECK(b.upper_p.at(2.0) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(b.lower_sq == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(b.upper_sq == doctest::Approx(2.0).epsilon(1e-3));
    REQUIRE(b.even_variant.has_value());
    CHECK(b.even_variant->first == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(b.even_variant->second == doctest::Approx(2.0).epsilon(1e-3));
    for (const auto& [p, v] : b.upper_p) CHECK(b.lower_ratio <= v + 1e-9);
}

TEST_CASE("weighted volume bounds bracket the weighted covering value") {
    FunctionExpr f = parse_expr("gauss(0.5)");
    FunctionExpr g = parse_expr("gauss(1)");
    GridConfig cfg = cfg_1d(6.0, 241, 8.0, 321);
    // the weighted lower bound needs h(x+y) <= h(x) h(y); exp(c|x|) qualifies
    std::vector<double> hv(static_cast<size_t>(cfg.atom_grid.size()));
    for (std::int64_t j = 0; j < cfg.atom_grid.size(); ++j)
        hv[static_cast<size_t>(j)] = std::exp(0.5 * cfg.atom_grid.node(j).norm1());
    FunctionExpr h = FunctionExpr::tabulated(cfg.atom_grid, hv);
    BoundsReport b = volume_bounds(f, g, {2.0}, &h, cfg);
    REQUIRE(b.weighted_variant.has_value());
    CoveringResult r = covering_number(f, g, h, cfg);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(b.weighted_variant->first <= r.value_primal + 5e-4 * (1.0 + r.value_primal));
    CHECK(r.value_primal <= b.weighted_variant->second + 1e-6);
}

TEST_CASE("padding violations are rejected unless overridden") {
    FunctionExpr f = parse_expr("ind_box(0,2)");
    FunctionExpr g = parse_expr("ind_box(0,1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::make_1d(-0.5, 2.5, 61);
    cfg.atom_grid = GridSpec::make_1d(-1.0, 0.5, 31);  // cannot reach x near 2
    CHECK_THROWS_AS(build_instance(f, g, kOne, cfg), PaddingError);

    cfg.allow_unpadded = true;
    CoveringInstance inst = build_instance(f, g, kOne, cfg);
    CoveringResult r = covering_number(inst);
    CHECK(r.status == LpStatus::Infeasible);
    CHECK(r.infeasible_row >= 0);
    // the witness constraint indeed has f > 0 and an all-zero kernel row
    const std::int64_t i = r.infeasible_row;
    CHECK(inst.matrix.b[static_cast<size_t>(i)] > 0.0);
    for (std::int64_t j = 0; j < inst.matrix.cols; ++j) CHECK(inst.matrix.at(i, j) == 0.0);
}

TEST_CASE("separation reports its own unboundedness") {
    // payoff mass can sit where no separation constraint reaches it
    FunctionExpr f = parse_expr("gauss(1)");
    FunctionExpr g = parse_expr("ind_box(-0.1,0.1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::symmetric(1, 2.0, 41);  // rho atoms
    cfg.atom_grid = GridSpec::symmetric(1, 0.2, 5);         // constraints
    cfg.allow_unpadded = true;
    CoveringResult r = separation_number(f, g, kOne, cfg);
    CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("2d gaussian self-covering") {
    FunctionExpr g0 = parse_expr("gauss2(1,0,1)");
    GridConfig cfg;
    cfg.constraint_grid = GridSpec::symmetric(2, 3.0, 17);
    cfg.atom_grid = GridSpec::symmetric(2, 4.0, 23);
    CoveringResult r = covering_number(g0, g0, kOne, cfg);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value_primal == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::fabs(r.value_primal - r.value_dual) <= 1e-7 * (1.0 + r.value_primal));
}

TEST_CASE("scaling identity is exact at the LP level") {
    FunctionExpr f = parse_expr("gauss(2)");
    FunctionExpr g = parse_expr("gauss(0.5)");
    GridConfig cfg = cfg_1d(5.0, 101, 7.0, 141);
    const double base = covering_number(f, g, kOne, cfg).value_primal;
    const double scaled =
        covering_number(FunctionExpr::scale_value(f, 2.0), FunctionExpr::scale_value(g, 4.0),
                        FunctionExpr::scale_value(kOne, 8.0), cfg)
            .value_primal;
    CHECK(scaled == doctest::Approx(2.0 * 8.0 / 4.0 * base).epsilon(1e-9));
}
