#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "statfield/kolmogorov_map.hpp"

using namespace statfield;

namespace {
const GridSpec g = oracles::desk_grid();
const SpectralMeasure F = oracles::desk_measure();

const GosMeasure& fixture_gos() {
    static const GosMeasure xi = make_gos(F, 20000, 42);
    return xi;
}

std::vector<TestFunction> fixture_probes() {
    std::vector<TestFunction> probes;
    const TestFunction base = make_bump(Point{0.0}, 0.75, g);
    for (int k = 0; k < 3; ++k) probes.push_back(translate(base, Point{0.25 * k}));
    return probes;
}
}

TEST_CASE("gramian preservation") {
    std::vector<CovariancePair> pairs;
    for (int k = 0; k < 6; ++k)
        pairs.push_back({make_bump(Point{-0.5 + 0.2 * k}, 0.6, g),
                         make_bump(Point{0.4 - 0.18 * k}, 0.7, g)});
    const auto op = verify_isometry(F, fixture_gos(), pairs);
    CHECK(op.pass);
    CHECK(op.max_gramian_deviation <= 1e-10);
    const auto sc = verify_isometry_scalar(F, fixture_gos(), pairs);
    CHECK(sc.pass);

    // single atom at 0, phi = psi: every side equals |integral(phi)|^2 I
    SpectralMeasure single;
    single.dim_space = 1;
    single.dim_h = 2;
    single.atoms.push_back({Point{0.0}, OperatorValue::Identity(2, 2)});
    const GosMeasure xs = make_gos(single, 20000, 3);
    const TestFunction b = make_bump(Point{0.0}, 1.0, g);
    const auto rs = verify_isometry(single, xs, {{b, b}});
    CHECK(rs.pass);
    CHECK(rs.max_gramian_deviation <= 1e-10);
}

TEST_CASE("modularity: left matrix action commutes with the map") {
    const GosMeasure& xi = fixture_gos();
    OperatorValue a(2, 2);
    a << 1.0, Complex(0.5, -0.25), 0.0, 2.0;
    const TestFunction phi = make_bump(Point{0.3}, 0.8, g);
    const TestFunction psi = make_bump(Point{-0.2}, 0.7, g);

    FieldEnsemble u = evaluate_field(xi, phi);
    FieldEnsemble v = evaluate_field(xi, psi);
    FieldEnsemble au = u, av = v;
    for (auto& s : au.samples) s = a * s;
    for (auto& s : av.samples) s = a * s;

    const OperatorValue lhs = empirical_gramian(au, av);
    const OperatorValue rhs = a * empirical_gramian(u, v) * a.adjoint();
    CHECK((lhs - rhs).norm() <= 1e-10);
}

TEST_CASE("xi reconstruction from indicator pullbacks") {
    const GosMeasure& xi = fixture_gos();
    const auto probes = fixture_probes();

    const auto all = reconstruct_xi(F, xi, {0, 1, 2}, probes);
    CHECK(all.pass);
    CHECK(all.max_sample_deviation <= 1e-6);
    CHECK(all.condition_number < kProbeConditionLimit);

    const auto single = reconstruct_xi(F, xi, {0}, probes);
    CHECK(single.pass);

    const auto empty = reconstruct_xi(F, xi, {}, probes);
    CHECK(empty.max_sample_deviation <= 1e-8);

    CHECK_THROWS_AS(reconstruct_xi(F, xi, {0}, {probes[0]}), ConditioningError);
    CHECK_THROWS_AS(reconstruct_xi(F, xi, {9}, probes), ValidationError);
}

TEST_CASE("time domain span residuals") {
    const GosMeasure& xi = fixture_gos();
    const auto r = verify_time_domain(F, xi, fixture_probes());
    CHECK(r.pass);
    REQUIRE(r.residuals.size() == 3);
    for (double res : r.residuals) CHECK(res <= 1e-8);

    CHECK_THROWS_AS(verify_time_domain(F, xi, {fixture_probes()[0]}), ConditioningError);

    // single atom: any probe with nonvanishing transform spans everything
    SpectralMeasure single;
    single.dim_space = 1;
    single.dim_h = 2;
    single.atoms.push_back({Point{0.5}, OperatorValue::Identity(2, 2)});
    const GosMeasure xs = make_gos(single, 200, 3);
    const auto rs = verify_time_domain(single, xs, {make_bump(Point{0.0}, 1.0, g)});
    CHECK(rs.residuals[0] <= 1e-10);
}

TEST_CASE("norm measure") {
    const GosMeasure& xi = fixture_gos();
    const auto r = verify_norm_measure(F, xi, {{}, {2}, {0, 1}, {0, 1, 2}});
    CHECK(r.pass);
    CHECK(r.max_analytic_deviation <= 1e-10);
    CHECK(r.max_empirical_deviation <= 5.0 / std::sqrt(double(xi.ensemble_size)));
}
