#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "statfield/action_stationarity.hpp"
#include "statfield/covariance_analysis.hpp"
#include "statfield/field_synthesis.hpp"

using namespace statfield;

namespace {

const GridSpec g = oracles::desk_grid();
const SpectralMeasure F = oracles::desk_measure();

ActionSample fixture_samples() {
    ActionSample s;
    for (int k : {-64, -17, 8, 33, 80}) s.shifts.push_back(Point{g.spacing() * k});
    for (int k = 0; k < 6; ++k) {
        s.pairs.emplace_back(make_bump(Point{-0.5 + 0.2 * k}, 0.5 + 0.05 * k, g),
                             make_bump(Point{0.4 - 0.15 * k}, 0.8 - 0.04 * k, g));
    }
    return s;
}

CovOracle analytic() {
    return [](const TestFunction& phi, const TestFunction& psi) {
        return gamma_analytic(F, phi, psi);
    };
}

// Depends on the centroids of its arguments, hence not translation invariant.
CovOracle centroid_oracle() {
    return [](const TestFunction& phi, const TestFunction& psi) {
        auto moment = [](const TestFunction& f) {
            Complex s(0.0, 0.0);
            for (int i = 0; i < f.grid.points_per_axis; ++i)
                s += f.grid.coord(i) * f.samples[static_cast<std::size_t>(i)];
            return f.grid.spacing() * s;
        };
        return (moment(phi) * std::conj(moment(psi))) * OperatorValue::Identity(2, 2);
    };
}

// Conjugates the analytic covariance by a rotation whose angle depends on the
// first argument's centroid: trace is preserved, the operator value is not.
CovOracle rotated_oracle() {
    return [](const TestFunction& phi, const TestFunction& psi) {
        double cm = 0.0, mass = 0.0;
        for (int i = 0; i < phi.grid.points_per_axis; ++i) {
            const double a = std::abs(phi.samples[static_cast<std::size_t>(i)]);
            cm += phi.grid.coord(i) * a;
            mass += a;
        }
        const double angle = cm / std::max(mass, 1e-12);
        OperatorValue rot(2, 2);
        rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        return OperatorValue(rot * gamma_analytic(F, phi, psi) * rot.adjoint());
    };
}

}  // namespace

TEST_CASE("operator stationarity of the analytic covariance") {
    const auto s = fixture_samples();
    const auto r = check_operator_stationarity(analytic(), s, 1e-10);
    CHECK(r.pass);
    CHECK(r.max_deviation <= 1e-10);

    // constant covariance (single atom at 0) is exactly invariant
    SpectralMeasure single;
    single.dim_space = 1;
    single.dim_h = 2;
    single.atoms.push_back({Point{0.0}, OperatorValue::Identity(2, 2)});
    const CovOracle constant = [&](const TestFunction& a, const TestFunction& b) {
        return gamma_analytic(single, a, b);
    };
    CHECK(check_operator_stationarity(constant, s, 1e-12).max_deviation <= 1e-14);

    const auto bad = check_operator_stationarity(centroid_oracle(), s, 1e-10);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_deviation > 0.1);
    CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("scalar and scalarly modes") {
    const auto s = fixture_samples();
    CHECK(check_scalar_stationarity(analytic(), ScalarMode::Scalar, s, 1e-10, 2).pass);
    CHECK(check_scalar_stationarity(analytic(), ScalarMode::Scalarly, s, 1e-10, 2).pass);

    // implication chain: operator pass at t gives scalar/scalarly pass at n*t
    const auto op = check_operator_stationarity(analytic(), s, 1e-10);
    const auto sc = check_scalar_stationarity(analytic(), ScalarMode::Scalar, s,
                                              2.0 * op.tolerance, 2);
    CHECK((op.pass ? sc.pass : true));

    // trace-preserving rotation: scalar passes, operator fails
    CHECK(check_scalar_stationarity(rotated_oracle(), ScalarMode::Scalar, s, 1e-10, 2).pass);
    CHECK_FALSE(check_operator_stationarity(rotated_oracle(), s, 1e-10).pass);
}

TEST_CASE("intersection stationarity") {
    const GosMeasure xi = make_gos(F, 20000, 42);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> set_pairs = {
        {{0}, {0}}, {{0, 1}, {1, 2}}, {{0, 1, 2}, {1}}, {{0}, {2}},
        {{2}, {0}}, {{1, 2}, {0, 1}}, {{0, 2}, {0, 2}}, {{1}, {}},
    };

    // analytic gos bimeasure
    const SetOracle tau = [&](const std::vector<int>& A, const std::vector<int>& B) {
        return analytic_gramian_of_sets(xi, A, B);
    };
    const auto r = check_intersection_stationarity(tau, set_pairs, 1e-10, 2);
    CHECK(r.pass);

    // empirical version at the statistical tolerance
    const SetOracle emp = [&](const std::vector<int>& A, const std::vector<int>& B) {
        return empirical_gramian(xi_of_set(xi, A), xi_of_set(xi, B));
    };
    const double tol = 5.0 / std::sqrt(double(xi.ensemble_size));
    CHECK(check_intersection_stationarity(emp, set_pairs, tol, 2).pass);

    // symmetry: tau(A,B) = tau(B,A)* for the gos bimeasure
    for (const auto& [A, B] : set_pairs)
        CHECK((tau(A, B) - OperatorValue(tau(B, A).adjoint())).norm() <= 1e-12);

    // product bimeasure is not of intersection form
    const SetOracle product = [&](const std::vector<int>& A, const std::vector<int>& B) {
        OperatorValue fa = OperatorValue::Zero(2, 2), fb = OperatorValue::Zero(2, 2);
        for (int j : A) fa += F.atoms[static_cast<std::size_t>(j)].weight;
        for (int j : B) fb += F.atoms[static_cast<std::size_t>(j)].weight;
        return OperatorValue(fa * fb);
    };
    const auto bad = check_intersection_stationarity(product, set_pairs, 1e-10, 2);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_deviation > 0.1);
}

TEST_CASE("convolution dependence families") {
    const auto s = fixture_samples();
    std::vector<std::vector<std::pair<TestFunction, TestFunction>>> families;
    for (std::size_t p = 0; p < 3; ++p) {
        std::vector<std::pair<TestFunction, TestFunction>> fam;
        fam.push_back(s.pairs[p]);
        for (const auto& x : s.shifts)
            fam.emplace_back(translate(s.pairs[p].first, x), translate(s.pairs[p].second, x));
        families.push_back(fam);
    }
    CHECK(check_convolution_dependence(analytic(), families, 1e-10).pass);
    CHECK_FALSE(check_convolution_dependence(centroid_oracle(), families, 1e-10).pass);

    // single-pair family has nothing to disagree with
    CHECK(check_convolution_dependence(centroid_oracle(), {{s.pairs[0]}}, 0.0).max_deviation ==
          0.0);
}

TEST_CASE("translation and convolution checks agree on every oracle") {
    const auto s = fixture_samples();
    std::vector<std::vector<std::pair<TestFunction, TestFunction>>> families;
    for (std::size_t p = 0; p < s.pairs.size(); ++p) {
        std::vector<std::pair<TestFunction, TestFunction>> fam;
        fam.push_back(s.pairs[p]);
        for (const auto& x : s.shifts)
            fam.emplace_back(translate(s.pairs[p].first, x), translate(s.pairs[p].second, x));
        families.push_back(fam);
    }
    for (const CovOracle& oracle : {analytic(), centroid_oracle(), rotated_oracle()}) {
        const bool rd = check_operator_stationarity(oracle, s, 1e-10).pass;
        const bool conv = check_convolution_dependence(oracle, families, 1e-10).pass;
        CHECK(rd == conv);
    }
}
