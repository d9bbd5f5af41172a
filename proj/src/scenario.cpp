#include "statfield/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "statfield/action_stationarity.hpp"
#include "statfield/covariance_analysis.hpp"
#include "statfield/field_synthesis.hpp"
#include "statfield/kolmogorov_map.hpp"
#include "statfield/report_json.hpp"
#include "statfield/rng.hpp"

namespace statfield {

namespace {

using nlohmann::json;

struct Ctx {
    const Scenario& sc;
    GosMeasure xi;
    double stat_tol;  // 5/sqrt(M)

    const GridSpec& grid() const { return sc.grid; }
    int d() const { return sc.grid.dim; }
    double h() const { return sc.grid.spacing(); }
    const SpectralMeasure& F() const { return sc.measure; }

    // Deterministic draws keyed off the scenario seed.
    double rand_real(std::uint64_t tag, std::uint64_t k, double lo, double hi) const {
        return lo + (hi - lo) * rng::uniform(rng::key(sc.seed ^ 0x5157ULL, tag, k, 0));
    }
    int rand_cells(std::uint64_t tag, std::uint64_t k, int max_cells) const {
        const double u = rng::uniform(rng::key(sc.seed ^ 0x51c3ULL, tag, k, 1));
        int c = static_cast<int>(std::floor(u * (2 * max_cells + 1))) - max_cells;
        return std::min(std::max(c, -max_cells), max_cells);
    }
    Point aligned_shift(std::uint64_t tag, std::uint64_t k, int max_cells) const {
        Point x(static_cast<std::size_t>(d()), 0.0);
        for (int a = 0; a < d(); ++a)
            x[static_cast<std::size_t>(a)] = h() * rand_cells(tag, k * 16 + static_cast<std::uint64_t>(a), max_cells);
        return x;
    }
    Point pt(double first) const {
        Point p(static_cast<std::size_t>(d()), 0.0);
        p[0] = first;
        return p;
    }
    TestFunction bump(std::uint64_t tag, std::uint64_t k, double max_center, double rlo,
                      double rhi) const {
        Point c(static_cast<std::size_t>(d()), 0.0);
        for (int a = 0; a < d(); ++a)
            c[static_cast<std::size_t>(a)] =
                rand_real(tag, k * 16 + 8 + static_cast<std::uint64_t>(a), -max_center, max_center);
        return make_bump(c, rand_real(tag, k * 16 + 15, rlo, rhi), grid());
    }
    std::vector<CovariancePair> bump_pairs(std::uint64_t tag, std::size_t count,
                                           double max_center = 0.6, double rlo = 0.5,
                                           double rhi = 0.9) const {
        std::vector<CovariancePair> pairs;
        for (std::size_t k = 0; k < count; ++k)
            pairs.push_back({bump(tag, 2 * k, max_center, rlo, rhi),
                             bump(tag, 2 * k + 1, max_center, rlo, rhi)});
        return pairs;
    }
    CovOracle analytic_oracle() const {
        const SpectralMeasure& m = sc.measure;
        return [&m](const TestFunction& phi, const TestFunction& psi) {
            return gamma_analytic(m, phi, psi);
        };
    }
    // First-moment oracle: depends on the centroids, so it is not stationary.
    CovOracle moment_oracle() const {
        const int n = sc.dim_h;
        return [n](const TestFunction& phi, const TestFunction& psi) {
            auto moment = [](const TestFunction& f) {
                Complex s(0.0, 0.0);
                const int N = f.grid.points_per_axis;
                for (std::size_t k = 0; k < f.samples.size(); ++k)
                    s += f.grid.coord(unflatten(k, N, f.grid.dim)[0]) * f.samples[k];
                return std::pow(f.grid.spacing(), f.grid.dim) * s;
            };
            return static_cast<OperatorValue>(moment(phi) * std::conj(moment(psi)) *
                                              OperatorValue::Identity(n, n));
        };
    }
    // Conjugates the analytic covariance by a rotation driven by the centroid
    // of the first argument: trace-preserving, so scalar stationarity
    // survives while operator stationarity breaks.
    CovOracle rotated_oracle() const {
        const SpectralMeasure& m = sc.measure;
        const int n = sc.dim_h;
        return [&m, n](const TestFunction& phi, const TestFunction& psi) {
            const int N = phi.grid.points_per_axis;
            Complex s(0.0, 0.0), mass(0.0, 0.0);
            for (std::size_t k = 0; k < phi.samples.size(); ++k) {
                s += phi.grid.coord(unflatten(k, N, phi.grid.dim)[0]) * phi.samples[k];
                mass += phi.samples[k];
            }
            const double theta = std::abs(mass) > 0 ? (s / mass).real() : 0.0;
            OperatorValue W = OperatorValue::Identity(n, n);
            W(0, 0) = Complex(std::cos(theta), 0.0);
            W(0, 1) = Complex(-std::sin(theta), 0.0);
            W(1, 0) = Complex(std::sin(theta), 0.0);
            W(1, 1) = Complex(std::cos(theta), 0.0);
            return static_cast<OperatorValue>(W * gamma_analytic(m, phi, psi) * W.adjoint());
        };
    }
    std::vector<std::vector<int>> atom_subsets() const {
        const std::size_t J = sc.measure.atoms.size();
        std::vector<std::vector<int>> subsets;
        for (std::size_t mask = 0; mask < (std::size_t{1} << J); ++mask) {
            std::vector<int> s;
            for (std::size_t j = 0; j < J; ++j)
                if (mask & (std::size_t{1} << j)) s.push_back(static_cast<int>(j));
            subsets.push_back(std::move(s));
        }
        return subsets;
    }
    std::vector<TestFunction> time_domain_probes() const {
        // Translated copies of one bump: Fourier rows form a generalized
        // Vandermonde system.
        std::vector<TestFunction> probes;
        const TestFunction base = make_bump(pt(0.0), 0.75, grid());
        const std::size_t J = sc.measure.atoms.size();
        for (std::size_t i = 0; i < J; ++i)
            probes.push_back(translate(base, pt(0.25 * static_cast<double>(i))));
        return probes;
    }
};

json check_action_laws(Ctx& ctx, double tol) {
    const TestFunction phi = make_bump(ctx.pt(0.0), 1.0, ctx.grid());
    double dev = max_distance(translate(phi, Point(static_cast<std::size_t>(ctx.d()), 0.0)), phi);
    for (int k = 0; k < 20; ++k) {
        const Point x1 = ctx.aligned_shift(1, static_cast<std::uint64_t>(2 * k), 24);
        const Point x2 = ctx.aligned_shift(1, static_cast<std::uint64_t>(2 * k + 1), 24);
        Point sum = x1;
        for (int a = 0; a < ctx.d(); ++a) sum[static_cast<std::size_t>(a)] += x2[static_cast<std::size_t>(a)];
        dev = std::max(dev, max_distance(translate(translate(phi, x1), x2), translate(phi, sum)));
        Point neg = x1;
        for (auto& v : neg) v = -v;
        dev = std::max(dev, max_distance(translate(translate(phi, x1), neg), phi));
    }
    return {{"max_deviation", dev}, {"tolerance", tol}, {"pass", dev <= tol}};
}

json check_convolution_invariance(Ctx& ctx, double tol) {
    double dev = 0.0;
    for (const auto& p : ctx.bump_pairs(2, 5, 0.5, 0.5, 0.9)) {
        const TestFunction base = convolve(p.phi, involute(p.psi));
        for (int k = 0; k < 10; ++k) {
            const Point x = ctx.aligned_shift(3, static_cast<std::uint64_t>(k), 32);
            dev = std::max(dev, max_distance(
                                    convolve(translate(p.phi, x), involute(translate(p.psi, x))),
                                    base));
        }
    }
    return {{"max_deviation", dev}, {"tolerance", tol}, {"pass", dev <= tol}};
}

json check_covariance_factorization(Ctx& ctx, double tol) {
    const auto pairs = ctx.bump_pairs(4, 6);
    double chain_dev = 0.0;
    for (const auto& p : pairs) {
        const OperatorValue lhs = gamma_analytic(ctx.F(), p.phi, p.psi);
        const OperatorValue rhs = l2_gramian(
            [&](const Point& w) { return fourier_at(p.phi, w); },
            [&](const Point& w) { return fourier_at(p.psi, w); }, ctx.F());
        chain_dev = std::max(chain_dev, (lhs - rhs).norm());
    }

    std::vector<Point> shifts;
    for (int k = 0; k < 5; ++k) shifts.push_back(ctx.aligned_shift(5, static_cast<std::uint64_t>(k), 32));
    const auto est = extract_spectral_distribution(ctx.analytic_oracle(), pairs, shifts);
    const auto bad = extract_spectral_distribution(ctx.moment_oracle(), pairs, shifts);

    const bool pass = chain_dev <= tol && est.valid && est.consistency_deviation <= 1e-10 &&
                      !bad.valid && bad.consistency_deviation > 0.1;
    return {{"chain_deviation", chain_dev},
            {"consistency_deviation", est.consistency_deviation},
            {"counterexample_deviation", bad.consistency_deviation},
            {"tolerance", tol},
            {"pass", pass}};
}

json check_trace_link(Ctx& ctx, double tol) {
    const auto pairs = ctx.bump_pairs(6, 10);
    const ScalarMeasure nu = trace_measure(ctx.F());
    double analytic_dev = 0.0, empirical_dev = 0.0;
    for (const auto& p : pairs) {
        const TestFunction probe = convolve(p.phi, involute(p.psi));
        const Complex k_val = k_scalar(nu, probe);
        analytic_dev = std::max(analytic_dev, std::abs(k_of(ctx.F(), probe).trace() - k_val));
        const OperatorValue emp =
            empirical_gramian(evaluate_field(ctx.xi, p.phi), evaluate_field(ctx.xi, p.psi));
        empirical_dev =
            std::max(empirical_dev, std::abs(emp.trace() - k_val) / std::max(std::abs(k_val), 1.0));
    }
    const bool pass = analytic_dev <= tol && empirical_dev <= ctx.stat_tol;
    return {{"analytic_deviation", analytic_dev},
            {"empirical_deviation", empirical_dev},
            {"tolerance", tol},
            {"empirical_tolerance", ctx.stat_tol},
            {"pass", pass}};
}

json check_positive_definiteness(Ctx& ctx, double tol) {
    double min_eig = std::numeric_limits<double>::infinity();
    std::vector<TestFunction> test_set;
    for (int k = 0; k < 10; ++k) {
        TestFunction phi = ctx.bump(8, static_cast<std::uint64_t>(k), 0.6, 0.5, 0.9);
        min_eig = std::min(min_eig,
                           psd_check(k_of(ctx.F(), convolve(phi, involute(phi)))).min_eigenvalue);
        if (k % 2 == 1) phi = phi + Complex(0.0, 1.0) * ctx.bump(9, static_cast<std::uint64_t>(k), 0.6, 0.5, 0.9);
        test_set.push_back(phi);
    }
    const auto sa = selfadjointness_check(ctx.F(), test_set);
    const auto pos = positivity_integral_check(ctx.F(), make_bump(ctx.pt(0.0), 1.0, ctx.grid()));
    const bool pass = min_eig >= -tol && sa.pass && pos.pass;
    return {{"min_eigenvalue", min_eig},
            {"tolerance", tol},
            {"selfadjointness", json(sa)},
            {"positivity_integral", json(pos)},
            {"pass", pass}};
}

json check_isometry(Ctx& ctx, double tol) {
    const auto pairs = ctx.bump_pairs(10, 6);
    const auto op = verify_isometry(ctx.F(), ctx.xi, pairs, tol);
    const auto sc = verify_isometry_scalar(ctx.F(), ctx.xi, pairs, tol);
    return {{"operator", json(op)}, {"scalar", json(sc)}, {"tolerance", tol},
            {"pass", op.pass && sc.pass}};
}

json check_spectral_representation(Ctx& ctx, double tol) {
    const auto subsets = ctx.atom_subsets();
    double gos_analytic = 0.0, gos_empirical = 0.0;
    for (const auto& A : subsets) {
        const FieldEnsemble XA = xi_of_set(ctx.xi, A);
        for (const auto& B : subsets) {
            OperatorValue expected = OperatorValue::Zero(ctx.sc.dim_h, ctx.sc.dim_h);
            for (int j : A)
                for (int k : B)
                    if (j == k) expected += ctx.F().atoms[static_cast<std::size_t>(j)].weight;
            gos_analytic = std::max(
                gos_analytic, (analytic_gramian_of_sets(ctx.xi, A, B) - expected).norm());
            const OperatorValue emp = empirical_gramian(XA, xi_of_set(ctx.xi, B));
            gos_empirical = std::max(
                gos_empirical, (emp - expected).norm() / std::max(expected.norm(), 1.0));
        }
    }
    const auto norm_rep = verify_norm_measure(ctx.F(), ctx.xi, subsets);
    const auto probes = ctx.time_domain_probes();
    const auto span = verify_time_domain(ctx.F(), ctx.xi, probes, tol);
    std::vector<int> all_atoms;
    for (std::size_t j = 0; j < ctx.F().atoms.size(); ++j) all_atoms.push_back(static_cast<int>(j));
    const auto rec_all = reconstruct_xi(ctx.F(), ctx.xi, all_atoms, probes, tol);
    const auto rec_one = reconstruct_xi(ctx.F(), ctx.xi, {0}, probes, tol);

    const bool pass = gos_analytic <= 1e-10 && gos_empirical <= ctx.stat_tol && norm_rep.pass &&
                      span.pass && rec_all.pass && rec_one.pass;
    return {{"gos_analytic_deviation", gos_analytic},
            {"gos_empirical_deviation", gos_empirical},
            {"empirical_tolerance", ctx.stat_tol},
            {"norm_measure", json(norm_rep)},
            {"time_domain", json(span)},
            {"reconstruction_all", json(rec_all)},
            {"reconstruction_single", json(rec_one)},
            {"tolerance", tol},
            {"pass", pass}};
}

json check_stationarity(Ctx& ctx, double tol) {
    ActionSample samples;
    for (int k = 0; k < 5; ++k) samples.shifts.push_back(ctx.aligned_shift(12, static_cast<std::uint64_t>(k), 32));
    for (const auto& p : ctx.bump_pairs(13, 6)) samples.pairs.emplace_back(p.phi, p.psi);

    const auto op = check_operator_stationarity(ctx.analytic_oracle(), samples, tol);
    const auto sc = check_scalar_stationarity(ctx.analytic_oracle(), ScalarMode::Scalar, samples, tol,
                                              ctx.sc.dim_h);
    const auto sly = check_scalar_stationarity(ctx.analytic_oracle(), ScalarMode::Scalarly, samples,
                                               tol, ctx.sc.dim_h);

    const auto rot_op = check_operator_stationarity(ctx.rotated_oracle(), samples, tol);
    const auto rot_sc = check_scalar_stationarity(ctx.rotated_oracle(), ScalarMode::Scalar, samples,
                                                  tol, ctx.sc.dim_h);
    const auto bad_op = check_operator_stationarity(ctx.moment_oracle(), samples, tol);

    // D_d-stationarity: families of pairs sharing one value of phi * psi~.
    std::vector<std::vector<std::pair<TestFunction, TestFunction>>> families;
    for (std::size_t p = 0; p < 3 && p < samples.pairs.size(); ++p) {
        std::vector<std::pair<TestFunction, TestFunction>> family;
        family.push_back(samples.pairs[p]);
        for (const auto& x : samples.shifts)
            family.emplace_back(translate(samples.pairs[p].first, x),
                                translate(samples.pairs[p].second, x));
        families.push_back(std::move(family));
    }
    const auto conv_good = check_convolution_dependence(ctx.analytic_oracle(), families, tol);
    const auto conv_bad = check_convolution_dependence(ctx.moment_oracle(), families, tol);

    // Intersection stationarity on a cross pair sharing the gos base.
    const std::size_t J = ctx.F().atoms.size();
    std::vector<OperatorValue> right(J);
    OperatorValue D = OperatorValue::Zero(ctx.sc.dim_h, ctx.sc.dim_h);
    D(0, 0) = Complex(1.0, 0.0);
    for (std::size_t j = 0; j < J; ++j) right[j] = ctx.xi.factors[j] * D;
    SetOracle cross_tau = [&](const std::vector<int>& A, const std::vector<int>& B) {
        OperatorValue v = OperatorValue::Zero(ctx.sc.dim_h, ctx.sc.dim_h);
        for (int j : A)
            for (int k : B)
                if (j == k)
                    v += ctx.xi.factors[static_cast<std::size_t>(j)] *
                         right[static_cast<std::size_t>(j)].adjoint();
        return v;
    };
    SetOracle product_tau = [&](const std::vector<int>& A, const std::vector<int>& B) {
        OperatorValue fa = OperatorValue::Zero(ctx.sc.dim_h, ctx.sc.dim_h);
        OperatorValue fb = fa;
        for (int j : A) fa += ctx.F().atoms[static_cast<std::size_t>(j)].weight;
        for (int j : B) fb += ctx.F().atoms[static_cast<std::size_t>(j)].weight;
        return static_cast<OperatorValue>(fa * fb);
    };
    std::vector<std::pair<std::vector<int>, std::vector<int>>> set_samples;
    const auto subsets = ctx.atom_subsets();
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = 0; b < subsets.size(); ++b)
            if ((a + b) % 3 == 0) set_samples.push_back({subsets[a], subsets[b]});
    const auto inter_good =
        check_intersection_stationarity(cross_tau, set_samples, tol, ctx.sc.dim_h);
    const auto inter_bad =
        check_intersection_stationarity(product_tau, set_samples, tol, ctx.sc.dim_h);

    // Empirical intersection bimeasure from the shared noise.
    double inter_emp_dev = 0.0;
    {
        FieldEnsemble eta;
        eta.dim_h = ctx.sc.dim_h;
        for (const auto& [A, B] : set_samples) {
            const FieldEnsemble XA = xi_of_set(ctx.xi, A);
            FieldEnsemble YB;
            YB.dim_h = ctx.sc.dim_h;
            YB.samples.assign(static_cast<std::size_t>(ctx.xi.ensemble_size),
                              Eigen::VectorXcd::Zero(ctx.sc.dim_h));
            for (int j : B)
                for (int m = 0; m < ctx.xi.ensemble_size; ++m)
                    YB.samples[static_cast<std::size_t>(m)] +=
                        right[static_cast<std::size_t>(j)] *
                        ctx.xi.noise[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
            inter_emp_dev = std::max(inter_emp_dev,
                                     (empirical_gramian(XA, YB) - cross_tau(A, B)).norm() /
                                         std::max(cross_tau(A, B).norm(), 1.0));
        }
    }

    const bool pass = op.pass && sc.pass && sly.pass && !rot_op.pass && rot_sc.pass &&
                      !bad_op.pass && conv_good.pass && !conv_bad.pass && inter_good.pass &&
                      !inter_bad.pass && inter_emp_dev <= ctx.stat_tol;
    return {{"operator", json(op)},
            {"scalar", json(sc)},
            {"scalarly", json(sly)},
            {"rotated_operator", json(rot_op)},
            {"rotated_scalar", json(rot_sc)},
            {"nonstationary_operator", json(bad_op)},
            {"convolution_dependence", json(conv_good)},
            {"convolution_dependence_counterexample", json(conv_bad)},
            {"intersection", json(inter_good)},
            {"intersection_counterexample", json(inter_bad)},
            {"intersection_empirical_deviation", inter_emp_dev},
            {"tolerance", tol},
            {"pass", pass}};
}

json check_classical_coherence(Ctx& ctx, double tol) {
    const ClassicalField field = synthesize_classical(ctx.xi, ctx.grid());
    const auto moll = mollifier_limit_check(field, ctx.pt(1.0), ctx.pt(0.5), ctx.pt(-0.25),
                                            {0.5, 0.25, 0.125}, tol);

    // Translation coherence: U_{tau_x F}(phi) = U_F(tau_{-x} phi) per sample.
    const TestFunction phi = make_bump(ctx.pt(0.25), 0.75, ctx.grid());
    const Point x = ctx.pt(0.5);
    Point neg = x;
    for (auto& v : neg) v = -v;
    const FieldEnsemble lhs = embed_classical_field(translate(field, x), phi);
    const FieldEnsemble rhs = embed_classical_field(field, translate(phi, neg));
    double coherence_dev = 0.0;
    for (int m = 0; m < lhs.size(); ++m)
        coherence_dev = std::max(coherence_dev, (lhs.samples[static_cast<std::size_t>(m)] -
                                                 rhs.samples[static_cast<std::size_t>(m)])
                                                    .norm());

    // Centered even probe: the embedded field and the spectral synthesis
    // coincide up to quadrature error.
    const TestFunction even = make_bump(ctx.pt(0.0), 1.0, ctx.grid());
    const FieldEnsemble emb = embed_classical_field(field, even);
    const FieldEnsemble dir = evaluate_field(ctx.xi, even);
    double embed_dev = 0.0;
    for (int m = 0; m < emb.size(); ++m)
        embed_dev = std::max(embed_dev, (emb.samples[static_cast<std::size_t>(m)] -
                                         dir.samples[static_cast<std::size_t>(m)])
                                            .norm());

    const bool pass = moll.pass && coherence_dev <= 1e-10 && embed_dev <= 1e-6;
    return {{"mollifier", json(moll)},
            {"translation_coherence_deviation", coherence_dev},
            {"embed_deviation", embed_dev},
            {"tolerance", tol},
            {"pass", pass}};
}

json check_fit_round_trip(Ctx& ctx, double tol) {
    // Narrow bumps keep |F phi| well away from zero at every candidate
    // frequency; spread centers add phase diversity. Both keep the design
    // matrix well conditioned, so table noise is not amplified.
    const auto pairs = ctx.bump_pairs(20, 10, 1.5, 0.15, 0.25);
    std::vector<Point> candidates;
    for (const auto& atom : ctx.F().atoms) candidates.push_back(atom.frequency);

    CovarianceTable analytic;
    analytic.pairs = pairs;
    for (const auto& p : pairs) analytic.values.push_back(gamma_analytic(ctx.F(), p.phi, p.psi));
    const FitResult exact = fit_spectral_measure(analytic, candidates);
    double exact_dev = 0.0;
    for (std::size_t j = 0; j < candidates.size(); ++j)
        exact_dev = std::max(exact_dev,
                             (exact.measure.atoms[j].weight - ctx.F().atoms[j].weight).norm());

    CovarianceTable empirical;
    empirical.pairs = pairs;
    empirical.empirical = true;
    empirical.ensemble_size = ctx.xi.ensemble_size;
    empirical.seed = ctx.xi.seed;
    for (const auto& p : pairs)
        empirical.values.push_back(
            empirical_gramian(evaluate_field(ctx.xi, p.phi), evaluate_field(ctx.xi, p.psi)));
    const FitResult noisy = fit_spectral_measure(empirical, candidates);
    double noisy_dev = 0.0;
    for (std::size_t j = 0; j < candidates.size(); ++j)
        noisy_dev = std::max(noisy_dev,
                             (noisy.measure.atoms[j].weight - ctx.F().atoms[j].weight).norm() /
                                 ctx.F().atoms[j].weight.norm());

    // 0.1 at the reference ensemble size M = 20000, scaling as 1/sqrt(M).
    const double noisy_tol =
        0.1 * std::sqrt(20000.0 / static_cast<double>(ctx.xi.ensemble_size));
    const bool pass = exact_dev <= tol && noisy_dev <= noisy_tol;
    return {{"analytic_atom_deviation", exact_dev},
            {"empirical_atom_deviation", noisy_dev},
            {"analytic_residual", exact.residual},
            {"empirical_residual", noisy.residual},
            {"tolerance", tol},
            {"empirical_tolerance", noisy_tol},
            {"pass", pass}};
}

struct CheckEntry {
    std::string name;
    double default_tolerance;
    std::function<json(Ctx&, double)> fn;
};

const std::vector<CheckEntry>& registry() {
    static const std::vector<CheckEntry> entries = {
        {"action_laws", 0.0, check_action_laws},
        {"convolution_invariance", 0.0, check_convolution_invariance},
        {"covariance_factorization", 1e-8, check_covariance_factorization},
        {"trace_link", 1e-12, check_trace_link},
        {"positive_definiteness", 1e-10, check_positive_definiteness},
        {"isometry", 1e-8, check_isometry},
        {"spectral_representation", 1e-6, check_spectral_representation},
        {"stationarity", 1e-10, check_stationarity},
        {"classical_coherence", 0.05, check_classical_coherence},
        {"fit_round_trip", 1e-6, check_fit_round_trip},
    };
    return entries;
}

}  // namespace

std::vector<std::string> registered_checks() {
    std::vector<std::string> names;
    for (const auto& e : registry()) names.push_back(e.name);
    return names;
}

Scenario parse_scenario(const json& config) {
    Scenario sc;
    auto require = [&](const json& node, const char* key, const std::string& path) -> const json& {
        if (!node.contains(key)) throw ValidationError("missing field at " + path + "/" + key);
        return node.at(key);
    };
    const json& grid = require(config, "grid", "");
    try {
        sc.grid.dim = require(grid, "dim", "/grid").get<int>();
        sc.grid.half_width = require(grid, "half_width", "/grid").get<double>();
        sc.grid.points_per_axis = require(grid, "points_per_axis", "/grid").get<int>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid value under /grid: ") + e.what());
    }
    try {
        sc.grid.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("invalid /grid: ") + e.what());
    }
    try {
        sc.dim_h = require(config, "n", "").get<int>();
        sc.measure = require(config, "measure", "").get<SpectralMeasure>();
        sc.ensemble_size = require(config, "ensemble_size", "").get<int>();
        sc.seed = require(config, "seed", "").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid scenario value: ") + e.what());
    }
    if (sc.dim_h < 1 || sc.dim_h > 8) throw ValidationError("invalid /n: must be in [1,8]");
    if (sc.measure.dim_h != sc.dim_h)
        throw ValidationError("/measure/n does not match /n");
    if (sc.measure.dim_space != sc.grid.dim)
        throw ValidationError("/measure/d does not match /grid/dim");
    if (sc.ensemble_size < 100) throw ValidationError("invalid /ensemble_size: must be >= 100");
    const auto v = validate(sc.measure);
    if (!v.valid) throw ValidationError("invalid /measure: " + v.message);
    if (config.contains("output_dir")) sc.output_dir = config.at("output_dir").get<std::string>();
    if (config.contains("checks")) {
        for (std::size_t i = 0; i < config.at("checks").size(); ++i) {
            const json& jc = config.at("checks").at(i);
            CheckSpec spec;
            if (jc.is_string()) {
                spec.name = jc.get<std::string>();
            } else {
                spec.name = require(jc, "name", "/checks/" + std::to_string(i)).get<std::string>();
                if (jc.contains("tolerance")) spec.tolerance = jc.at("tolerance").get<double>();
            }
            bool known = false;
            for (const auto& e : registry())
                if (e.name == spec.name) known = true;
            if (!known)
                throw ValidationError("unknown check at /checks/" + std::to_string(i) + ": " +
                                      spec.name);
            sc.checks.push_back(std::move(spec));
        }
    }
    return sc;
}

SpectralMeasure fixture_measure() {
    SpectralMeasure F;
    F.dim_space = 1;
    F.dim_h = 2;
    OperatorValue F1 = OperatorValue::Zero(2, 2);
    F1(0, 0) = 1.0;
    OperatorValue F2(2, 2);
    F2 << Complex(0.5, 0.0), Complex(0.25, 0.0), Complex(0.25, 0.0), Complex(0.5, 0.0);
    OperatorValue F3 = 0.5 * OperatorValue::Identity(2, 2);
    F.atoms = {{{0.0}, F1}, {{1.0}, F2}, {{-2.0}, F3}};
    return F;
}

Scenario demo_scenario(std::uint64_t seed, int ensemble_size) {
    Scenario sc;
    sc.grid = {1, 8.0, 512};
    sc.dim_h = 2;
    sc.measure = fixture_measure();
    sc.ensemble_size = ensemble_size;
    sc.seed = seed;
    sc.output_dir = "statfield_demo_out";
    return sc;
}

json run_checks(const Scenario& scenario) {
    Ctx ctx{scenario, make_gos(scenario.measure, scenario.ensemble_size, scenario.seed),
            5.0 / std::sqrt(static_cast<double>(scenario.ensemble_size))};

    std::vector<CheckSpec> selected = scenario.checks;
    if (selected.empty())
        for (const auto& e : registry()) selected.push_back({e.name, std::nullopt});

    json checks = json::array();
    bool overall = true;
    for (const auto& spec : selected) {
        const CheckEntry* entry = nullptr;
        for (const auto& e : registry())
            if (e.name == spec.name) entry = &e;
        if (!entry) throw ValidationError("unknown check: " + spec.name);
        const double tol = spec.tolerance.value_or(entry->default_tolerance);
        const auto t0 = std::chrono::steady_clock::now();
        json result = entry->fn(ctx, tol);
        const auto t1 = std::chrono::steady_clock::now();
        result["name"] = spec.name;
        result["time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        overall = overall && result.at("pass").get<bool>();
        checks.push_back(std::move(result));
    }

    json report;
    report["tool_version"] = kToolVersion;
    report["overall_pass"] = overall;
    report["checks"] = std::move(checks);
    return report;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run_and_write(const Scenario& scenario, const json& config_for_hash) {
    json report = run_checks(scenario);
    {
        std::ostringstream os;
        os << std::hex << fnv1a_hash(config_for_hash.dump());
        report["config_hash"] = os.str();
    }

    std::filesystem::create_directories(scenario.output_dir);
    write_text_atomic((std::filesystem::path(scenario.output_dir) / "report.json").string(),
                      report.dump(2) + "\n");

    // Numeric artifact: one synthesized field ensemble for external tools.
    const GosMeasure xi = make_gos(scenario.measure, scenario.ensemble_size, scenario.seed);
    Point center(static_cast<std::size_t>(scenario.grid.dim), 0.0);
    write_ensemble_csv(
        (std::filesystem::path(scenario.output_dir) / "field_samples.csv").string(),
        evaluate_field(xi, make_bump(center, 1.0, scenario.grid)));

    for (const auto& c : report.at("checks"))
        std::cout << (c.at("pass").get<bool>() ? "PASS " : "FAIL ")
                  << c.at("name").get<std::string>() << "\n";
    std::cout << (report.at("overall_pass").get<bool>() ? "PASS" : "FAIL") << " overall\n";
    return report.at("overall_pass").get<bool>() ? 0 : 1;
}

int run_scenario_file(const std::string& config_path, const std::string& out_override) {
    json config;
    Scenario scenario;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config " << config_path << "\n";
            return 2;
        }
        config = json::parse(in);
        scenario = parse_scenario(config);
    } catch (const json::exception& e) {
        std::cerr << "error: invalid JSON in " << config_path << ": " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!out_override.empty()) scenario.output_dir = out_override;
    return run_and_write(scenario, config);
}

int run_fit_file(const std::string& table_path, const std::vector<double>& frequencies,
                 const std::string& out_path) {
    try {
        std::ifstream in(table_path);
        if (!in) {
            std::cerr << "error: cannot read table " << table_path << "\n";
            return 2;
        }
        const json jt = json::parse(in);
        GridSpec grid;
        grid.dim = jt.at("grid").at("dim").get<int>();
        grid.half_width = jt.at("grid").at("half_width").get<double>();
        grid.points_per_axis = jt.at("grid").at("points_per_axis").get<int>();
        grid.validate();
        const int n = jt.at("n").get<int>();

        CovarianceTable table;
        for (const auto& jp : jt.at("pairs")) {
            CovariancePair pair;
            pair.phi = make_bump(jp.at("phi").at("center").get<Point>(),
                                 jp.at("phi").at("radius").get<double>(), grid);
            pair.psi = make_bump(jp.at("psi").at("center").get<Point>(),
                                 jp.at("psi").at("radius").get<double>(), grid);
            OperatorValue v(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const auto& re = jp.at("value_re");
                    double vim = 0.0;
                    if (jp.contains("value_im"))
                        vim = jp.at("value_im")
                                  .at(static_cast<std::size_t>(r))
                                  .at(static_cast<std::size_t>(c))
                                  .get<double>();
                    v(r, c) = Complex(
                        re.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>(),
                        vim);
                }
            table.pairs.push_back(std::move(pair));
            table.values.push_back(std::move(v));
        }

        std::vector<Point> candidates;
        for (double f : frequencies) candidates.push_back(Point{f});
        const FitResult fit = fit_spectral_measure(table, candidates);

        json out;
        out["measure"] = fit.measure;
        out["residual"] = fit.residual;
        out["iterations"] = fit.iterations;
        out["converged"] = fit.converged;
        write_text_atomic(out_path, out.dump(2) + "\n");
        std::cout << "fit residual " << fit.residual << " -> " << out_path << "\n";
        return 0;
    } catch (const json::exception& e) {
        std::cerr << "error: invalid table: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace statfield
