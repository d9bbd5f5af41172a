#include "statfield/kolmogorov_map.hpp"

#include <cmath>

namespace statfield {

namespace {

// Atom-evaluation matrix E_{ij} = (F phi_i)(omega_j) and its condition number.
Eigen::MatrixXcd atom_evaluations(const SpectralMeasure& F,
                                  const std::vector<TestFunction>& probes, double& cond) {
    const std::size_t I = probes.size();
    const std::size_t J = F.atoms.size();
    Eigen::MatrixXcd E(I, J);
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = 0; j < J; ++j)
            E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                fourier_at(probes[i], F.atoms[j].frequency);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E);
    const auto& sv = svd.singularValues();
    cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                   : std::numeric_limits<double>::infinity();
    return E;
}

// Coefficients c with sum_i c_i (F phi_i)(omega_j) = target_j, least squares.
Eigen::VectorXcd solve_span(const Eigen::MatrixXcd& E, const Eigen::VectorXcd& target) {
    // E is probes x atoms; the span system is E^T c = target.
    return E.transpose().colPivHouseholderQr().solve(target);
}

}  // namespace

IsometryReport verify_isometry(const SpectralMeasure& F, const GosMeasure& xi,
                               const std::vector<CovariancePair>& test_pairs,
                               double analytic_tolerance) {
    IsometryReport r;
    r.pairs_checked = static_cast<int>(test_pairs.size());
    r.analytic_tolerance = analytic_tolerance;
    r.empirical_tolerance = 5.0 / std::sqrt(static_cast<double>(xi.ensemble_size));
    for (const auto& pair : test_pairs) {
        const OperatorValue time_side = gamma_analytic(F, pair.phi, pair.psi);
        const OperatorValue spectral_side = l2_gramian(
            [&](const Point& w) { return fourier_at(pair.phi, w); },
            [&](const Point& w) { return fourier_at(pair.psi, w); }, F);
        r.max_gramian_deviation =
            std::max(r.max_gramian_deviation, (time_side - spectral_side).norm());

        const OperatorValue emp =
            empirical_gramian(evaluate_field(xi, pair.phi), evaluate_field(xi, pair.psi));
        const double scale = std::max(spectral_side.norm(), 1e-12);
        r.max_empirical_deviation =
            std::max(r.max_empirical_deviation, (emp - spectral_side).norm() / scale);
    }
    r.pass = r.max_gramian_deviation <= r.analytic_tolerance &&
             r.max_empirical_deviation <= r.empirical_tolerance;
    return r;
}

IsometryReport verify_isometry_scalar(const SpectralMeasure& F, const GosMeasure& xi,
                                      const std::vector<CovariancePair>& test_pairs,
                                      double analytic_tolerance) {
    IsometryReport r;
    r.pairs_checked = static_cast<int>(test_pairs.size());
    r.analytic_tolerance = analytic_tolerance;
    r.empirical_tolerance = 5.0 / std::sqrt(static_cast<double>(xi.ensemble_size));
    const ScalarMeasure nu = trace_measure(F);
    for (const auto& pair : test_pairs) {
        const Complex time_side = k_scalar(nu, convolve(pair.phi, involute(pair.psi)));
        Complex spectral_side(0.0, 0.0);
        for (const auto& atom : F.atoms)
            spectral_side += fourier_at(pair.phi, atom.frequency) *
                             std::conj(fourier_at(pair.psi, atom.frequency)) *
                             atom.weight.trace().real();
        r.max_gramian_deviation =
            std::max(r.max_gramian_deviation, std::abs(time_side - spectral_side));

        Complex emp(0.0, 0.0);
        const FieldEnsemble X = evaluate_field(xi, pair.phi);
        const FieldEnsemble Y = evaluate_field(xi, pair.psi);
        for (int m = 0; m < X.size(); ++m)
            emp += Y.samples[static_cast<std::size_t>(m)].dot(X.samples[static_cast<std::size_t>(m)]);
        emp /= static_cast<double>(X.size());
        const double scale = std::max(std::abs(spectral_side), 1e-12);
        r.max_empirical_deviation =
            std::max(r.max_empirical_deviation, std::abs(emp - spectral_side) / scale);
    }
    r.pass = r.max_gramian_deviation <= r.analytic_tolerance &&
             r.max_empirical_deviation <= r.empirical_tolerance;
    return r;
}

ReconstructionReport reconstruct_xi(const SpectralMeasure& F, const GosMeasure& xi,
                                    const std::vector<int>& beta,
                                    const std::vector<TestFunction>& probes, double tolerance) {
    ReconstructionReport r;
    r.tolerance = tolerance;
    if (probes.size() < F.atoms.size())
        throw ConditioningError("fewer probes than atoms: reconstruction is underdetermined");
    Eigen::MatrixXcd E = atom_evaluations(F, probes, r.condition_number);
    if (r.condition_number > kProbeConditionLimit)
        throw ConditioningError("probe family is ill-conditioned");

    Eigen::VectorXcd indicator = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(F.atoms.size()));
    for (int j : beta) {
        if (j < 0 || j >= static_cast<int>(F.atoms.size()))
            throw ValidationError("unknown atom index " + std::to_string(j));
        indicator(j) = Complex(1.0, 0.0);
    }
    const Eigen::VectorXcd c = solve_span(E, indicator);

    const FieldEnsemble direct = xi_of_set(xi, beta);
    for (int m = 0; m < xi.ensemble_size; ++m) {
        Eigen::VectorXcd rec = Eigen::VectorXcd::Zero(F.dim_h);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            // U_phi_i for this sample
            Eigen::VectorXcd u = Eigen::VectorXcd::Zero(F.dim_h);
            for (std::size_t j = 0; j < F.atoms.size(); ++j)
                u += E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                     xi.coeffs[j][static_cast<std::size_t>(m)];
            rec += c(static_cast<Eigen::Index>(i)) * u;
        }
        r.max_sample_deviation =
            std::max(r.max_sample_deviation, (rec - direct.samples[static_cast<std::size_t>(m)]).norm());
    }
    r.pass = r.max_sample_deviation <= tolerance;
    return r;
}

SpanReport verify_time_domain(const SpectralMeasure& F, const GosMeasure& xi,
                              const std::vector<TestFunction>& probes, double tolerance) {
    SpanReport r;
    r.tolerance = tolerance;
    if (probes.size() < F.atoms.size())
        throw ConditioningError("fewer probes than atoms: span is rank deficient");
    Eigen::MatrixXcd E = atom_evaluations(F, probes, r.condition_number);
    if (r.condition_number > kProbeConditionLimit)
        throw ConditioningError("probe family is ill-conditioned");

    const std::size_t J = F.atoms.size();
    bool ok = true;
    for (std::size_t j = 0; j < J; ++j) {
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(J));
        target(static_cast<Eigen::Index>(j)) = Complex(1.0, 0.0);
        const Eigen::VectorXcd c = solve_span(E, target);
        const Eigen::VectorXcd defect = E.transpose() * c - target;
        // L^2(F) norm of the defect: sum_k |defect_k|^2 tr F_k.
        double res2 = 0.0;
        for (std::size_t k = 0; k < J; ++k)
            res2 += std::norm(defect(static_cast<Eigen::Index>(k))) *
                    F.atoms[k].weight.trace().real();
        const double res = std::sqrt(res2);
        r.residuals.push_back(res);
        if (res > tolerance) ok = false;
    }
    r.pass = ok;
    return r;
}

NormMeasureReport verify_norm_measure(const SpectralMeasure& F, const GosMeasure& xi,
                                      const std::vector<std::vector<int>>& subsets) {
    NormMeasureReport r;
    r.empirical_tolerance = 5.0 / std::sqrt(static_cast<double>(xi.ensemble_size));
    for (const auto& beta : subsets) {
        double trF = 0.0;
        for (int j : beta) trF += F.atoms[static_cast<std::size_t>(j)].weight.trace().real();
        const double analytic =
            analytic_gramian_of_sets(xi, beta, beta).trace().real();
        r.max_analytic_deviation = std::max(r.max_analytic_deviation, std::abs(analytic - trF));

        const FieldEnsemble X = xi_of_set(xi, beta);
        double emp = 0.0;
        for (const auto& s : X.samples) emp += s.squaredNorm();
        emp /= static_cast<double>(X.size());
        const double scale = std::max(trF, 1e-12);
        r.max_empirical_deviation =
            std::max(r.max_empirical_deviation, std::abs(emp - trF) / scale);
    }
    r.pass = r.max_analytic_deviation <= 1e-10 &&
             r.max_empirical_deviation <= r.empirical_tolerance;
    return r;
}

}  // namespace statfield
