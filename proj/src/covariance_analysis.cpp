#include "statfield/covariance_analysis.hpp"

#include <cmath>

namespace statfield {

double CovarianceTable::statistical_tolerance() const {
    return empirical ? 5.0 / std::sqrt(static_cast<double>(ensemble_size)) : 0.0;
}

OperatorValue gamma_analytic(const SpectralMeasure& F, const TestFunction& phi,
                             const TestFunction& psi) {
    return k_of(F, convolve(phi, involute(psi)));
}

SpectralDistributionEstimate extract_spectral_distribution(
    const CovOracle& gamma, const std::vector<CovariancePair>& generator_pairs,
    const std::vector<Point>& shifts, double consistency_tolerance) {
    SpectralDistributionEstimate est;
    for (const auto& pair : generator_pairs) {
        est.probes.push_back(convolve(pair.phi, involute(pair.psi)));
        std::vector<OperatorValue> reps;
        reps.push_back(gamma(pair.phi, pair.psi));
        for (const auto& x : shifts)
            reps.push_back(gamma(translate(pair.phi, x), translate(pair.psi, x)));
        OperatorValue mean = OperatorValue::Zero(reps[0].rows(), reps[0].cols());
        for (const auto& v : reps) mean += v;
        mean /= static_cast<double>(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                est.consistency_deviation =
                    std::max(est.consistency_deviation, (reps[i] - reps[j]).norm());
        est.values.push_back(std::move(mean));
    }
    est.valid = est.consistency_deviation <= consistency_tolerance;
    return est;
}

DeviationReport verify_trace_link(const SpectralDistributionEstimate& K,
                                  const std::function<Complex(const TestFunction&)>& k_scalar,
                                  double tolerance) {
    DeviationReport r;
    r.tolerance = tolerance;
    for (std::size_t i = 0; i < K.probes.size(); ++i)
        r.max_deviation =
            std::max(r.max_deviation, std::abs(K.values[i].trace() - k_scalar(K.probes[i])));
    r.pass = r.max_deviation <= tolerance;
    return r;
}

PositivityReport verify_positive_definiteness(const SpectralDistributionEstimate& K,
                                              double tolerance) {
    PositivityReport r;
    r.tolerance = tolerance;
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& v : K.values)
        r.min_eigenvalue = std::min(r.min_eigenvalue, psd_check(v).min_eigenvalue);
    if (K.values.empty()) r.min_eigenvalue = 0.0;
    r.pass = r.min_eigenvalue >= -tolerance;
    return r;
}

FitResult fit_spectral_measure(const CovarianceTable& table,
                               const std::vector<Point>& candidate_frequencies,
                               const FitOptions& options) {
    const std::size_t P = table.pairs.size();
    const std::size_t J = candidate_frequencies.size();
    if (P == 0 || table.values.size() != P)
        throw ValidationError("covariance table is empty or inconsistent");
    if (P < J) throw ValidationError("underdetermined fit: fewer pairs than candidate atoms");
    const int n = static_cast<int>(table.values[0].rows());

    // Design scalars g_{pj} = (F phi_p)(omega_j) conj((F psi_p)(omega_j)).
    Eigen::MatrixXcd G(P, J);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t j = 0; j < J; ++j)
            G(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) =
                fourier_at(table.pairs[p].phi, candidate_frequencies[j]) *
                std::conj(fourier_at(table.pairs[p].psi, candidate_frequencies[j]));

    // Joint unconstrained entrywise least squares: one QR of G serves every
    // matrix entry. On exact tables this is already the answer and the PSD
    // projection below is a no-op.
    Eigen::MatrixXcd rhs(P, static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (std::size_t p = 0; p < P; ++p)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                rhs(static_cast<Eigen::Index>(p), a * n + b) = table.values[p](a, b);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd sol = qr.solve(rhs);

    std::vector<OperatorValue> W(J, OperatorValue::Zero(n, n));
    for (std::size_t j = 0; j < J; ++j) {
        OperatorValue w(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) w(a, b) = sol(static_cast<Eigen::Index>(j), a * n + b);
        W[j] = psd_project(w);
    }

    auto objective = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < P; ++p) {
            OperatorValue resid = table.values[p];
            for (std::size_t j = 0; j < J; ++j)
                resid -= G(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) * W[j];
            s += resid.squaredNorm();
        }
        return s;
    };

    double prev = objective();
    int it = 0;
    bool converged = false;
    for (; it < options.max_iterations; ++it) {
        for (std::size_t j = 0; j < J; ++j) {
            // Entrywise least squares for atom j with the others held fixed.
            OperatorValue num = OperatorValue::Zero(n, n);
            double den = 0.0;
            for (std::size_t p = 0; p < P; ++p) {
                OperatorValue resid = table.values[p];
                for (std::size_t k = 0; k < J; ++k)
                    if (k != j)
                        resid -= G(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) * W[k];
                const Complex g = G(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j));
                num += std::conj(g) * resid;
                den += std::norm(g);
            }
            if (den == 0.0)
                throw ValidationError("candidate atom " + std::to_string(j) +
                                      " is invisible to every pair");
            W[j] = psd_project(num / den);
        }
        const double cur = objective();
        if (prev - cur <= options.relative_tolerance * std::max(prev, 1e-300)) {
            prev = cur;
            converged = true;
            break;
        }
        prev = cur;
    }

    FitResult result;
    result.measure.dim_space = static_cast<int>(candidate_frequencies.empty()
                                                    ? 1
                                                    : candidate_frequencies[0].size());
    result.measure.dim_h = n;
    for (std::size_t j = 0; j < J; ++j)
        result.measure.atoms.push_back({candidate_frequencies[j], W[j]});
    result.residual = std::sqrt(prev);
    result.iterations = it;
    result.converged = converged;
    return result;
}

OperatorValue cross_covariance_analytic(const SpectralMeasure& F,
                                        const std::vector<OperatorValue>& left_factors,
                                        const std::vector<OperatorValue>& right_factors,
                                        const TestFunction& phi, const TestFunction& psi) {
    if (left_factors.size() != F.atoms.size() || right_factors.size() != F.atoms.size())
        throw SizeMismatchError("factor lists do not match the atom list");
    OperatorValue G = OperatorValue::Zero(F.dim_h, F.dim_h);
    for (std::size_t j = 0; j < F.atoms.size(); ++j)
        G += fourier_at(phi, F.atoms[j].frequency) *
             std::conj(fourier_at(psi, F.atoms[j].frequency)) * left_factors[j] *
             right_factors[j].adjoint();
    return G;
}

}  // namespace statfield
