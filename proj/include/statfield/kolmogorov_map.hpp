#pragma once

#include <vector>

#include "statfield/covariance_analysis.hpp"
#include "statfield/field_synthesis.hpp"
#include "statfield/spectral_measure.hpp"

namespace statfield {

/// Gramian preservation of the map U_phi -> (F phi) I_H into L^2(F):
/// the analytic chain [U_phi, U_psi] = K(phi * psi~) = integral of
/// F phi conj(F psi) dF, plus the Monte Carlo gramian of the synthesized
/// field against it.
struct IsometryReport {
    int pairs_checked = 0;
    double max_gramian_deviation = 0.0;    // analytic chain, absolute Frobenius
    double max_empirical_deviation = 0.0;  // relative Frobenius
    double analytic_tolerance = 0.0;
    double empirical_tolerance = 0.0;
    bool pass = false;
};

IsometryReport verify_isometry(const SpectralMeasure& F, const GosMeasure& xi,
                               const std::vector<CovariancePair>& test_pairs,
                               double analytic_tolerance = 1e-8);

/// Scalar variant of the chain through the trace measure.
IsometryReport verify_isometry_scalar(const SpectralMeasure& F, const GosMeasure& xi,
                                      const std::vector<CovariancePair>& test_pairs,
                                      double analytic_tolerance = 1e-8);

struct ReconstructionReport {
    double max_sample_deviation = 0.0;
    double condition_number = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Pulls the indicator chi_beta I_H back through the span of {U_phi_i}
/// (least squares on the atom evaluations of F phi_i) and compares the
/// result per sample with xi(beta).
ReconstructionReport reconstruct_xi(const SpectralMeasure& F, const GosMeasure& xi,
                                    const std::vector<int>& beta,
                                    const std::vector<TestFunction>& probes,
                                    double tolerance = 1e-6);

struct SpanReport {
    std::vector<double> residuals;  // per atom, L^2(F) norm of the defect
    double condition_number = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Expresses each xi({omega_j}) in the span of {U_phi_i}; residuals are the
/// L^2(F) norms of the unexplained part.
SpanReport verify_time_domain(const SpectralMeasure& F, const GosMeasure& xi,
                              const std::vector<TestFunction>& probes, double tolerance = 1e-6);

struct NormMeasureReport {
    double max_analytic_deviation = 0.0;
    double max_empirical_deviation = 0.0;  // relative
    double empirical_tolerance = 0.0;
    bool pass = false;
};

/// nu(beta) = tr F(beta) against the analytic and empirical second moments
/// of xi(beta).
NormMeasureReport verify_norm_measure(const SpectralMeasure& F, const GosMeasure& xi,
                                      const std::vector<std::vector<int>>& subsets);

/// Condition threshold for probe families (generalized Vandermonde systems).
inline constexpr double kProbeConditionLimit = 1e8;

}  // namespace statfield
