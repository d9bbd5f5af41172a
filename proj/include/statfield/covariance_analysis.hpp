#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "statfield/action_stationarity.hpp"
#include "statfield/grid.hpp"
#include "statfield/operator_algebra.hpp"
#include "statfield/spectral_measure.hpp"

namespace statfield {

struct CovariancePair {
    TestFunction phi;
    TestFunction psi;
};

struct CovarianceTable {
    std::vector<CovariancePair> pairs;
    std::vector<OperatorValue> values;
    bool empirical = false;
    int ensemble_size = 0;
    std::uint64_t seed = 0;

    double statistical_tolerance() const;
};

/// Gamma(phi, psi) = K(phi * psi~) for the measure's spectral distribution.
OperatorValue gamma_analytic(const SpectralMeasure& F, const TestFunction& phi,
                             const TestFunction& psi);

/// Extensional estimate of the spectral distribution: one value per probe
/// phi * psi~, certified well-defined across translated representatives.
struct SpectralDistributionEstimate {
    std::vector<TestFunction> probes;
    std::vector<OperatorValue> values;
    double consistency_deviation = 0.0;
    bool valid = false;
};

SpectralDistributionEstimate extract_spectral_distribution(
    const CovOracle& gamma, const std::vector<CovariancePair>& generator_pairs,
    const std::vector<Point>& shifts, double consistency_tolerance = 1e-10);

/// |tr K(probe) - k(probe)| over shared probes.
DeviationReport verify_trace_link(const SpectralDistributionEstimate& K,
                                  const std::function<Complex(const TestFunction&)>& k_scalar,
                                  double tolerance);

/// Minimum eigenvalue of K over probes of the form phi * phi~.
PositivityReport verify_positive_definiteness(const SpectralDistributionEstimate& K,
                                              double tolerance);

struct FitOptions {
    int max_iterations = 500;
    double relative_tolerance = 1e-12;
};

struct FitResult {
    SpectralMeasure measure;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Recovers PSD atom weights at given candidate frequencies from covariance
/// data by alternating entrywise least squares with PSD projection.
FitResult fit_spectral_measure(const CovarianceTable& table,
                               const std::vector<Point>& candidate_frequencies,
                               const FitOptions& options = {});

/// Cross covariance of two fields built over one gos base with factor sets
/// S_j and G_j: sum_j (F phi)(omega_j) conj((F psi)(omega_j)) S_j G_j^*.
OperatorValue cross_covariance_analytic(const SpectralMeasure& F,
                                        const std::vector<OperatorValue>& left_factors,
                                        const std::vector<OperatorValue>& right_factors,
                                        const TestFunction& phi, const TestFunction& psi);

}  // namespace statfield
