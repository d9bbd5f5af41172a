#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "statfield/grid.hpp"
#include "statfield/operator_algebra.hpp"

namespace statfield {

struct SpectralAtom {
    Point frequency;
    OperatorValue weight;  // PSD n x n matrix
};

/// Finite atomic matrix-valued positive measure on frequency space.
/// Finite atomic measures are automatically tempered, so the growth
/// condition is reported as auto-satisfied rather than tested.
struct SpectralMeasure {
    int dim_space = 1;
    int dim_h = 1;
    std::vector<SpectralAtom> atoms;
};

struct ScalarAtom {
    Point frequency;
    double mass = 0.0;
};

struct ScalarMeasure {
    int dim_space = 1;
    std::vector<ScalarAtom> atoms;
};

struct MeasureValidation {
    bool valid = true;
    std::string message;
    OperatorValue total_mass;
    double total_trace = 0.0;
};

/// Confirms every atom is PSD and frequencies are pairwise distinct;
/// reports the total mass F(R^d) and its trace.
MeasureValidation validate(const SpectralMeasure& F);

/// Atom-wise trace: masses tr F_j at the same frequencies.
ScalarMeasure trace_measure(const SpectralMeasure& F);

/// K(phi) = sum_j (F phi)(omega_j) F_j, the action of the Fourier transform
/// of the measure on a test function.
OperatorValue k_of(const SpectralMeasure& F, const TestFunction& phi);

/// Scalar variant through the trace measure.
Complex k_scalar(const ScalarMeasure& nu, const TestFunction& phi);

using FreqFunction = std::function<Complex(const Point&)>;

/// Atomic gramian integral sum_j f(omega_j) conj(g(omega_j)) F_j.
OperatorValue l2_gramian(const FreqFunction& f, const FreqFunction& g, const SpectralMeasure& F);

struct DeviationReport {
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// max over the test set of || K(phi~) - K(phi)* ||_F.
DeviationReport selfadjointness_check(const SpectralMeasure& F,
                                      const std::vector<TestFunction>& test_set,
                                      double tolerance = 1e-8);

struct PositivityReport {
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Windowed integral positivity: K(phi * phi~ * w) with w a wide unit-mass
/// window (a self-convolved bump, so its transform is nonnegative).
PositivityReport positivity_integral_check(const SpectralMeasure& F, const TestFunction& phi,
                                           double tolerance = 1e-8);

// JSON schema: {"d":..., "n":..., "atoms":[{"omega":[...],
//               "weight_re":[[...]], "weight_im":[[...]]}]}
void to_json(nlohmann::json& j, const SpectralMeasure& F);
void from_json(const nlohmann::json& j, SpectralMeasure& F);

}  // namespace statfield
