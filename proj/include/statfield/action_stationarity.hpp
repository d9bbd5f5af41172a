#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "statfield/grid.hpp"
#include "statfield/operator_algebra.hpp"

namespace statfield {

/// Covariance oracle on test-function pairs.
using CovOracle = std::function<OperatorValue(const TestFunction&, const TestFunction&)>;

/// Bimeasure oracle on atom-index sets.
using SetOracle =
    std::function<OperatorValue(const std::vector<int>&, const std::vector<int>&)>;

/// Finite witness family for an invariance check: shift vectors acting on
/// test-function index pairs.
struct ActionSample {
    std::vector<Point> shifts;
    std::vector<std::pair<TestFunction, TestFunction>> pairs;
};

struct StationarityReport {
    std::string mode;  // operator | scalar | scalarly | intersection | convolution
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string witness;
};

enum class ScalarMode { Scalar, Scalarly };

/// max over (s, pair) of || Gamma(s.phi, s.psi) - Gamma(phi, psi) ||_F.
StationarityReport check_operator_stationarity(const CovOracle& gamma, const ActionSample& samples,
                                               double tolerance);

/// Scalar mode compares traces; scalarly mode compares the scalar covariances
/// (Gamma x, x) over the canonical basis plus two seeded random unit vectors.
StationarityReport check_scalar_stationarity(const CovOracle& gamma, ScalarMode mode,
                                             const ActionSample& samples, double tolerance,
                                             int dim_h, std::uint64_t vector_seed = 7);

/// Fits zeta on all observed intersections and reports the worst
/// || tau(A, B) - zeta(A cap B) ||_F. Pairs with empty intersection must
/// vanish; pairs sharing an intersection must agree.
StationarityReport check_intersection_stationarity(
    const SetOracle& tau,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& set_samples,
    double tolerance, int dim_h);

/// Within each family of pairs sharing one value of phi * psi~, the oracle
/// must be constant; reports the worst pairwise deviation.
StationarityReport check_convolution_dependence(
    const CovOracle& gamma,
    const std::vector<std::vector<std::pair<TestFunction, TestFunction>>>& pair_families,
    double tolerance);

}  // namespace statfield
