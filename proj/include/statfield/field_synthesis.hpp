#pragma once

#include <cstdint>
#include <vector>

#include "statfield/grid.hpp"
#include "statfield/operator_algebra.hpp"
#include "statfield/spectral_measure.hpp"

namespace statfield {

/// Monte Carlo ensemble of vectors in C^n.
struct FieldEnsemble {
    int dim_h = 0;
    std::vector<Eigen::VectorXcd> samples;

    int size() const { return static_cast<int>(samples.size()); }
};

/// Gramian orthogonally scattered stochastic measure on the atoms of a
/// spectral measure: xi({omega_j}) has samples S_j Z_{j,m} with S_j the
/// principal square root of F_j and Z_{j,m} standard complex Gaussian noise
/// reproducible from (seed, j, m).
struct GosMeasure {
    SpectralMeasure measure;
    std::vector<OperatorValue> factors;          // S_j
    int ensemble_size = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<Eigen::VectorXcd>> noise;   // [atom][sample]
    std::vector<std::vector<Eigen::VectorXcd>> coeffs;  // S_j * Z_{j,m}
};

GosMeasure make_gos(const SpectralMeasure& F, int ensemble_size, std::uint64_t seed);

/// xi(A) per sample: sum_{j in A} S_j Z_{j,m}. A is a subset of atom indices
/// (every bounded Borel set reduces to the atoms it contains).
FieldEnsemble xi_of_set(const GosMeasure& xi, const std::vector<int>& atom_indices);

/// U_phi = sum_j (F phi)(omega_j) S_j Z_{j,m}.
FieldEnsemble evaluate_field(const GosMeasure& xi, const TestFunction& phi);

/// (1/M) sum_m X_m Y_m^*.
OperatorValue empirical_gramian(const FieldEnsemble& X, const FieldEnsemble& Y);

/// Analytic gramian [xi(A), xi(B)] = sum_{j in A cap B} S_j S_j^*.
OperatorValue analytic_gramian_of_sets(const GosMeasure& xi, const std::vector<int>& A,
                                       const std::vector<int>& B);

/// Norm of the ensemble sample mean (zero-mean diagnostics).
double sample_mean_norm(const FieldEnsemble& X);

/// Classical multivariate random field synthesized from the same atoms:
/// F(y)_m = sum_j e^{2 pi i <omega_j, y>} S_j Z_{j,m}, evaluated lazily on
/// the grid. phase_shift stores an extra per-atom phase so translated copies
/// share the underlying noise.
struct ClassicalField {
    GridSpec grid;
    const GosMeasure* source = nullptr;
    std::vector<Complex> atom_phases;  // multiplies atom j's coefficient

    Eigen::VectorXcd value(const std::vector<int>& grid_index, int sample) const;
    /// Pointwise covariance [F(y), F(u)] = sum_j e^{2 pi i <omega_j, y-u>} F_j.
    OperatorValue covariance(const Point& y, const Point& u) const;
};

ClassicalField synthesize_classical(const GosMeasure& xi, const GridSpec& grid);

/// tau_x F, represented by per-atom phase factors e^{-2 pi i <omega_j, x>}.
ClassicalField translate(const ClassicalField& f, const Point& x);

/// U_F(phi) = h^d sum_y phi(y) F(y), per sample.
FieldEnsemble embed_classical_field(const ClassicalField& f, const TestFunction& phi);

struct MollifierReport {
    std::vector<double> widths;
    std::vector<double> stationarity_deviation;  // shift-invariance defect per width
    std::vector<double> target_error;            // relative distance to [F(y0), F(u0)]
    bool pass = false;
};

/// Recovers the pointwise covariance [F(y0), F(u0)] from the distributional
/// covariance through mollifiers of shrinking width, and checks shift
/// invariance of the mollified covariance at shift x.
MollifierReport mollifier_limit_check(const ClassicalField& f, const Point& x, const Point& y0,
                                      const Point& u0, const std::vector<double>& widths,
                                      double final_tolerance = 0.05);

/// One row per sample, interleaved re/im columns.
void write_ensemble_csv(const std::string& path, const FieldEnsemble& X);

}  // namespace statfield
