#include "statfield/field_synthesis.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "statfield/rng.hpp"

namespace statfield {

GosMeasure make_gos(const SpectralMeasure& F, int ensemble_size, std::uint64_t seed) {
    auto v = validate(F);
    if (!v.valid) throw ValidationError("make_gos: " + v.message);
    if (ensemble_size < 100) throw ValidationError("ensemble size must be >= 100");

    GosMeasure xi;
    xi.measure = F;
    xi.ensemble_size = ensemble_size;
    xi.seed = seed;
    const int n = F.dim_h;
    const std::size_t J = F.atoms.size();
    xi.factors.reserve(J);
    xi.noise.assign(J, {});
    xi.coeffs.assign(J, {});
    for (std::size_t j = 0; j < J; ++j) {
        OperatorValue S = psd_sqrt(F.atoms[j].weight);
        xi.noise[j].reserve(static_cast<std::size_t>(ensemble_size));
        xi.coeffs[j].reserve(static_cast<std::size_t>(ensemble_size));
        for (int m = 0; m < ensemble_size; ++m) {
            Eigen::VectorXcd z(n);
            for (int c = 0; c < n; ++c)
                z(c) = rng::standard_complex_gaussian(seed, j, static_cast<std::uint64_t>(m),
                                                      static_cast<std::uint64_t>(c));
            xi.noise[j].push_back(z);
            xi.coeffs[j].push_back(S * z);
        }
        xi.factors.push_back(std::move(S));
    }
    return xi;
}

FieldEnsemble xi_of_set(const GosMeasure& xi, const std::vector<int>& atom_indices) {
    const int n = xi.measure.dim_h;
    for (int j : atom_indices)
        if (j < 0 || j >= static_cast<int>(xi.measure.atoms.size()))
            throw ValidationError("unknown atom index " + std::to_string(j));
    FieldEnsemble out;
    out.dim_h = n;
    out.samples.assign(static_cast<std::size_t>(xi.ensemble_size), Eigen::VectorXcd::Zero(n));
    for (int j : atom_indices)
        for (int m = 0; m < xi.ensemble_size; ++m)
            out.samples[static_cast<std::size_t>(m)] += xi.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
    return out;
}

FieldEnsemble evaluate_field(const GosMeasure& xi, const TestFunction& phi) {
    const int n = xi.measure.dim_h;
    const std::size_t J = xi.measure.atoms.size();
    std::vector<Complex> w(J);
    for (std::size_t j = 0; j < J; ++j) w[j] = fourier_at(phi, xi.measure.atoms[j].frequency);

    FieldEnsemble out;
    out.dim_h = n;
    out.samples.assign(static_cast<std::size_t>(xi.ensemble_size), Eigen::VectorXcd::Zero(n));
    for (std::size_t j = 0; j < J; ++j)
        for (int m = 0; m < xi.ensemble_size; ++m)
            out.samples[static_cast<std::size_t>(m)] += w[j] * xi.coeffs[j][static_cast<std::size_t>(m)];
    return out;
}

OperatorValue empirical_gramian(const FieldEnsemble& X, const FieldEnsemble& Y) {
    if (X.dim_h != Y.dim_h || X.size() != Y.size())
        throw SizeMismatchError("ensemble size or dimension mismatch");
    OperatorValue G = OperatorValue::Zero(X.dim_h, X.dim_h);
    for (int m = 0; m < X.size(); ++m)
        G += X.samples[static_cast<std::size_t>(m)] * Y.samples[static_cast<std::size_t>(m)].adjoint();
    return G / static_cast<double>(X.size());
}

OperatorValue analytic_gramian_of_sets(const GosMeasure& xi, const std::vector<int>& A,
                                       const std::vector<int>& B) {
    OperatorValue G = OperatorValue::Zero(xi.measure.dim_h, xi.measure.dim_h);
    for (int j : A) {
        bool in_b = false;
        for (int k : B)
            if (k == j) in_b = true;
        if (in_b)
            G += xi.factors[static_cast<std::size_t>(j)] * xi.factors[static_cast<std::size_t>(j)].adjoint();
    }
    return G;
}

double sample_mean_norm(const FieldEnsemble& X) {
    if (X.samples.empty()) return 0.0;
    Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(X.dim_h);
    for (const auto& s : X.samples) mean += s;
    return (mean / static_cast<double>(X.size())).norm();
}

Eigen::VectorXcd ClassicalField::value(const std::vector<int>& grid_index, int sample) const {
    const int n = source->measure.dim_h;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (std::size_t j = 0; j < source->measure.atoms.size(); ++j) {
        double phase = 0.0;
        for (int a = 0; a < grid.dim; ++a)
            phase += source->measure.atoms[j].frequency[static_cast<std::size_t>(a)] *
                     grid.coord(grid_index[static_cast<std::size_t>(a)]);
        const double ang = 2.0 * std::numbers::pi * phase;
        v += Complex(std::cos(ang), std::sin(ang)) * atom_phases[j] *
             source->coeffs[j][static_cast<std::size_t>(sample)];
    }
    return v;
}

OperatorValue ClassicalField::covariance(const Point& y, const Point& u) const {
    const int n = source->measure.dim_h;
    OperatorValue G = OperatorValue::Zero(n, n);
    for (std::size_t j = 0; j < source->measure.atoms.size(); ++j) {
        double phase = 0.0;
        for (int a = 0; a < grid.dim; ++a)
            phase += source->measure.atoms[j].frequency[static_cast<std::size_t>(a)] *
                     (y[static_cast<std::size_t>(a)] - u[static_cast<std::size_t>(a)]);
        const double ang = 2.0 * std::numbers::pi * phase;
        G += Complex(std::cos(ang), std::sin(ang)) * source->measure.atoms[j].weight;
    }
    return G;
}

ClassicalField synthesize_classical(const GosMeasure& xi, const GridSpec& grid) {
    ClassicalField f;
    f.grid = grid;
    f.source = &xi;
    f.atom_phases.assign(xi.measure.atoms.size(), Complex(1.0, 0.0));
    return f;
}

ClassicalField translate(const ClassicalField& f, const Point& x) {
    ClassicalField out = f;
    for (std::size_t j = 0; j < out.atom_phases.size(); ++j) {
        double phase = 0.0;
        for (int a = 0; a < f.grid.dim; ++a)
            phase += f.source->measure.atoms[j].frequency[static_cast<std::size_t>(a)] *
                     x[static_cast<std::size_t>(a)];
        const double ang = -2.0 * std::numbers::pi * phase;
        out.atom_phases[j] *= Complex(std::cos(ang), std::sin(ang));
    }
    return out;
}

FieldEnsemble embed_classical_field(const ClassicalField& f, const TestFunction& phi) {
    if (!(f.grid == phi.grid)) throw SizeMismatchError("classical field and test function grids differ");
    const int n = f.source->measure.dim_h;
    const int M = f.source->ensemble_size;
    const double hd = std::pow(f.grid.spacing(), f.grid.dim);

    // h^d sum_y phi(y) F(y) reduces to per-atom Riemann quadrature of the
    // oscillatory weight, applied to the shared coefficient vectors.
    const std::size_t J = f.source->measure.atoms.size();
    std::vector<Complex> q(J, Complex(0.0, 0.0));
    std::vector<int> lo, hi;
    if (support_box(phi, lo, hi)) {
        const int N = phi.grid.points_per_axis;
        std::vector<int> idx = lo;
        for (;;) {
            const Complex pv = phi.samples[flat_index(idx, N, phi.grid.dim)];
            for (std::size_t j = 0; j < J; ++j) {
                double phase = 0.0;
                for (int a = 0; a < phi.grid.dim; ++a)
                    phase += f.source->measure.atoms[j].frequency[static_cast<std::size_t>(a)] *
                             phi.grid.coord(idx[static_cast<std::size_t>(a)]);
                const double ang = 2.0 * std::numbers::pi * phase;
                q[j] += pv * Complex(std::cos(ang), std::sin(ang));
            }
            int a = phi.grid.dim - 1;
            for (; a >= 0; --a) {
                if (++idx[static_cast<std::size_t>(a)] <= hi[static_cast<std::size_t>(a)]) break;
                idx[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)];
            }
            if (a < 0) break;
        }
    }

    FieldEnsemble out;
    out.dim_h = n;
    out.samples.assign(static_cast<std::size_t>(M), Eigen::VectorXcd::Zero(n));
    for (std::size_t j = 0; j < J; ++j) {
        const Complex wj = hd * q[j] * f.atom_phases[j];
        for (int m = 0; m < M; ++m)
            out.samples[static_cast<std::size_t>(m)] += wj * f.source->coeffs[j][static_cast<std::size_t>(m)];
    }
    return out;
}

namespace {

// Distributional covariance of U_F on a test function pair, analytic in the
// atoms: sum_j q_phi(omega_j) conj(q_psi(omega_j)) F_j with
// q(omega) = h^d sum_y phi(y) e^{+2 pi i <omega, y>}.
OperatorValue classical_distribution_covariance(const ClassicalField& f, const TestFunction& phi,
                                                const TestFunction& psi) {
    const int n = f.source->measure.dim_h;
    OperatorValue G = OperatorValue::Zero(n, n);
    for (std::size_t j = 0; j < f.source->measure.atoms.size(); ++j) {
        Point neg = f.source->measure.atoms[j].frequency;
        for (auto& v : neg) v = -v;
        const Complex qp = fourier_at(phi, neg) * f.atom_phases[j];
        const Complex qq = fourier_at(psi, neg) * f.atom_phases[j];
        G += qp * std::conj(qq) * f.source->measure.atoms[j].weight;
    }
    return G;
}

}  // namespace

MollifierReport mollifier_limit_check(const ClassicalField& f, const Point& x, const Point& y0,
                                      const Point& u0, const std::vector<double>& widths,
                                      double final_tolerance) {
    MollifierReport r;
    r.widths = widths;
    const OperatorValue target = f.covariance(y0, u0);
    const double target_norm = target.norm();
    // Second-order mollifier: the combination alpha b_{s eps} + beta b_eps
    // with alpha + beta = 1 and alpha s^2 + beta = 0 keeps the unit integral
    // while cancelling the second-moment term, so the limit error is O(eps^4)
    // instead of O(eps^2).
    constexpr double s = 0.6;
    constexpr double alpha = 1.0 / (1.0 - s * s);
    constexpr double beta = 1.0 - alpha;
    const auto mollifier = [&](const Point& c, double eps) {
        TestFunction wide = make_bump(c, eps, f.grid);
        TestFunction narrow = make_bump(c, s * eps, f.grid);
        return Complex(alpha, 0.0) * narrow + Complex(beta, 0.0) * wide;
    };
    for (double eps : widths) {
        if (eps < 4.0 * f.grid.spacing())
            throw ValidationError("mollifier width below 4h");
        TestFunction my = mollifier(y0, eps);
        TestFunction mu = mollifier(u0, eps);
        OperatorValue base = classical_distribution_covariance(f, my, mu);
        OperatorValue shifted =
            classical_distribution_covariance(f, translate(my, x), translate(mu, x));
        r.stationarity_deviation.push_back((shifted - base).norm());
        r.target_error.push_back((base - target).norm() / target_norm);
    }
    bool ok = true;
    for (std::size_t i = 0; i < r.widths.size(); ++i) {
        if (r.stationarity_deviation[i] > 1e-10) ok = false;
        if (i > 0 && !(r.target_error[i] < r.target_error[i - 1])) ok = false;
    }
    if (r.target_error.empty() || r.target_error.back() > final_tolerance) ok = false;
    r.pass = ok;
    return r;
}

void write_ensemble_csv(const std::string& path, const FieldEnsemble& X) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.precision(17);
    for (int c = 0; c < X.dim_h; ++c) {
        if (c) out << ",";
        out << "re_" << c << ",im_" << c;
    }
    out << "\n";
    for (const auto& s : X.samples) {
        for (int c = 0; c < X.dim_h; ++c) {
            if (c) out << ",";
            out << s(c).real() << "," << s(c).imag();
        }
        out << "\n";
    }
}

}  // namespace statfield
