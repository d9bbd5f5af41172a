#include "statfield/spectral_measure.hpp"

#include <cmath>
#include <sstream>

namespace statfield {

MeasureValidation validate(const SpectralMeasure& F) {
    MeasureValidation v;
    v.total_mass = OperatorValue::Zero(F.dim_h, F.dim_h);
    if (F.atoms.empty()) {
        v.valid = false;
        v.message = "spectral measure has no atoms";
        return v;
    }
    for (std::size_t j = 0; j < F.atoms.size(); ++j) {
        const auto& atom = F.atoms[j];
        if (static_cast<int>(atom.frequency.size()) != F.dim_space ||
            atom.weight.rows() != F.dim_h || atom.weight.cols() != F.dim_h) {
            v.valid = false;
            v.message = "atom " + std::to_string(j) + " has inconsistent dimensions";
            return v;
        }
        auto chk = psd_check(atom.weight);
        if (!chk.is_psd || chk.anti_hermitian_norm > kHermitianTol * std::max(1.0, atom.weight.norm())) {
            std::ostringstream os;
            os << "atom " << j << " is not PSD (min eigenvalue " << chk.min_eigenvalue << ")";
            v.valid = false;
            v.message = os.str();
            return v;
        }
        for (std::size_t i = 0; i < j; ++i) {
            double d2 = 0.0;
            for (int a = 0; a < F.dim_space; ++a) {
                double dx = F.atoms[i].frequency[static_cast<std::size_t>(a)] -
                            atom.frequency[static_cast<std::size_t>(a)];
                d2 += dx * dx;
            }
            if (d2 == 0.0) {
                v.valid = false;
                v.message = "atoms " + std::to_string(i) + " and " + std::to_string(j) +
                            " share a frequency";
                return v;
            }
        }
        v.total_mass += atom.weight;
    }
    v.total_trace = v.total_mass.trace().real();
    return v;
}

ScalarMeasure trace_measure(const SpectralMeasure& F) {
    ScalarMeasure nu;
    nu.dim_space = F.dim_space;
    nu.atoms.reserve(F.atoms.size());
    for (const auto& atom : F.atoms)
        nu.atoms.push_back({atom.frequency, atom.weight.trace().real()});
    return nu;
}

OperatorValue k_of(const SpectralMeasure& F, const TestFunction& phi) {
    OperatorValue K = OperatorValue::Zero(F.dim_h, F.dim_h);
    for (const auto& atom : F.atoms) K += fourier_at(phi, atom.frequency) * atom.weight;
    return K;
}

Complex k_scalar(const ScalarMeasure& nu, const TestFunction& phi) {
    Complex s(0.0, 0.0);
    for (const auto& atom : nu.atoms) s += fourier_at(phi, atom.frequency) * atom.mass;
    return s;
}

OperatorValue l2_gramian(const FreqFunction& f, const FreqFunction& g, const SpectralMeasure& F) {
    OperatorValue G = OperatorValue::Zero(F.dim_h, F.dim_h);
    for (const auto& atom : F.atoms)
        G += f(atom.frequency) * std::conj(g(atom.frequency)) * atom.weight;
    return G;
}

DeviationReport selfadjointness_check(const SpectralMeasure& F,
                                      const std::vector<TestFunction>& test_set,
                                      double tolerance) {
    DeviationReport r;
    r.tolerance = tolerance;
    for (const auto& phi : test_set) {
        OperatorValue lhs = k_of(F, involute(phi));
        OperatorValue rhs = k_of(F, phi).adjoint();
        r.max_deviation = std::max(r.max_deviation, (lhs - rhs).norm());
    }
    r.pass = r.max_deviation <= tolerance;
    return r;
}

PositivityReport positivity_integral_check(const SpectralMeasure& F, const TestFunction& phi,
                                           double tolerance) {
    const GridSpec& g = phi.grid;
    const double h = g.spacing();
    // Window = b*b with b a bump; its transform (F b)^2 is nonnegative, so the
    // windowed integral stays PSD for every atom location.
    const double probe_r = 2.0 * phi.support_radius;
    const double half = 0.5 * std::max(0.5, (g.half_width - 2.0 * h - probe_r) / 2.0);
    TestFunction b = make_bump(Point(static_cast<std::size_t>(g.dim), 0.0), half, g);
    TestFunction w = convolve(b, b);
    TestFunction probe = convolve(convolve(phi, involute(phi)), w);

    PositivityReport r;
    r.tolerance = tolerance;
    r.min_eigenvalue = psd_check(k_of(F, probe)).min_eigenvalue;
    r.pass = r.min_eigenvalue >= -tolerance;
    return r;
}

void to_json(nlohmann::json& j, const SpectralMeasure& F) {
    j = nlohmann::json{{"d", F.dim_space}, {"n", F.dim_h}, {"atoms", nlohmann::json::array()}};
    for (const auto& atom : F.atoms) {
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (int r = 0; r < F.dim_h; ++r) {
            nlohmann::json rre = nlohmann::json::array(), rim = nlohmann::json::array();
            for (int c = 0; c < F.dim_h; ++c) {
                rre.push_back(atom.weight(r, c).real());
                rim.push_back(atom.weight(r, c).imag());
            }
            re.push_back(rre);
            im.push_back(rim);
        }
        j["atoms"].push_back({{"omega", atom.frequency}, {"weight_re", re}, {"weight_im", im}});
    }
}

void from_json(const nlohmann::json& j, SpectralMeasure& F) {
    F.dim_space = j.at("d").get<int>();
    F.dim_h = j.at("n").get<int>();
    F.atoms.clear();
    for (const auto& ja : j.at("atoms")) {
        SpectralAtom atom;
        atom.frequency = ja.at("omega").get<Point>();
        atom.weight = OperatorValue::Zero(F.dim_h, F.dim_h);
        const auto& re = ja.at("weight_re");
        for (int r = 0; r < F.dim_h; ++r)
            for (int c = 0; c < F.dim_h; ++c) {
                double vre = re.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
                double vim = 0.0;
                if (ja.contains("weight_im"))
                    vim = ja.at("weight_im").at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
                atom.weight(r, c) = Complex(vre, vim);
            }
        F.atoms.push_back(std::move(atom));
    }
}

}  // namespace statfield
