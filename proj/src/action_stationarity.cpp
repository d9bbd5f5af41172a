#include "statfield/action_stationarity.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "statfield/rng.hpp"

namespace statfield {

namespace {

std::string witness_string(std::size_t shift, std::size_t pair) {
    std::ostringstream os;
    os << "shift " << shift << ", pair " << pair;
    return os.str();
}

}  // namespace

StationarityReport check_operator_stationarity(const CovOracle& gamma, const ActionSample& samples,
                                               double tolerance) {
    StationarityReport r;
    r.mode = "operator";
    r.tolerance = tolerance;
    for (std::size_t p = 0; p < samples.pairs.size(); ++p) {
        const auto& [phi, psi] = samples.pairs[p];
        const OperatorValue base = gamma(phi, psi);
        for (std::size_t s = 0; s < samples.shifts.size(); ++s) {
            const auto& x = samples.shifts[s];
            const double dev = (gamma(translate(phi, x), translate(psi, x)) - base).norm();
            if (dev > r.max_deviation) {
                r.max_deviation = dev;
                r.witness = witness_string(s, p);
            }
        }
    }
    r.pass = r.max_deviation <= tolerance;
    return r;
}

StationarityReport check_scalar_stationarity(const CovOracle& gamma, ScalarMode mode,
                                             const ActionSample& samples, double tolerance,
                                             int dim_h, std::uint64_t vector_seed) {
    StationarityReport r;
    r.mode = mode == ScalarMode::Scalar ? "scalar" : "scalarly";
    r.tolerance = tolerance;

    std::vector<Eigen::VectorXcd> probes;
    if (mode == ScalarMode::Scalarly) {
        for (int i = 0; i < dim_h; ++i) probes.push_back(Eigen::VectorXcd::Unit(dim_h, i));
        for (int k = 0; k < 2; ++k) {
            Eigen::VectorXcd v(dim_h);
            for (int c = 0; c < dim_h; ++c)
                v(c) = rng::standard_complex_gaussian(vector_seed, static_cast<std::uint64_t>(k), 0,
                                                      static_cast<std::uint64_t>(c));
            probes.push_back(v.normalized());
        }
    }

    for (std::size_t p = 0; p < samples.pairs.size(); ++p) {
        const auto& [phi, psi] = samples.pairs[p];
        const OperatorValue base = gamma(phi, psi);
        for (std::size_t s = 0; s < samples.shifts.size(); ++s) {
            const OperatorValue acted =
                gamma(translate(phi, samples.shifts[s]), translate(psi, samples.shifts[s]));
            double dev = 0.0;
            if (mode == ScalarMode::Scalar) {
                dev = std::abs(acted.trace() - base.trace());
            } else {
                for (const auto& x : probes)
                    dev = std::max(dev, std::abs((x.adjoint() * (acted - base) * x)(0, 0)));
            }
            if (dev > r.max_deviation) {
                r.max_deviation = dev;
                r.witness = witness_string(s, p);
            }
        }
    }
    r.pass = r.max_deviation <= tolerance;
    return r;
}

StationarityReport check_intersection_stationarity(
    const SetOracle& tau,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& set_samples,
    double tolerance, int dim_h) {
    StationarityReport r;
    r.mode = "intersection";
    r.tolerance = tolerance;

    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    auto intersect = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> sa = sorted(a), sb = sorted(b), out;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
        return out;
    };

    // zeta(C) fitted as the mean of tau over pairs with intersection C;
    // zeta(empty) is pinned to zero.
    std::map<std::vector<int>, std::pair<OperatorValue, int>> fit;
    std::vector<OperatorValue> values;
    std::vector<std::vector<int>> keys;
    for (const auto& [A, B] : set_samples) {
        OperatorValue v = tau(A, B);
        std::vector<int> C = intersect(A, B);
        values.push_back(v);
        keys.push_back(C);
        if (C.empty()) continue;
        auto it = fit.find(C);
        if (it == fit.end())
            fit.emplace(C, std::make_pair(v, 1));
        else {
            it->second.first += v;
            it->second.second += 1;
        }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        OperatorValue zeta = OperatorValue::Zero(dim_h, dim_h);
        if (!keys[i].empty()) {
            const auto& [sum, count] = fit.at(keys[i]);
            zeta = sum / static_cast<double>(count);
        }
        const double dev = (values[i] - zeta).norm();
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.witness = "pair " + std::to_string(i);
        }
    }
    r.pass = r.max_deviation <= tolerance;
    return r;
}

StationarityReport check_convolution_dependence(
    const CovOracle& gamma,
    const std::vector<std::vector<std::pair<TestFunction, TestFunction>>>& pair_families,
    double tolerance) {
    StationarityReport r;
    r.mode = "convolution";
    r.tolerance = tolerance;
    for (std::size_t f = 0; f < pair_families.size(); ++f) {
        const auto& family = pair_families[f];
        std::vector<OperatorValue> vals;
        vals.reserve(family.size());
        for (const auto& [phi, psi] : family) vals.push_back(gamma(phi, psi));
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j) {
                const double dev = (vals[i] - vals[j]).norm();
                if (dev > r.max_deviation) {
                    r.max_deviation = dev;
                    r.witness = "family " + std::to_string(f);
                }
            }
    }
    r.pass = r.max_deviation <= tolerance;
    return r;
}

}  // namespace statfield
