#pragma once

#include <json.hpp>

#include "statfield/action_stationarity.hpp"
#include "statfield/covariance_analysis.hpp"
#include "statfield/field_synthesis.hpp"
#include "statfield/kolmogorov_map.hpp"
#include "statfield/spectral_measure.hpp"

namespace statfield {

inline void to_json(nlohmann::json& j, const StationarityReport& r) {
    j = {{"mode", r.mode},
         {"max_deviation", r.max_deviation},
         {"tolerance", r.tolerance},
         {"pass", r.pass},
         {"witness", r.witness}};
}

inline void to_json(nlohmann::json& j, const DeviationReport& r) {
    j = {{"max_deviation", r.max_deviation}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const PositivityReport& r) {
    j = {{"min_eigenvalue", r.min_eigenvalue}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const IsometryReport& r) {
    j = {{"pairs_checked", r.pairs_checked},
         {"max_gramian_deviation", r.max_gramian_deviation},
         {"max_empirical_deviation", r.max_empirical_deviation},
         {"analytic_tolerance", r.analytic_tolerance},
         {"empirical_tolerance", r.empirical_tolerance},
         {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const ReconstructionReport& r) {
    j = {{"max_sample_deviation", r.max_sample_deviation},
         {"condition_number", r.condition_number},
         {"tolerance", r.tolerance},
         {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const SpanReport& r) {
    j = {{"residuals", r.residuals},
         {"condition_number", r.condition_number},
         {"tolerance", r.tolerance},
         {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const NormMeasureReport& r) {
    j = {{"max_analytic_deviation", r.max_analytic_deviation},
         {"max_empirical_deviation", r.max_empirical_deviation},
         {"empirical_tolerance", r.empirical_tolerance},
         {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const MollifierReport& r) {
    j = {{"widths", r.widths},
         {"stationarity_deviation", r.stationarity_deviation},
         {"target_error", r.target_error},
         {"pass", r.pass}};
}

}  // namespace statfield
