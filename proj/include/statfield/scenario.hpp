#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "statfield/grid.hpp"
#include "statfield/spectral_measure.hpp"

namespace statfield {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckSpec {
    std::string name;
    std::optional<double> tolerance;  // overrides the check's default
};

struct Scenario {
    GridSpec grid;
    int dim_h = 2;
    SpectralMeasure measure;
    int ensemble_size = 20000;
    std::uint64_t seed = 42;
    std::vector<CheckSpec> checks;  // empty = run every registered check
    std::string output_dir = "statfield_out";
};

/// Names of all registered verification checks, in execution order.
std::vector<std::string> registered_checks();

/// Parses and validates a scenario config; throws ValidationError with a
/// JSON-pointer path on schema violations.
Scenario parse_scenario(const nlohmann::json& config);

/// The built-in demo scenario: d=1, L=8, N=512, n=2, a three-atom measure.
Scenario demo_scenario(std::uint64_t seed = 42, int ensemble_size = 20000);
SpectralMeasure fixture_measure();

/// Runs the selected checks and returns the full report.
nlohmann::json run_checks(const Scenario& scenario);

/// Loads a config file, runs it, writes report.json and CSV artifacts.
/// Exit code contract: 0 all checks pass, 1 a check failed, 2 config error.
int run_scenario_file(const std::string& config_path, const std::string& out_override = "");

/// Runs a scenario already in memory and writes its artifacts.
int run_and_write(const Scenario& scenario, const nlohmann::json& config_for_hash);

/// Least-squares spectral fit front end: loads a covariance table file and
/// writes the recovered measure. Returns an exit code with the same contract.
int run_fit_file(const std::string& table_path, const std::vector<double>& frequencies,
                 const std::string& out_path);

/// temp-file + rename.
void write_text_atomic(const std::string& path, const std::string& content);

std::uint64_t fnv1a_hash(const std::string& data);

}  // namespace statfield
