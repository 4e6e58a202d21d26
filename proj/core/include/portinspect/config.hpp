#pragma once

// JSON run configuration for the command-line tool.
//
// {
//   "stations": {"sigma0": [...], "sigma1": [...], "c": [...], "a": [...], "b": [...]},
//   "prior": 0.0002, "c_fa": 100000, "c_fr": 500,
//   "structure": "all" | "any" | {"all": [1, {"any": [2, 3]}]},
//   "threshold_box": [0, 1],
//   "method": "grid" | "local" | "ga" | "all",
//   "grid": {"step": 0.05},
//   "local": {"starts": [[0.2, 0.2, 0.2]], "max_iterations": 2000,
//             "tolerance": 1e-9, "initial_step": 0.1},
//   "ga": {"population_size": 80, "generations": 100, "crossover_rate": 0.8,
//          "mutation_rate": 0.1, "mutation_scale": 0.1, "blend_alpha": 0.5,
//          "tournament_size": 2, "elite_count": 2, "restarts": 8},
//   "weights": {"start": 0, "step": 0.004, "end": 1},
//   "policy": {"sequence": "2-1-3", "thresholds": [0, 0.85, 0]},
//   "seed": 1, "workers": 0, "output": "frontier.csv"
// }
//
// Leaves in "structure" are 1-based station numbers. Unknown keys are errors.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "portinspect/model.hpp"
#include "portinspect/solvers.hpp"

namespace portinspect {

/// Malformed JSON. line() and column() are 1-based.
class ConfigSyntaxError : public std::runtime_error {
public:
    ConfigSyntaxError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

enum class RunMethod { Grid, Local, GA, All };

RunMethod parse_run_method(std::string_view name);
const char* run_method_name(RunMethod method) noexcept;

struct WeightSpec {
    double start = 0.0;
    double step = 0.004;
    double end = 1.0;

    std::vector<WeightPair> expand() const { return weight_range(start, step, end); }
};

struct RunConfig {
    SystemModel model;
    RunMethod method = RunMethod::GA;
    GridParams grid;
    LocalSearchParams local;
    GAParams ga;
    WeightSpec weights;
    std::optional<Policy> policy;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    std::string output = "frontier.csv";
};

/// Parses and validates a configuration document. Throws ConfigSyntaxError
/// for malformed JSON and ValidationError (naming the field) otherwise.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Rejects configurations whose parts are inconsistent with each other
/// (e.g. start vectors of the wrong length).
void validate_config(const RunConfig& config);

/// JSON object {"sequence": "2-1-3", "thresholds": [...]} and back. Doubles
/// are written in shortest round-trip form.
std::string policy_to_json(const Policy& policy);
Policy policy_from_json(std::string_view text);

} // namespace portinspect
