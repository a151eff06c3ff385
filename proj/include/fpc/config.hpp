#pragma once

#include "fpc/bench.hpp"
#include "fpc/problems.hpp"
#include "fpc/simulation.hpp"
#include "fpc/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpc {

/// Config file problem; the message starts with the offending key path
/// (for example "solver.beta: must be in (0, 1], got 0").
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::vector<ProblemCase> problem_grid;
    std::vector<Algorithm> algorithms;
    std::vector<double> betas;
    unsigned threads = 1;
    ReferencePolicy reference_policy = ReferencePolicy::BestFPI;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<ReportFormat> formats{ReportFormat::CSV, ReportFormat::JSON};
};

struct RunConfig {
    std::string name = "run";
    ProblemConfig problem;
    SolverConfig solver;
    TimestepSchedule schedule;
    std::optional<StateVector> initial_state;
    std::optional<SweepConfig> sweep;
    OutputConfig output;

    /// Sweep over the configured grid; a single case named after the run
    /// when the config has no sweep block.
    [[nodiscard]] SweepSpec sweep_spec() const;
    [[nodiscard]] StateVector initial_state_for(const TargetFunction& problem) const;
};

/// Reads and fully validates a config file. Throws ConfigError.
[[nodiscard]] RunConfig parse_config(const std::filesystem::path& path);
[[nodiscard]] RunConfig parse_config_text(std::string_view text);
[[nodiscard]] RunConfig parse_config_json(const nlohmann::json& document);

/// Canonical form: every default spelled out and every sweep case expanded
/// to a full problem block. parse_config_json(to_json(c)) is equivalent to c.
[[nodiscard]] nlohmann::json to_json(const RunConfig& config);
[[nodiscard]] nlohmann::json problem_to_json(const ProblemConfig& problem);

}  // namespace fpc
