#pragma once

#include "fpc/problems.hpp"
#include "fpc/simulation.hpp"
#include "fpc/solver.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fpc {

// =============================================================================
// Sweep definition and results
// =============================================================================

struct ProblemCase {
    std::string case_id;
    ProblemConfig problem;
    std::optional<StateVector> initial_state;  // problem default when absent
};

/// Every (problem, algorithm, beta) cell runs the same schedule, tolerance and
/// iteration cap. `solver.algorithm` and `solver.beta` are overwritten per cell.
struct SweepSpec {
    std::string name = "sweep";
    std::vector<ProblemCase> problem_grid;
    std::vector<Algorithm> algorithms;
    std::vector<double> betas;
    TimestepSchedule schedule;
    SolverConfig solver;
    unsigned threads = 1;

    void validate() const;
    [[nodiscard]] std::size_t cell_count() const noexcept
    {
        return problem_grid.size() * algorithms.size() * betas.size();
    }
};

/// Default beta grid, matching the columns of the cascade benchmark table.
[[nodiscard]] std::vector<double> default_beta_grid();

struct CaseResult {
    std::string case_id;
    std::string problem_params;
    Algorithm algorithm = Algorithm::FPI;
    double beta = 1.0;
    std::size_t total_iterations = 0;
    SimulationStatus status = SimulationStatus::Completed;
    std::optional<std::size_t> diverged_at_step;
    std::size_t steps_run = 0;
    double wall_time_ms = 0.0;
    std::optional<StateVector> final_state;  // in memory only, not reported
};

/// One CaseResult per cell, in grid order (problem, algorithm, beta). Cells
/// may run on `spec.threads` workers; the output order does not depend on it.
[[nodiscard]] std::vector<CaseResult> run_sweep(const SweepSpec& spec);

/// Sorts by case_id, then algorithm (FPI, ATK, TPA), then beta.
void sort_results(std::vector<CaseResult>& results);

// =============================================================================
// Acceleration ratios
// =============================================================================

/// BestFPI: S = N(FPI at its best beta) / N(alg, beta).
/// MatchedBeta: S = N(FPI, beta) / N(alg, beta).
enum class ReferencePolicy { BestFPI, MatchedBeta };

[[nodiscard]] std::string_view to_string(ReferencePolicy policy) noexcept;
[[nodiscard]] std::optional<ReferencePolicy> parse_reference_policy(std::string_view name) noexcept;

struct SpeedupEntry {
    std::string case_id;
    Algorithm algorithm = Algorithm::ATK;
    double beta = 1.0;
    std::size_t iterations = 0;
    std::optional<std::size_t> reference_iterations;  // absent: no completed FPI reference
    std::optional<double> speedup;                     // reference / iterations, 3 significant digits
};

struct AlgorithmBest {
    std::string case_id;
    Algorithm algorithm = Algorithm::FPI;
    std::optional<double> beta_opt;     // argmin_beta N, ties toward larger beta
    std::optional<std::size_t> n_best;
    std::optional<double> s_max;        // absent for FPI and without reference
};

/// Arithmetic mean of N over completed cases for one (algorithm, beta).
struct BetaAverage {
    Algorithm algorithm = Algorithm::FPI;
    double beta = 1.0;
    std::optional<double> mean_iterations;
    std::size_t completed_cases = 0;
    std::size_t total_cases = 0;
};

struct AccelerationSummary {
    ReferencePolicy policy = ReferencePolicy::BestFPI;
    std::vector<SpeedupEntry> speedups;
    std::vector<AlgorithmBest> best;
    std::vector<BetaAverage> averages;

    [[nodiscard]] const AlgorithmBest* find_best(const std::string& case_id, Algorithm algorithm) const;
};

[[nodiscard]] AccelerationSummary compute_acceleration(const std::vector<CaseResult>& results,
                                                       ReferencePolicy policy);

// =============================================================================
// Reports
// =============================================================================

enum class ReportFormat { CSV, JSON };

[[nodiscard]] std::string_view to_string(ReportFormat format) noexcept;

inline constexpr const char* csv_header =
    "case_id,problem_params,algorithm,beta,total_iterations,status,diverged_at_step,wall_time_ms";

/// Header plus one row per result, sorted.
[[nodiscard]] std::string to_csv(std::vector<CaseResult> results);

/// {"sweep": metadata, "cases": [...], "summary": {...}}; cases sorted.
[[nodiscard]] nlohmann::json to_json(std::vector<CaseResult> results, const AccelerationSummary& summary,
                                     const nlohmann::json& metadata = nlohmann::json::object());

struct ParsedReport {
    nlohmann::json metadata;
    std::vector<CaseResult> results;
    AccelerationSummary summary;
};

/// Inverse of to_json; throws std::runtime_error on malformed input.
[[nodiscard]] ParsedReport parse_report(const nlohmann::json& document);

/// Writes the report to `path`; failures throw std::runtime_error naming the path.
void emit_report(const std::vector<CaseResult>& results, const AccelerationSummary& summary, ReportFormat format,
                 const std::filesystem::path& path, const nlohmann::json& metadata = nlohmann::json::object());

/// <directory>/<sweep_name>_results.csv or .json
[[nodiscard]] std::filesystem::path report_path(const std::filesystem::path& directory, const std::string& sweep_name,
                                                ReportFormat format);

/// Human-readable table per case: rows are algorithms, columns are betas,
/// followed by beta_opt, N_best and S_max.
[[nodiscard]] std::string render_summary_table(const std::vector<CaseResult>& results,
                                               const AccelerationSummary& summary);

}  // namespace fpc
