#pragma once

#include "fpc/solver.hpp"
#include "fpc/state_vector.hpp"
#include "fpc/target_function.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fpc {

/// Fixed sequence of timesteps; the last step is shortened to end at t_end.
struct TimestepSchedule {
    double t_start = 0.0;
    double t_end = 1.0;
    double dt = 1.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    /// ceil((t_end - t_start) / dt)
    [[nodiscard]] std::size_t steps() const;
    /// End time of step `index` (0-based).
    [[nodiscard]] double step_end(std::size_t index) const;
};

enum class SimulationStatus { Completed, Diverged };

struct StepSummary {
    std::size_t index = 0;
    double t = 0.0;  // time the step was solved at
    TimestepStatus status = TimestepStatus::Converged;
    std::size_t iterations = 0;
    double beta_init = 1.0;
    double beta_last = 1.0;
    std::vector<std::size_t> changed;  // indices reported by advance_time
    std::optional<StateVector> x_initial;
    std::optional<StateVector> x_final;
};

struct SimulationResult {
    SimulationStatus status = SimulationStatus::Completed;
    std::optional<std::size_t> diverged_at_step;
    std::size_t total_iterations = 0;
    std::vector<StepSummary> per_step;
    StateVector final_state;  // last accepted state

    [[nodiscard]] std::size_t max_step_iterations() const;
    [[nodiscard]] double mean_step_iterations() const;
    /// "Completed" or "DivergedAtStep(i)".
    [[nodiscard]] std::string status_text() const;
};

struct SimulationOptions {
    bool store_history = false;  // keep x_initial / x_final of every step
};

/// Runs every timestep of the schedule with warm starts.
///
/// Step k is solved at its end time from the accepted state of step k-1.
/// ATK starts each step from the last relaxation factor of the previous one;
/// FPI and TPA use config.beta throughout. The first non-converged step halts
/// the run. advance_time() is called after every accepted step.
[[nodiscard]] SimulationResult run_simulation(TargetFunction& problem, const TimestepSchedule& schedule,
                                              const SolverConfig& config, const StateVector& x_init,
                                              const SimulationOptions& options = {});

}  // namespace fpc
