#include "fpc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpc {

void TimestepSchedule::validate() const
{
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
        throw std::invalid_argument("schedule: t_start and t_end must be finite");
    }
    if (!(t_end > t_start)) throw std::invalid_argument("schedule.t_end: must exceed t_start");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("schedule.dt: must be positive");
}

std::size_t TimestepSchedule::steps() const
{
    // a ratio a few ulps above an integer must not add a zero-length step
    const double ratio = (t_end - t_start) / dt;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio * (1.0 - 1e-12))));
}

double TimestepSchedule::step_end(std::size_t index) const
{
    if (index + 1 >= steps()) return t_end;
    return std::min(t_start + static_cast<double>(index + 1) * dt, t_end);
}

std::size_t SimulationResult::max_step_iterations() const
{
    std::size_t best = 0;
    for (const StepSummary& step : per_step) best = std::max(best, step.iterations);
    return best;
}

double SimulationResult::mean_step_iterations() const
{
    if (per_step.empty()) return 0.0;
    return static_cast<double>(total_iterations) / static_cast<double>(per_step.size());
}

std::string SimulationResult::status_text() const
{
    if (status == SimulationStatus::Completed) return "Completed";
    return "DivergedAtStep(" + std::to_string(diverged_at_step.value_or(0)) + ")";
}

SimulationResult run_simulation(TargetFunction& problem, const TimestepSchedule& schedule,
                                const SolverConfig& config, const StateVector& x_init,
                                const SimulationOptions& options)
{
    schedule.validate();
    config.validate();
    require_same_dimension(problem.dimension(), x_init.size(), "run_simulation initial state");

    SimulationResult result{.status = SimulationStatus::Completed,
                            .diverged_at_step = std::nullopt,
                            .total_iterations = 0,
                            .per_step = {},
                            .final_state = x_init};
    const std::size_t steps = schedule.steps();
    result.per_step.reserve(steps);

    double beta_carry = config.beta;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t_old = k == 0 ? schedule.t_start : schedule.step_end(k - 1);
        const double t_new = schedule.step_end(k);
        const double beta_init = config.algorithm == Algorithm::ATK ? beta_carry : config.beta;

        TimestepSolveResult solved = solve_timestep(problem, t_new, result.final_state, config, beta_init);
        result.total_iterations += solved.iterations;

        StepSummary summary;
        summary.index = k;
        summary.t = t_new;
        summary.status = solved.status;
        summary.iterations = solved.iterations;
        summary.beta_init = beta_init;
        summary.beta_last = solved.beta_last;
        if (options.store_history) {
            summary.x_initial = result.final_state;
            summary.x_final = solved.x_final;
        }

        if (solved.status != TimestepStatus::Converged) {
            result.per_step.push_back(std::move(summary));
            result.status = SimulationStatus::Diverged;
            result.diverged_at_step = k;
            return result;
        }

        summary.changed = problem.advance_time(solved.x_final, t_old, t_new);
        result.per_step.push_back(std::move(summary));
        result.final_state = std::move(solved.x_final);
        beta_carry = solved.beta_last;
    }
    return result;
}

}  // namespace fpc
