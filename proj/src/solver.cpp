#include "fpc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpc {

std::string_view to_string(Algorithm algorithm) noexcept
{
    switch (algorithm) {
        case Algorithm::FPI: return "FPI";
        case Algorithm::ATK: return "ATK";
        case Algorithm::TPA: return "TPA";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept
{
    if (name == "FPI") return Algorithm::FPI;
    if (name == "ATK") return Algorithm::ATK;
    if (name == "TPA") return Algorithm::TPA;
    return std::nullopt;
}

std::string_view to_string(TimestepStatus status) noexcept
{
    switch (status) {
        case TimestepStatus::Converged: return "Converged";
        case TimestepStatus::DivergedIterationCap: return "DivergedIterationCap";
        case TimestepStatus::NonFiniteEvaluation: return "NonFiniteEvaluation";
    }
    return "unknown";
}

void SolverConfig::validate() const
{
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta: must be in (0, 1], got " + std::to_string(beta));
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon: must be positive and finite");
    }
    if (n_crit < 1) {
        throw std::invalid_argument("n_crit: must be at least 1");
    }
    if (!(guard_epsilon > 0.0) || !std::isfinite(guard_epsilon)) {
        throw std::invalid_argument("guard_epsilon: must be positive and finite");
    }
    if (!(zero_norm_floor >= 0.0) || !std::isfinite(zero_norm_floor)) {
        throw std::invalid_argument("zero_norm_floor: must be non-negative and finite");
    }
    if (beta_clamp && !(beta_clamp->lo > 0.0 && beta_clamp->lo <= beta_clamp->hi && std::isfinite(beta_clamp->hi))) {
        throw std::invalid_argument("beta_clamp: requires 0 < lo <= hi < inf");
    }
}

namespace {

void require_finite_scalar(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw NonFiniteError(std::string(what) + ": non-finite value");
    }
}

}  // namespace

StateVector picard_step(const StateVector& x, const StateVector& g, double beta)
{
    require_same_dimension(x.size(), g.size(), "picard_step");
    require_finite_scalar(beta, "picard_step beta");
    if (beta == 0.0) {
        throw std::invalid_argument("picard_step: beta must be nonzero");
    }
    return StateVector(Vector(beta * g.values() + (1.0 - beta) * x.values()));
}

AitkenFactor aitken_relaxation_factor(const Residual& f_prev, const Residual& f_curr, double beta_prev,
                                      double guard_epsilon)
{
    require_same_dimension(f_prev.size(), f_curr.size(), "aitken_relaxation_factor");
    require_finite_scalar(beta_prev, "aitken_relaxation_factor beta_prev");
    const Vector diff = f_curr.values() - f_prev.values();
    const double diff_sq = diff.squaredNorm();
    if (!(std::sqrt(diff_sq) >= guard_epsilon)) {
        return {beta_prev, true};
    }
    const double beta = -beta_prev * f_prev.values().dot(diff) / diff_sq;
    require_finite_scalar(beta, "aitken_relaxation_factor result");
    return {beta, false};
}

AndersonWeight anderson_alpha(const Residual& f_prev, const Residual& f_curr, double guard_epsilon)
{
    require_same_dimension(f_prev.size(), f_curr.size(), "anderson_alpha");
    const Vector diff = f_prev.values() - f_curr.values();
    const double diff_sq = diff.squaredNorm();
    if (!(std::sqrt(diff_sq) >= guard_epsilon)) {
        return {1.0, true};
    }
    const double alpha = diff.dot(f_prev.values()) / diff_sq;
    require_finite_scalar(alpha, "anderson_alpha result");
    return {alpha, false};
}

StateVector anderson_step(const StateVector& x_prev, const StateVector& x_curr, const StateVector& g_prev,
                          const StateVector& g_curr, double alpha, double beta)
{
    require_same_dimension(x_prev.size(), x_curr.size(), "anderson_step");
    require_same_dimension(x_prev.size(), g_prev.size(), "anderson_step");
    require_same_dimension(x_prev.size(), g_curr.size(), "anderson_step");
    require_finite_scalar(alpha, "anderson_step alpha");
    require_finite_scalar(beta, "anderson_step beta");
    const Vector relaxed_curr = beta * g_curr.values() + (1.0 - beta) * x_curr.values();
    const Vector relaxed_prev = beta * g_prev.values() + (1.0 - beta) * x_prev.values();
    return StateVector(Vector(alpha * relaxed_curr + (1.0 - alpha) * relaxed_prev));
}

bool check_stop(const StateVector& x, const StateVector& g, double epsilon, double zero_norm_floor)
{
    require_same_dimension(x.size(), g.size(), "check_stop");
    const double residual = (g.values() - x.values()).norm();
    return residual <= epsilon * std::max(x.norm(), zero_norm_floor);
}

// -----------------------------------------------------------------------------
// FixedPointIteration
// -----------------------------------------------------------------------------

FixedPointIteration::FixedPointIteration(const SolverConfig& config, StateVector x0, double beta_init)
    : config_(config), x_(std::move(x0)), beta_(config.algorithm == Algorithm::ATK ? beta_init : config.beta)
{
    config_.validate();
    require_finite_scalar(beta_, "FixedPointIteration beta_init");
    if (beta_ == 0.0) {
        throw std::invalid_argument("FixedPointIteration: beta_init must be nonzero");
    }
}

double FixedPointIteration::clamp_beta(double beta) const
{
    if (!config_.beta_clamp) return beta;
    const double magnitude = std::clamp(std::abs(beta), config_.beta_clamp->lo, config_.beta_clamp->hi);
    return std::copysign(magnitude, beta);
}

IterationRecord FixedPointIteration::advance(const StateVector& g)
{
    require_same_dimension(x_.size(), g.size(), "FixedPointIteration::advance");
    Residual f = Residual::between(x_, g);

    IterationRecord record;
    record.k = k_;
    record.residual_norm = f.norm();
    record.state_norm = x_.norm();

    std::optional<StateVector> next;
    switch (config_.algorithm) {
        case Algorithm::FPI:
            break;
        case Algorithm::ATK:
            if (prev_) {
                const AitkenFactor factor =
                    aitken_relaxation_factor(prev_->f, f, beta_, config_.guard_epsilon);
                record.guard_triggered = factor.guard_triggered;
                if (!factor.guard_triggered) beta_ = clamp_beta(factor.beta);
            }
            break;
        case Algorithm::TPA:
            if (prev_) {
                const AndersonWeight weight = anderson_alpha(prev_->f, f, config_.guard_epsilon);
                record.guard_triggered = weight.guard_triggered;
                if (!weight.guard_triggered) {
                    record.alpha_used = weight.alpha;
                    next = anderson_step(prev_->x, x_, prev_->g, g, weight.alpha, beta_);
                }
            }
            break;
    }
    if (!next) next = picard_step(x_, g, beta_);
    record.beta_used = beta_;

    prev_ = History{x_, g, std::move(f)};
    x_ = std::move(*next);
    ++k_;
    return record;
}

// -----------------------------------------------------------------------------
// solve_timestep
// -----------------------------------------------------------------------------

TimestepSolveResult solve_timestep(const TargetFunction& problem, double t, const StateVector& x0,
                                   const SolverConfig& config, double beta_init)
{
    require_same_dimension(problem.dimension(), x0.size(), "solve_timestep");
    FixedPointIteration iteration(config, x0, beta_init);

    TimestepSolveResult result{.status = TimestepStatus::DivergedIterationCap,
                               .x_final = x0,
                               .iterations = 0,
                               .trace = {},
                               .beta_last = iteration.beta()};
    result.trace.reserve(std::min<std::size_t>(config.n_crit, 64));

    for (std::size_t k = 0; k < config.n_crit; ++k) {
        const StateVector& x = iteration.current();
        Vector raw = problem.evaluate(x, t);
        result.iterations = k + 1;
        result.x_final = x;
        if (static_cast<std::size_t>(raw.size()) != x.size()) {
            throw std::logic_error("solve_timestep: target function returned dimension "
                                   + std::to_string(raw.size()) + ", expected " + std::to_string(x.size()));
        }
        if (!all_finite(raw)) {
            result.status = TimestepStatus::NonFiniteEvaluation;
            return result;
        }
        const StateVector g(std::move(raw));

        if (check_stop(x, g, config.epsilon, config.zero_norm_floor)) {
            IterationRecord record;
            record.k = k;
            record.residual_norm = (g.values() - x.values()).norm();
            record.beta_used = iteration.beta();
            record.state_norm = x.norm();
            result.trace.push_back(record);
            result.status = TimestepStatus::Converged;
            result.beta_last = iteration.beta();
            return result;
        }

        try {
            result.trace.push_back(iteration.advance(g));
        } catch (const NonFiniteError&) {
            result.status = TimestepStatus::NonFiniteEvaluation;
            result.beta_last = iteration.beta();
            return result;
        }
        result.beta_last = iteration.beta();
    }
    return result;
}

}  // namespace fpc
