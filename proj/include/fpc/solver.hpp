#pragma once

#include "fpc/state_vector.hpp"
#include "fpc/target_function.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace fpc {

// =============================================================================
// Configuration
// =============================================================================

/// FPI: relaxed Picard iteration. ATK: vector Aitken relaxation.
/// TPA: two-point Anderson acceleration (history depth m = 2).
enum class Algorithm { FPI, ATK, TPA };

[[nodiscard]] std::string_view to_string(Algorithm algorithm) noexcept;
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Bounds on |beta_k| for Aitken relaxation; the sign of beta_k is kept.
struct BetaClamp {
    double lo = 0.0;
    double hi = 0.0;
};

struct SolverConfig {
    Algorithm algorithm = Algorithm::FPI;
    double beta = 1.0;               // beta for FPI/TPA, beta_0 for ATK
    double epsilon = 1e-8;           // relative tolerance of the stop condition
    std::size_t n_crit = 1000;       // per-timestep iteration cap
    double guard_epsilon = 1e-10;    // minimum ||f_k - f_{k-1}|| for an accelerated step
    double zero_norm_floor = 1e-300;
    std::optional<BetaClamp> beta_clamp;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// =============================================================================
// Results
// =============================================================================

struct IterationRecord {
    std::size_t k = 0;
    double residual_norm = 0.0;
    double beta_used = 0.0;
    std::optional<double> alpha_used;  // TPA accelerated steps only
    bool guard_triggered = false;
    double state_norm = 0.0;
};

enum class TimestepStatus { Converged, DivergedIterationCap, NonFiniteEvaluation };

[[nodiscard]] std::string_view to_string(TimestepStatus status) noexcept;

struct TimestepSolveResult {
    TimestepStatus status = TimestepStatus::DivergedIterationCap;
    StateVector x_final;
    std::size_t iterations = 0;  // number of G evaluations
    std::vector<IterationRecord> trace;
    double beta_last = 1.0;      // ATK: last beta_k; FPI/TPA: configured beta
};

// =============================================================================
// Update formulas
// =============================================================================

/// beta * g + (1 - beta) * x
[[nodiscard]] StateVector picard_step(const StateVector& x, const StateVector& g, double beta);

struct AitkenFactor {
    double beta = 1.0;
    bool guard_triggered = false;
};

/// Vector Aitken factor
///   beta_k = -beta_{k-1} <f_{k-1}, f_k - f_{k-1}> / <f_k - f_{k-1}, f_k - f_{k-1}>.
/// When ||f_k - f_{k-1}|| < guard_epsilon the previous factor is returned
/// with guard_triggered set, which the caller turns into a Picard step.
[[nodiscard]] AitkenFactor aitken_relaxation_factor(const Residual& f_prev, const Residual& f_curr,
                                                    double beta_prev, double guard_epsilon);

struct AndersonWeight {
    double alpha = 1.0;
    bool guard_triggered = false;
};

/// Exact minimizer over alpha of ||alpha f_k + (1 - alpha) f_{k-1}||:
///   alpha = <f_{k-1} - f_k, f_{k-1}> / <f_{k-1} - f_k, f_{k-1} - f_k>.
/// Returns (1, true) when ||f_k - f_{k-1}|| < guard_epsilon.
[[nodiscard]] AndersonWeight anderson_alpha(const Residual& f_prev, const Residual& f_curr, double guard_epsilon);

/// alpha (beta g_k + (1-beta) x_k) + (1 - alpha)(beta g_{k-1} + (1-beta) x_{k-1})
[[nodiscard]] StateVector anderson_step(const StateVector& x_prev, const StateVector& x_curr,
                                        const StateVector& g_prev, const StateVector& g_curr, double alpha,
                                        double beta);

/// ||g - x|| <= epsilon * max(||x||, zero_norm_floor)
[[nodiscard]] bool check_stop(const StateVector& x, const StateVector& g, double epsilon, double zero_norm_floor);

// =============================================================================
// Iteration state machine
// =============================================================================

/// One scheme advancing x_k -> x_{k+1} given g_k = G(x_k).
///
/// Keeps only the previous iterate, its image and residual, so memory does
/// not grow with the iteration count. The first step of ATK and TPA is a
/// Picard step (there is no history yet).
class FixedPointIteration {
public:
    FixedPointIteration(const SolverConfig& config, StateVector x0, double beta_init);

    [[nodiscard]] const StateVector& current() const noexcept { return x_; }
    [[nodiscard]] std::size_t iteration() const noexcept { return k_; }
    /// Relaxation factor the next plain step would use.
    [[nodiscard]] double beta() const noexcept { return beta_; }

    /// Consume g_k = G(x_k) and move to x_{k+1}. Throws NonFiniteError if the
    /// new iterate overflows.
    IterationRecord advance(const StateVector& g);

private:
    SolverConfig config_;
    StateVector x_;
    double beta_;
    std::size_t k_ = 0;

    struct History {
        StateVector x;
        StateVector g;
        Residual f;
    };
    std::optional<History> prev_;

    [[nodiscard]] double clamp_beta(double beta) const;
};

/// Solve x = G(x, t) from x0, evaluating G once per iteration.
///
/// beta_init is beta_0 for ATK (the carried-over factor on later timesteps)
/// and is ignored by FPI and TPA, which always use config.beta.
[[nodiscard]] TimestepSolveResult solve_timestep(const TargetFunction& problem, double t, const StateVector& x0,
                                                 const SolverConfig& config, double beta_init);

}  // namespace fpc
