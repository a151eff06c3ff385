#pragma once

#include "fpc/state_vector.hpp"
#include "fpc/target_function.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fpc {

using Matrix = Eigen::MatrixXd;

// =============================================================================
// Linear affine problem: G(x) = A x + b
// =============================================================================

class LinearAffineProblem final : public TargetFunction {
public:
    /// Throws std::invalid_argument if (I - A) x = b has no solution.
    LinearAffineProblem(Matrix matrix, Vector offset, double initial_offset = 1.0);

    /// Random A with spectral norm exactly `contraction` and random b, both
    /// drawn from a seeded generator. Symmetric matrices have real spectrum.
    static LinearAffineProblem random(std::size_t n, double contraction, std::uint64_t seed, bool symmetric = false);

    [[nodiscard]] std::size_t dimension() const override { return static_cast<std::size_t>(offset_.size()); }
    [[nodiscard]] Vector evaluate(const StateVector& x, double t) const override;
    [[nodiscard]] StateVector initial_guess(double t_start) const override;

    [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const Vector& offset() const noexcept { return offset_; }
    [[nodiscard]] const StateVector& fixed_point() const noexcept { return fixed_point_; }
    /// Spectral norm of the matrix.
    [[nodiscard]] double contraction_factor() const noexcept { return contraction_factor_; }

private:
    Matrix matrix_;
    Vector offset_;
    StateVector fixed_point_;
    double contraction_factor_;
    double initial_offset_;
};

// =============================================================================
// Oscillating problem: G(x, t) = x*(t) + M (x - x*(t))
// =============================================================================

/// Time-dependent contraction whose fixed point x*_i(t) = A sin(w t + 2 pi i / n)
/// moves periodically, a stand-in for an oscillatory flow regime. M is
/// symmetric positive definite with ||M||_2 = contraction and condition
/// number `stiffness`.
class OscillatingProblem final : public TargetFunction {
public:
    struct Params {
        std::size_t dimension = 20;
        double amplitude = 1.0;
        double angular_frequency = 1.0;  // rad/s
        double contraction = 0.5;
        double stiffness = 1.0;
        std::uint64_t seed = 1;
        double initial_offset = 0.0;     // added to x*(t_start) for the first guess
    };

    explicit OscillatingProblem(const Params& params);

    [[nodiscard]] std::size_t dimension() const override { return params_.dimension; }
    [[nodiscard]] Vector evaluate(const StateVector& x, double t) const override;
    [[nodiscard]] StateVector initial_guess(double t_start) const override;

    [[nodiscard]] StateVector fixed_point(double t) const;
    [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const Params& params() const noexcept { return params_; }

private:
    Params params_;
    Matrix matrix_;
    Vector phases_;
};

// =============================================================================
// Toy choke / well / fracture coupling
// =============================================================================

/// Piecewise-constant surface controls, effective from `t` onward.
struct ChokeSetting {
    double t = 0.0;
    double choke_diam = 1.0;  // 1/64 inch
    double p_whdc = 0.0;      // Pa
};

struct ToyWellFractureParams {
    std::size_t n_frac = 1;
    std::vector<double> depth;               // m, true vertical depth of each cell
    double density = 1000.0;                 // kg/m^3
    double friction_k = 0.0;                 // Pa s^2 / m^6
    double choke_k = 0.0;                    // Pa (1/64 in)^4 s^2 / m^6
    double p_res = 0.0;                      // Pa
    std::vector<double> productivity_index;  // m^3 / (s Pa)
    std::vector<double> area;                // m^2
    std::vector<double> v_crit;              // m/s
    std::vector<ChokeSetting> schedule;      // sorted by t, non-empty

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

inline constexpr double standard_gravity = 9.80665;

/// Single-phase surrogate of the well-fracture coupling Q = FRACTURES(WELL(Q, t), t).
///
/// Cells are ordered from heel (index 0) to toe; the flow passing cell i on
/// its way to surface is the sum of rates of cells i..n-1. A fracture whose
/// accepted rate gives a pack velocity q_i / area_i above v_crit_i is
/// disconnected permanently at the next advance_time().
class ToyWellFractureProblem final : public TargetFunction {
public:
    explicit ToyWellFractureProblem(ToyWellFractureParams params);

    [[nodiscard]] std::size_t dimension() const override { return params_.n_frac; }
    [[nodiscard]] Vector evaluate(const StateVector& x, double t) const override;
    std::vector<std::size_t> advance_time(const StateVector& accepted, double t_old, double t_new) override;
    [[nodiscard]] StateVector initial_guess(double t_start) const override;

    /// choke_k * q^2 / d^4
    [[nodiscard]] double choke_pressure_drop(double q_total, double choke_diam) const;
    [[nodiscard]] Vector well_pressures(const StateVector& rates, double t) const;
    [[nodiscard]] Vector fracture_rates(const Vector& pressures, double t) const;
    [[nodiscard]] Vector evaluate_coupled(const StateVector& x, double t) const { return evaluate(x, t); }

    /// Marks fractures whose velocity exceeds the threshold as failed and
    /// returns the indices failed by this call.
    std::vector<std::size_t> advance_time_failures(const StateVector& accepted, double t_old, double t_new);

    [[nodiscard]] const ChokeSetting& controls_at(double t) const;
    [[nodiscard]] const ChokeSetting& active_controls() const noexcept { return *active_controls_; }
    [[nodiscard]] const std::vector<bool>& alive() const noexcept { return alive_; }
    [[nodiscard]] std::size_t alive_count() const noexcept;
    [[nodiscard]] const ToyWellFractureParams& params() const noexcept { return params_; }

private:
    ToyWellFractureParams params_;
    std::vector<bool> alive_;
    const ChokeSetting* active_controls_;
};

// =============================================================================
// Problem configuration and construction
// =============================================================================

struct RandomAffineSpec {
    std::size_t dimension = 2;
    double contraction = 0.5;
    std::uint64_t seed = 1;
    bool symmetric = false;
};

struct LinearAffineParams {
    std::optional<Matrix> matrix;             // explicit A, or
    std::optional<RandomAffineSpec> random;   // a generated one
    std::optional<Vector> offset;             // required with an explicit matrix
    double initial_offset = 1.0;
};

using ProblemConfig = std::variant<LinearAffineParams, OscillatingProblem::Params, ToyWellFractureParams>;

[[nodiscard]] std::string problem_type_name(const ProblemConfig& config);

/// Compact "key=value;..." description without commas, used in reports.
[[nodiscard]] std::string describe(const ProblemConfig& config);

/// Builds a fresh problem instance; each simulation needs its own because
/// problems may carry between-timestep state.
[[nodiscard]] std::unique_ptr<TargetFunction> make_problem(const ProblemConfig& config);

}  // namespace fpc
