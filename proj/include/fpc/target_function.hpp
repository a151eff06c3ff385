#pragma once

#include "fpc/state_vector.hpp"

#include <cstddef>
#include <vector>

namespace fpc {

/// The map G of a timestep fixed-point problem x = G(x, t).
///
/// evaluate() must be deterministic and free of side effects: repeated calls
/// with the same (x, t) return identical vectors. Anything irreversible
/// (fracture failures, schedule switches) is committed in advance_time(),
/// which the driver calls once per accepted timestep.
///
/// evaluate() returns a raw vector rather than a StateVector so that the
/// solver can classify NaN/Inf output as a failed evaluation instead of an
/// exception.
class TargetFunction {
public:
    virtual ~TargetFunction() = default;

    [[nodiscard]] virtual std::size_t dimension() const = 0;
    [[nodiscard]] virtual Vector evaluate(const StateVector& x, double t) const = 0;

    /// Commit state changes between timesteps. Returns the indices of
    /// components whose behaviour changed irreversibly (empty by default).
    virtual std::vector<std::size_t> advance_time(const StateVector& accepted, double t_old, double t_new)
    {
        (void)accepted;
        (void)t_old;
        (void)t_new;
        return {};
    }

    /// Default first-step initial guess.
    [[nodiscard]] virtual StateVector initial_guess(double t_start) const = 0;
};

}  // namespace fpc
