#pragma once

#include <cstddef>

namespace fpc::theory {

/// Picard residual bound for a contraction with factor c and beta = 1:
/// ||f_k|| <= c^k ||f_0||.
[[nodiscard]] double contraction_bound(double c, std::size_t k, double f0_norm);

/// Best-residual bound for a non-expansive map:
/// min_{j<=k} ||f_j|| <= ||x_0 - x*|| / ((k + 1) beta (1 - beta)).
[[nodiscard]] double nonexpansive_bound(double dist0, std::size_t k, double beta);

/// Sufficient linear rate of two-point Anderson on a contraction with factor c:
/// (3c - c^2) / (1 - c).
[[nodiscard]] double anderson_sufficient_factor(double c);

/// Largest c for which anderson_sufficient_factor(c) < 1, i.e. 2 - sqrt(3).
[[nodiscard]] double anderson_sufficient_threshold() noexcept;

}  // namespace fpc::theory
