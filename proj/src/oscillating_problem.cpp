#include "fpc/problems.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fpc {

namespace {

void validate(const OscillatingProblem::Params& p)
{
    if (p.dimension == 0) throw std::invalid_argument("oscillating.dimension: must be positive");
    if (!std::isfinite(p.amplitude)) throw std::invalid_argument("oscillating.amplitude: must be finite");
    if (!std::isfinite(p.angular_frequency)) {
        throw std::invalid_argument("oscillating.angular_frequency: must be finite");
    }
    if (!(p.contraction > 0.0 && p.contraction < 1.0)) {
        throw std::invalid_argument("oscillating.contraction: must lie in (0, 1)");
    }
    if (!(p.stiffness >= 1.0) || !std::isfinite(p.stiffness)) {
        throw std::invalid_argument("oscillating.stiffness: must be >= 1");
    }
    if (!std::isfinite(p.initial_offset)) {
        throw std::invalid_argument("oscillating.initial_offset: must be finite");
    }
}

/// Q diag(sigma) Q^T with sigma geometrically spaced from c down to c / s.
Matrix spd_with_spectrum(std::size_t n, double c, double s, std::uint64_t seed)
{
    const auto size = static_cast<Eigen::Index>(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix gaussian(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::Index i = 0; i < size; ++i) gaussian(i, j) = normal(rng);
    }
    const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian).householderQ();

    Vector sigma(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const double fraction = size > 1 ? static_cast<double>(i) / static_cast<double>(size - 1) : 0.0;
        sigma[i] = c * std::pow(s, -fraction);
    }
    return q * sigma.asDiagonal() * q.transpose();
}

}  // namespace

OscillatingProblem::OscillatingProblem(const Params& params) : params_(params)
{
    validate(params_);
    matrix_ = spd_with_spectrum(params_.dimension, params_.contraction, params_.stiffness, params_.seed);
    const auto n = static_cast<Eigen::Index>(params_.dimension);
    phases_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        phases_[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    }
}

StateVector OscillatingProblem::fixed_point(double t) const
{
    Vector x(phases_.size());
    for (Eigen::Index i = 0; i < phases_.size(); ++i) {
        x[i] = params_.amplitude * std::sin(params_.angular_frequency * t + phases_[i]);
    }
    return StateVector(std::move(x));
}

Vector OscillatingProblem::evaluate(const StateVector& x, double t) const
{
    require_same_dimension(dimension(), x.size(), "OscillatingProblem::evaluate");
    const StateVector target = fixed_point(t);
    return target.values() + matrix_ * (x.values() - target.values());
}

StateVector OscillatingProblem::initial_guess(double t_start) const
{
    return StateVector(Vector(fixed_point(t_start).values().array() + params_.initial_offset));
}

}  // namespace fpc
