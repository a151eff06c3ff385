#include "fpc/problems.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <random>
#include <stdexcept>

namespace fpc {

namespace {

StateVector solve_fixed_point(const Matrix& a, const Vector& b)
{
    const Eigen::Index n = a.rows();
    const Matrix system = Matrix::Identity(n, n) - a;
    const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
    Vector x = cod.solve(b);
    // one step of refinement
    x += cod.solve(Vector(b - system * x));

    const double mismatch = (a * x + b - x).norm();
    if (!(mismatch <= 1e-10 * std::max(x.norm(), b.norm()))) {
        throw std::invalid_argument("LinearAffineProblem: (I - A) x = b has no solution");
    }
    return StateVector(std::move(x));
}

double spectral_norm(const Matrix& a)
{
    const Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

LinearAffineProblem::LinearAffineProblem(Matrix matrix, Vector offset, double initial_offset)
    : matrix_(std::move(matrix)),
      offset_(std::move(offset)),
      fixed_point_(StateVector::zeros(1)),
      contraction_factor_(0.0),
      initial_offset_(initial_offset)
{
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("LinearAffineProblem: matrix must be square and non-empty");
    }
    require_same_dimension(static_cast<std::size_t>(matrix_.rows()), static_cast<std::size_t>(offset_.size()),
                           "LinearAffineProblem offset");
    if (!all_finite(Eigen::Map<const Vector>(matrix_.data(), matrix_.size())) || !all_finite(offset_)) {
        throw std::invalid_argument("LinearAffineProblem: non-finite coefficients");
    }
    if (!std::isfinite(initial_offset_)) {
        throw std::invalid_argument("LinearAffineProblem: non-finite initial_offset");
    }
    fixed_point_ = solve_fixed_point(matrix_, offset_);
    contraction_factor_ = spectral_norm(matrix_);
}

LinearAffineProblem LinearAffineProblem::random(std::size_t n, double contraction, std::uint64_t seed,
                                                bool symmetric)
{
    if (n == 0) throw std::invalid_argument("LinearAffineProblem::random: n must be positive");
    if (!(contraction >= 0.0 && contraction < 1.0)) {
        throw std::invalid_argument("LinearAffineProblem::random: contraction must lie in [0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto size = static_cast<Eigen::Index>(n);

    Matrix a(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::Index i = 0; i < size; ++i) a(i, j) = normal(rng);
    }
    if (symmetric) a = (0.5 * (a + a.transpose())).eval();
    const double norm = spectral_norm(a);
    if (norm > 0.0) a *= contraction / norm;

    Vector b(size);
    for (Eigen::Index i = 0; i < size; ++i) b[i] = normal(rng);
    return LinearAffineProblem(std::move(a), std::move(b));
}

Vector LinearAffineProblem::evaluate(const StateVector& x, double /*t*/) const
{
    require_same_dimension(dimension(), x.size(), "LinearAffineProblem::evaluate");
    return matrix_ * x.values() + offset_;
}

StateVector LinearAffineProblem::initial_guess(double /*t_start*/) const
{
    return StateVector(Vector(fixed_point_.values().array() + initial_offset_));
}

}  // namespace fpc
