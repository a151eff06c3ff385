#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpc {

using Vector = Eigen::VectorXd;

/// Raised when a vector that must be finite contains NaN or Inf.
class NonFiniteError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

[[nodiscard]] bool all_finite(const Vector& v) noexcept;

/// Coupling unknown of a fixed-point problem (normalized phase rates).
///
/// Entries are finite and the dimension is at least one. The dimension never
/// changes after construction; arithmetic happens on the underlying Eigen
/// vector and the result is re-validated by wrapping it again.
class StateVector {
public:
    explicit StateVector(Vector values);
    StateVector(std::initializer_list<double> values);
    explicit StateVector(const std::vector<double>& values);

    static StateVector zeros(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
    [[nodiscard]] const Vector& values() const noexcept { return values_; }
    [[nodiscard]] double norm() const { return values_.norm(); }
    [[nodiscard]] std::vector<double> to_std() const;

    /// Exact (bitwise for non-zero values) equality.
    friend bool operator==(const StateVector& a, const StateVector& b);

private:
    Vector values_;
};

/// f = g - x together with its Euclidean norm.
class Residual {
public:
    explicit Residual(StateVector f);

    /// Residual of the evaluation g = G(x).
    static Residual between(const StateVector& x, const StateVector& g);

    [[nodiscard]] const StateVector& f() const noexcept { return f_; }
    [[nodiscard]] const Vector& values() const noexcept { return f_.values(); }
    [[nodiscard]] double norm() const noexcept { return norm_; }
    [[nodiscard]] std::size_t size() const noexcept { return f_.size(); }

private:
    StateVector f_;
    double norm_;
};

/// Throws std::invalid_argument naming `what` when the sizes differ.
void require_same_dimension(std::size_t a, std::size_t b, const std::string& what);

}  // namespace fpc
