#include "fpc/state_vector.hpp"

#include <cmath>

namespace fpc {

bool all_finite(const Vector& v) noexcept
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return false;
    }
    return true;
}

StateVector::StateVector(Vector values) : values_(std::move(values))
{
    if (values_.size() == 0) {
        throw std::invalid_argument("StateVector: dimension must be at least 1");
    }
    if (!all_finite(values_)) {
        throw NonFiniteError("StateVector: non-finite entry");
    }
}

StateVector::StateVector(std::initializer_list<double> values)
    : StateVector(std::vector<double>(values))
{
}

StateVector::StateVector(const std::vector<double>& values)
    : StateVector(Vector(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()))))
{
}

StateVector StateVector::zeros(std::size_t n)
{
    return StateVector(Vector::Zero(static_cast<Eigen::Index>(n)));
}

std::vector<double> StateVector::to_std() const
{
    return {values_.data(), values_.data() + values_.size()};
}

bool operator==(const StateVector& a, const StateVector& b)
{
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
}

Residual::Residual(StateVector f) : f_(std::move(f)), norm_(f_.norm()) {}

Residual Residual::between(const StateVector& x, const StateVector& g)
{
    require_same_dimension(x.size(), g.size(), "Residual");
    return Residual(StateVector(Vector(g.values() - x.values())));
}

void require_same_dimension(std::size_t a, std::size_t b, const std::string& what)
{
    if (a != b) {
        throw std::invalid_argument(what + ": dimension mismatch (" + std::to_string(a) + " vs "
                                    + std::to_string(b) + ")");
    }
}

}  // namespace fpc
