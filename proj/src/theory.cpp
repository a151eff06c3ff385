#include "fpc/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace fpc::theory {

namespace {

void require_contraction(double c)
{
    if (!(c >= 0.0 && c < 1.0)) {
        throw std::domain_error("contraction factor must lie in [0, 1)");
    }
}

}  // namespace

double contraction_bound(double c, std::size_t k, double f0_norm)
{
    require_contraction(c);
    return std::pow(c, static_cast<double>(k)) * f0_norm;
}

double nonexpansive_bound(double dist0, std::size_t k, double beta)
{
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::domain_error("nonexpansive_bound: beta must lie in (0, 1)");
    }
    if (!(dist0 >= 0.0)) {
        throw std::domain_error("nonexpansive_bound: dist0 must be non-negative");
    }
    return dist0 / (static_cast<double>(k + 1) * beta * (1.0 - beta));
}

double anderson_sufficient_factor(double c)
{
    require_contraction(c);
    return (3.0 * c - c * c) / (1.0 - c);
}

double anderson_sufficient_threshold() noexcept
{
    return 2.0 - std::sqrt(3.0);
}

}  // namespace fpc::theory
