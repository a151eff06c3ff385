#include "fpc/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpc {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) throw std::invalid_argument(message);
}

void require_per_fracture(const std::vector<double>& values, std::size_t n, const char* name, bool positive)
{
    require(values.size() == n, std::string("toy_well_fracture.") + name + ": expected " + std::to_string(n)
                                    + " values, got " + std::to_string(values.size()));
    for (double v : values) {
        require(std::isfinite(v) && (positive ? v > 0.0 : v >= 0.0),
                std::string("toy_well_fracture.") + name + (positive ? ": entries must be positive"
                                                                     : ": entries must be non-negative"));
    }
}

/// q |q|: equals q^2 for the non-negative rates the model produces and stays
/// monotone if an accelerated iterate overshoots below zero.
double signed_square(double q) { return q * std::abs(q); }

}  // namespace

void ToyWellFractureParams::validate() const
{
    require(n_frac >= 1, "toy_well_fracture.n_frac: must be at least 1");
    require(depth.size() == n_frac, "toy_well_fracture.depth: expected " + std::to_string(n_frac) + " values");
    for (double d : depth) require(std::isfinite(d), "toy_well_fracture.depth: entries must be finite");
    require(std::isfinite(density) && density >= 0.0, "toy_well_fracture.density: must be non-negative");
    require(std::isfinite(friction_k) && friction_k >= 0.0, "toy_well_fracture.friction_k: must be non-negative");
    require(std::isfinite(choke_k) && choke_k >= 0.0, "toy_well_fracture.choke_k: must be non-negative");
    require(std::isfinite(p_res), "toy_well_fracture.p_res: must be finite");
    require_per_fracture(productivity_index, n_frac, "productivity_index", false);
    require_per_fracture(area, n_frac, "area", true);
    require_per_fracture(v_crit, n_frac, "v_crit", false);
    require(!schedule.empty(), "toy_well_fracture.schedule: must contain at least one setting");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const ChokeSetting& s = schedule[i];
        const std::string where = "toy_well_fracture.schedule[" + std::to_string(i) + "]";
        require(std::isfinite(s.t), where + ".t: must be finite");
        require(std::isfinite(s.choke_diam) && s.choke_diam > 0.0, where + ".choke_diam: must be positive");
        require(std::isfinite(s.p_whdc), where + ".p_whdc: must be finite");
        require(i == 0 || schedule[i - 1].t < s.t, where + ".t: settings must be strictly increasing in time");
    }
}

ToyWellFractureProblem::ToyWellFractureProblem(ToyWellFractureParams params)
    : params_(std::move(params)), alive_(), active_controls_(nullptr)
{
    params_.validate();
    alive_.assign(params_.n_frac, true);
    active_controls_ = &params_.schedule.front();
}

const ChokeSetting& ToyWellFractureProblem::controls_at(double t) const
{
    const auto& schedule = params_.schedule;
    auto it = std::upper_bound(schedule.begin(), schedule.end(), t,
                               [](double value, const ChokeSetting& s) { return value < s.t; });
    return it == schedule.begin() ? schedule.front() : *std::prev(it);
}

double ToyWellFractureProblem::choke_pressure_drop(double q_total, double choke_diam) const
{
    if (!(q_total >= 0.0)) throw std::invalid_argument("choke_pressure_drop: rate must be non-negative");
    if (!(choke_diam > 0.0)) throw std::invalid_argument("choke_pressure_drop: diameter must be positive");
    const double d2 = choke_diam * choke_diam;
    return params_.choke_k * q_total * q_total / (d2 * d2);
}

Vector ToyWellFractureProblem::well_pressures(const StateVector& rates, double t) const
{
    require_same_dimension(params_.n_frac, rates.size(), "ToyWellFractureProblem::well_pressures");
    const ChokeSetting& controls = controls_at(t);
    const auto n = static_cast<Eigen::Index>(params_.n_frac);
    const Vector& q = rates.values();

    const double d2 = controls.choke_diam * controls.choke_diam;
    const double surface = controls.p_whdc + params_.choke_k * signed_square(q.sum()) / (d2 * d2);

    Vector p(n);
    double passing = 0.0;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        passing += q[i];
        p[i] = surface + params_.density * standard_gravity * params_.depth[static_cast<std::size_t>(i)]
               + params_.friction_k * signed_square(passing);
    }
    return p;
}

Vector ToyWellFractureProblem::fracture_rates(const Vector& pressures, double /*t*/) const
{
    require_same_dimension(params_.n_frac, static_cast<std::size_t>(pressures.size()),
                           "ToyWellFractureProblem::fracture_rates");
    if (!all_finite(pressures)) throw NonFiniteError("fracture_rates: non-finite pressure");
    Vector q(pressures.size());
    for (Eigen::Index i = 0; i < pressures.size(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        q[i] = alive_[idx] ? params_.productivity_index[idx] * std::max(params_.p_res - pressures[i], 0.0) : 0.0;
    }
    return q;
}

Vector ToyWellFractureProblem::evaluate(const StateVector& x, double t) const
{
    return fracture_rates(well_pressures(x, t), t);
}

std::vector<std::size_t> ToyWellFractureProblem::advance_time_failures(const StateVector& accepted,
                                                                       double /*t_old*/, double t_new)
{
    require_same_dimension(params_.n_frac, accepted.size(), "ToyWellFractureProblem::advance_time_failures");
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < params_.n_frac; ++i) {
        if (alive_[i] && accepted[i] / params_.area[i] > params_.v_crit[i]) {
            alive_[i] = false;
            failed.push_back(i);
        }
    }
    active_controls_ = &controls_at(t_new);
    return failed;
}

std::vector<std::size_t> ToyWellFractureProblem::advance_time(const StateVector& accepted, double t_old,
                                                              double t_new)
{
    return advance_time_failures(accepted, t_old, t_new);
}

StateVector ToyWellFractureProblem::initial_guess(double /*t_start*/) const
{
    return StateVector::zeros(params_.n_frac);
}

std::size_t ToyWellFractureProblem::alive_count() const noexcept
{
    return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
}

}  // namespace fpc
