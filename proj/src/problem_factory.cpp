#include "fpc/format.hpp"
#include "fpc/problems.hpp"

#include <stdexcept>

namespace fpc {

namespace {

struct Describer {
    std::string operator()(const LinearAffineParams& p) const
    {
        if (p.random) {
            return "linear_affine;n=" + std::to_string(p.random->dimension) + ";contraction="
                   + format_double(p.random->contraction) + ";seed=" + std::to_string(p.random->seed)
                   + (p.random->symmetric ? ";symmetric" : "");
        }
        const auto n = p.matrix ? p.matrix->rows() : 0;
        return "linear_affine;n=" + std::to_string(n) + ";explicit";
    }

    std::string operator()(const OscillatingProblem::Params& p) const
    {
        return "oscillating;n=" + std::to_string(p.dimension) + ";amplitude=" + format_double(p.amplitude)
               + ";omega=" + format_double(p.angular_frequency) + ";contraction=" + format_double(p.contraction)
               + ";stiffness=" + format_double(p.stiffness) + ";seed=" + std::to_string(p.seed);
    }

    std::string operator()(const ToyWellFractureParams& p) const
    {
        return "toy_well_fracture;n_frac=" + std::to_string(p.n_frac) + ";choke_k=" + format_double(p.choke_k)
               + ";friction_k=" + format_double(p.friction_k) + ";p_res=" + format_double(p.p_res)
               + ";settings=" + std::to_string(p.schedule.size());
    }
};

struct Builder {
    std::unique_ptr<TargetFunction> operator()(const LinearAffineParams& p) const
    {
        if (p.matrix.has_value() == p.random.has_value()) {
            throw std::invalid_argument("linear_affine: exactly one of matrix or random is required");
        }
        if (p.random) {
            LinearAffineProblem generated = LinearAffineProblem::random(p.random->dimension, p.random->contraction,
                                                                        p.random->seed, p.random->symmetric);
            Vector offset = p.offset ? *p.offset : generated.offset();
            return std::make_unique<LinearAffineProblem>(generated.matrix(), std::move(offset), p.initial_offset);
        }
        if (!p.offset) throw std::invalid_argument("linear_affine.offset: required with an explicit matrix");
        return std::make_unique<LinearAffineProblem>(*p.matrix, *p.offset, p.initial_offset);
    }

    std::unique_ptr<TargetFunction> operator()(const OscillatingProblem::Params& p) const
    {
        return std::make_unique<OscillatingProblem>(p);
    }

    std::unique_ptr<TargetFunction> operator()(const ToyWellFractureParams& p) const
    {
        return std::make_unique<ToyWellFractureProblem>(p);
    }
};

}  // namespace

std::string problem_type_name(const ProblemConfig& config)
{
    switch (config.index()) {
        case 0: return "linear_affine";
        case 1: return "oscillating";
        default: return "toy_well_fracture";
    }
}

std::string describe(const ProblemConfig& config)
{
    return std::visit(Describer{}, config);
}

std::unique_ptr<TargetFunction> make_problem(const ProblemConfig& config)
{
    return std::visit(Builder{}, config);
}

}  // namespace fpc
