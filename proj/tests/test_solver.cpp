#include "fpc/problems.hpp"
#include "fpc/solver.hpp"

#include "support/test_maps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

using namespace fpc;
using fpc::testing::LambdaTarget;
using fpc::testing::ScalarAffine;
using fpc::testing::random_vector;

namespace {

SolverConfig config_for(Algorithm algorithm, double beta, double epsilon = 1e-12, std::size_t n_crit = 1000)
{
    SolverConfig c;
    c.algorithm = algorithm;
    c.beta = beta;
    c.epsilon = epsilon;
    c.n_crit = n_crit;
    return c;
}

bool bitwise_equal(const StateVector& a, const StateVector& b)
{
    return a.size() == b.size()
           && std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

Residual residual(std::initializer_list<double> values) { return Residual(StateVector(values)); }

}  // namespace

TEST(Algorithm, NamesRoundTrip)
{
    for (Algorithm a : {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA}) {
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    }
    EXPECT_FALSE(parse_algorithm("fpi").has_value());
}

TEST(SolverConfig, Validation)
{
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    c.beta = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.beta = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.epsilon = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.n_crit = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.guard_epsilon = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(PicardStep, Examples)
{
    EXPECT_EQ(picard_step(StateVector{0.0, 0.0}, StateVector{0.0, 0.0}, 0.5), (StateVector{0.0, 0.0}));
    EXPECT_EQ(picard_step(StateVector{1.0}, StateVector{3.0}, 1.0), StateVector{3.0});
    EXPECT_EQ(picard_step(StateVector{1.0}, StateVector{3.0}, 0.5), StateVector{2.0});
    EXPECT_THROW((void)picard_step(StateVector{1.0}, StateVector{1.0, 2.0}, 0.5), std::invalid_argument);
}

TEST(AitkenFactor, Examples)
{
    const AitkenFactor same = aitken_relaxation_factor(residual({0.3, 0.1}), residual({0.3, 0.1}), 0.37, 1e-10);
    EXPECT_TRUE(same.guard_triggered);
    EXPECT_EQ(same.beta, 0.37);

    const AitkenFactor f = aitken_relaxation_factor(residual({1.0, 0.0}), residual({0.0, 1.0}), 1.0, 1e-10);
    EXPECT_FALSE(f.guard_triggered);
    EXPECT_DOUBLE_EQ(f.beta, 0.5);
}

TEST(AitkenFactor, ScalarAffineFirstFactor)
{
    // f1 - f0 = (a - 1) beta0 f0, so beta1 = 1 / (1 - a) whatever x0 and beta0
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> a_dist(-0.95, 0.95);
    std::uniform_real_distribution<double> x_dist(-100.0, 100.0);
    std::uniform_real_distribution<double> beta_dist(0.05, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = a_dist(rng);
        const double b = x_dist(rng);
        const double x0 = x_dist(rng);
        const double beta0 = beta_dist(rng);
        const double f0 = a * x0 + b - x0;
        const double x1 = x0 + beta0 * f0;
        const double f1 = a * x1 + b - x1;
        const AitkenFactor factor = aitken_relaxation_factor(residual({f0}), residual({f1}), beta0, 1e-10);
        ASSERT_FALSE(factor.guard_triggered);
        EXPECT_NEAR(factor.beta, 1.0 / (1.0 - a), 1e-9 / (1.0 - a));
    }
}

TEST(AndersonAlpha, Examples)
{
    EXPECT_EQ(anderson_alpha(residual({2.0, 1.0}), residual({0.0, 0.0}), 1e-10).alpha, 1.0);
    EXPECT_EQ(anderson_alpha(residual({0.0, 0.0}), residual({2.0, 1.0}), 1e-10).alpha, 0.0);

    const AndersonWeight w = anderson_alpha(residual({1.0, 0.0}), residual({0.0, 1.0}), 1e-10);
    EXPECT_FALSE(w.guard_triggered);
    EXPECT_DOUBLE_EQ(w.alpha, 0.5);

    const AndersonWeight guarded = anderson_alpha(residual({1.0, 2.0}), residual({1.0, 2.0}), 1e-10);
    EXPECT_TRUE(guarded.guard_triggered);
    EXPECT_EQ(guarded.alpha, 1.0);
}

TEST(AndersonAlpha, MatchesBruteForceMinimizer)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const Vector fp = random_vector(rng, n);
        const Vector fc = random_vector(rng, n);
        const AndersonWeight w = anderson_alpha(Residual(StateVector(fp)), Residual(StateVector(fc)), 1e-10);
        ASSERT_FALSE(w.guard_triggered);

        // the minimizer of a convex quadratic in alpha; search a window wide
        // enough to contain it
        const double lo = std::floor(w.alpha) - 2.0;
        const double hi = std::ceil(w.alpha) + 2.0;
        double best_alpha = lo;
        double best_norm = std::numeric_limits<double>::infinity();
        const auto steps = static_cast<long>(std::llround((hi - lo) / 1e-4));
        for (long i = 0; i <= steps; ++i) {
            const double alpha = lo + static_cast<double>(i) * 1e-4;
            const double norm = (alpha * fc + (1.0 - alpha) * fp).norm();
            if (norm < best_norm) {
                best_norm = norm;
                best_alpha = alpha;
            }
        }
        EXPECT_LE(std::abs(w.alpha - best_alpha), 1e-4 + 1e-12) << "trial " << trial;

        const double combined = (w.alpha * fc + (1.0 - w.alpha) * fp).norm();
        EXPECT_LE(combined, std::min(fc.norm(), fp.norm()) + 1e-12);
        EXPECT_LE(combined, best_norm + 1e-12);
    }
}

TEST(AndersonStep, Examples)
{
    const StateVector xp{0.0};
    const StateVector xc{2.0};
    const StateVector gp{1.0};
    const StateVector gc{3.0};
    EXPECT_EQ(anderson_step(xp, xc, gp, gc, 0.5, 1.0), StateVector{2.0});
    EXPECT_TRUE(bitwise_equal(anderson_step(xp, xc, gp, gc, 1.0, 0.3), picard_step(xc, gc, 0.3)));
    EXPECT_TRUE(bitwise_equal(anderson_step(xp, xc, gp, gc, 0.0, 0.3), picard_step(xp, gp, 0.3)));
}

TEST(AndersonStep, DegenerateWeightsAreBitwisePicard)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> beta_dist(0.001, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector xp(random_vector(rng, 4, 1e3));
        const StateVector xc(random_vector(rng, 4, 1e3));
        const StateVector gp(random_vector(rng, 4, 1e3));
        const StateVector gc(random_vector(rng, 4, 1e3));
        const double beta = beta_dist(rng);
        EXPECT_TRUE(bitwise_equal(anderson_step(xp, xc, gp, gc, 1.0, beta), picard_step(xc, gc, beta)));
        EXPECT_TRUE(bitwise_equal(anderson_step(xp, xc, gp, gc, 0.0, beta), picard_step(xp, gp, beta)));
    }
}

TEST(CheckStop, Examples)
{
    EXPECT_TRUE(check_stop(StateVector{5.0, -1.0}, StateVector{5.0, -1.0}, 1e-15, 1e-300));
    EXPECT_TRUE(check_stop(StateVector{0.0}, StateVector{0.0}, 1e-8, 1e-300));
    // 1e-6 <= 1e-8 * 100: equal on both sides after rounding, counts as stop
    const double g = 100.0 + 1e-6;
    EXPECT_EQ(check_stop(StateVector{100.0}, StateVector{g}, 1e-8, 1e-300), (g - 100.0) <= 1e-8 * 100.0);
    EXPECT_TRUE(check_stop(StateVector{100.0}, StateVector{100.0 + 0.5e-6}, 1e-8, 1e-300));
    EXPECT_FALSE(check_stop(StateVector{100.0}, StateVector{100.0 + 2e-6}, 1e-8, 1e-300));
    EXPECT_FALSE(check_stop(StateVector{0.0}, StateVector{1.0}, 1e-8, 1e-300));
}

// -----------------------------------------------------------------------------
// Guard fallback
// -----------------------------------------------------------------------------

class GuardFallback : public ::testing::TestWithParam<Algorithm> {};

TEST_P(GuardFallback, StepIsBitwisePicard)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> beta_dist(0.01, 1.0);
    std::uniform_real_distribution<double> tiny(-1e-12, 1e-12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        const double beta = beta_dist(rng);
        const SolverConfig config = config_for(GetParam(), beta);

        // Two iterations whose residuals differ by far less than the guard
        const Vector x0 = random_vector(rng, n, 10.0);
        const Vector f0 = random_vector(rng, n);
        FixedPointIteration it(config, StateVector(x0), beta);
        const StateVector g0(Vector(x0 + f0));
        const IterationRecord first = it.advance(g0);
        EXPECT_FALSE(first.guard_triggered);

        const StateVector x1 = it.current();
        Vector f1 = f0;
        for (Eigen::Index i = 0; i < f1.size(); ++i) f1[i] += tiny(rng);
        const StateVector g1(Vector(x1.values() + f1));
        const Residual r1 = Residual::between(x1, g1);
        const Residual r0 = Residual::between(StateVector(x0), g0);
        if ((r1.values() - r0.values()).norm() >= config.guard_epsilon) continue;

        const double beta_before = it.beta();
        const IterationRecord second = it.advance(g1);
        EXPECT_TRUE(second.guard_triggered);
        EXPECT_TRUE(bitwise_equal(it.current(), picard_step(x1, g1, beta_before)));
        if (GetParam() == Algorithm::TPA) {
            EXPECT_EQ(beta_before, beta);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Accelerated, GuardFallback, ::testing::Values(Algorithm::ATK, Algorithm::TPA));

// -----------------------------------------------------------------------------
// Single timestep
// -----------------------------------------------------------------------------

TEST(SolveTimestep, IdentityConvergesInOneIteration)
{
    const LambdaTarget identity(3, [](const Vector& x, double) { return x; });
    for (Algorithm a : {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA}) {
        const StateVector x0{1.0, -2.0, 3.5};
        const TimestepSolveResult r = solve_timestep(identity, 0.0, x0, config_for(a, 0.5), 0.5);
        EXPECT_EQ(r.status, TimestepStatus::Converged);
        EXPECT_EQ(r.iterations, 1u);
        EXPECT_EQ(r.x_final, x0);
    }
}

TEST(SolveTimestep, AitkenExactAfterFirstAcceleratedStep)
{
    ScalarAffine g(0.5, 1.0, 0.0);
    const TimestepSolveResult r = solve_timestep(g, 0.0, StateVector{0.0}, config_for(Algorithm::ATK, 1.0), 1.0);
    ASSERT_EQ(r.status, TimestepStatus::Converged);
    ASSERT_GE(r.trace.size(), 3u);
    EXPECT_NEAR(r.x_final[0], 2.0, 4.0 * std::numeric_limits<double>::epsilon());
    EXPECT_EQ(r.iterations, 3u);
}

TEST(SolveTimestep, AndersonSecondIterateExact)
{
    const SolverConfig config = config_for(Algorithm::TPA, 1.0);
    FixedPointIteration it(config, StateVector{0.0}, 1.0);
    ScalarAffine g(0.5, 1.0, 0.0);
    for (int k = 0; k < 2; ++k) (void)it.advance(StateVector(g.evaluate(it.current(), 0.0)));
    EXPECT_NEAR(it.current()[0], 2.0, 4.0 * std::numeric_limits<double>::epsilon());
}

TEST(SolveTimestep, ScalarAffineExactnessProperty)
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> offset(-100.0, 100.0);
    std::uniform_real_distribution<double> b_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> beta_dist(0.05, 1.0);
    for (double a : {-0.5, 0.3, 0.9}) {
        for (Algorithm algorithm : {Algorithm::ATK, Algorithm::TPA}) {
            for (int trial = 0; trial < 100; ++trial) {
                const double b = b_dist(rng);
                const double x_star = b / (1.0 - a);
                const double beta = beta_dist(rng);
                FixedPointIteration it(config_for(algorithm, beta), StateVector{x_star + offset(rng)}, beta);
                for (int k = 0; k < 3; ++k) {
                    (void)it.advance(StateVector{a * it.current()[0] + b});
                }
                EXPECT_LE(std::abs(it.current()[0] - x_star), 1e-12 * std::max(1.0, std::abs(x_star)))
                    << to_string(algorithm) << " a=" << a << " beta=" << beta;
            }
        }
    }
}

TEST(SolveTimestep, PicardNeedsLogarithmicIterations)
{
    // error at least max(1, |x*|) initially, so each Picard step only removes a factor 0.9
    const std::size_t lower = static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(0.9)));
    for (double x0 : {0.0, -5.0, 30.0}) {
        ScalarAffine g(0.9, 1.0, x0);
        const double x_star = g.fixed_point();
        FixedPointIteration it(config_for(Algorithm::FPI, 1.0), StateVector{x0}, 1.0);
        std::size_t k = 0;
        while (std::abs(it.current()[0] - x_star) > 1e-12 * std::max(1.0, std::abs(x_star))) {
            (void)it.advance(StateVector(g.evaluate(it.current(), 0.0)));
            ++k;
            ASSERT_LT(k, 1000u);
        }
        EXPECT_GE(k, lower) << x0;
    }
}

TEST(SolveTimestep, OneEvaluationPerIteration)
{
    for (Algorithm a : {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA}) {
        ScalarAffine g(-0.7, 3.0, 0.0);
        const TimestepSolveResult r = solve_timestep(g, 0.0, StateVector{10.0}, config_for(a, 0.6), 0.6);
        EXPECT_EQ(r.status, TimestepStatus::Converged);
        EXPECT_EQ(g.evaluations, r.iterations);
        EXPECT_EQ(r.trace.size(), r.iterations);
        EXPECT_TRUE(check_stop(r.x_final, StateVector{-0.7 * r.x_final[0] + 3.0}, 1e-12, 1e-300));
    }
}

TEST(SolveTimestep, IterationCap)
{
    ScalarAffine g(0.99, 1.0, 0.0);
    const TimestepSolveResult r = solve_timestep(g, 0.0, StateVector{0.0}, config_for(Algorithm::FPI, 1.0, 1e-12, 7), 1.0);
    EXPECT_EQ(r.status, TimestepStatus::DivergedIterationCap);
    EXPECT_EQ(r.iterations, 7u);
    EXPECT_EQ(g.evaluations, 7u);
}

TEST(SolveTimestep, NonFiniteEvaluation)
{
    const LambdaTarget bad(2, [](const Vector& x, double) {
        Vector g = 0.5 * x;
        if (x.norm() < 1.0) g[1] = std::numeric_limits<double>::quiet_NaN();
        return g;
    });
    const TimestepSolveResult r =
        solve_timestep(bad, 0.0, StateVector{4.0, 4.0}, config_for(Algorithm::TPA, 1.0), 1.0);
    EXPECT_EQ(r.status, TimestepStatus::NonFiniteEvaluation);
    EXPECT_LT(r.iterations, 1000u);
}

TEST(SolveTimestep, AitkenClampLimitsMagnitude)
{
    SolverConfig config = config_for(Algorithm::ATK, 1.0);
    config.beta_clamp = BetaClamp{0.1, 1.5};
    ScalarAffine g(-0.9, 1.0, 0.0);
    const TimestepSolveResult r = solve_timestep(g, 0.0, StateVector{0.0}, config, 1.0);
    for (const IterationRecord& rec : r.trace) {
        EXPECT_LE(std::abs(rec.beta_used), 1.5);
        EXPECT_GE(std::abs(rec.beta_used), 0.1);
    }
}

TEST(SolveTimestep, DeterministicTraces)
{
    const LinearAffineProblem p = LinearAffineProblem::random(8, 0.8, 4);
    for (Algorithm a : {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA}) {
        const StateVector x0 = p.initial_guess(0.0);
        const TimestepSolveResult r1 = solve_timestep(p, 0.0, x0, config_for(a, 0.7), 0.7);
        const TimestepSolveResult r2 = solve_timestep(p, 0.0, x0, config_for(a, 0.7), 0.7);
        ASSERT_EQ(r1.trace.size(), r2.trace.size());
        for (std::size_t i = 0; i < r1.trace.size(); ++i) {
            EXPECT_EQ(std::memcmp(&r1.trace[i].residual_norm, &r2.trace[i].residual_norm, sizeof(double)), 0);
            EXPECT_EQ(r1.trace[i].beta_used, r2.trace[i].beta_used);
            EXPECT_EQ(r1.trace[i].alpha_used, r2.trace[i].alpha_used);
        }
        EXPECT_TRUE(bitwise_equal(r1.x_final, r2.x_final));
    }
}

TEST(SolveTimestep, PicardContractionRate)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (double c : {0.3, 0.6, 0.9}) {
            const LinearAffineProblem p = LinearAffineProblem::random(10, c, seed);
            const TimestepSolveResult r =
                solve_timestep(p, 0.0, p.initial_guess(0.0), config_for(Algorithm::FPI, 1.0, 1e-10), 1.0);
            ASSERT_EQ(r.status, TimestepStatus::Converged);
            const double f0 = r.trace.front().residual_norm;
            for (const IterationRecord& rec : r.trace) {
                EXPECT_LE(rec.residual_norm, std::pow(c, static_cast<double>(rec.k)) * f0 * (1.0 + 1e-9));
            }
        }
    }
}

TEST(SolveTimestep, SolversAgreeOnLinearAffine)
{
    const double eps = 1e-10;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const LinearAffineProblem p = LinearAffineProblem::random(6, 0.2, seed, seed % 2 == 0);
        const double x_norm = p.fixed_point().norm();
        std::vector<StateVector> finals;
        for (Algorithm a : {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA}) {
            const TimestepSolveResult r = solve_timestep(p, 0.0, p.initial_guess(0.0), config_for(a, 1.0, eps), 1.0);
            ASSERT_EQ(r.status, TimestepStatus::Converged);
            EXPECT_LE((r.x_final.values() - p.fixed_point().values()).norm(), eps * x_norm);
            finals.push_back(r.x_final);
        }
        for (std::size_t i = 0; i < finals.size(); ++i) {
            for (std::size_t j = i + 1; j < finals.size(); ++j) {
                EXPECT_LE((finals[i].values() - finals[j].values()).norm(), 2.0 * eps * x_norm);
            }
        }
    }
}
