#include "fpc/bench.hpp"
#include "fpc/format.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace fpc {

std::vector<double> default_beta_grid()
{
    return {0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 1.0};
}

void SweepSpec::validate() const
{
    if (problem_grid.empty()) throw std::invalid_argument("sweep.problem_grid: must not be empty");
    if (algorithms.empty()) throw std::invalid_argument("sweep.algorithms: must not be empty");
    if (betas.empty()) throw std::invalid_argument("sweep.betas: must not be empty");
    for (double beta : betas) {
        if (!(beta > 0.0 && beta <= 1.0)) {
            throw std::invalid_argument("sweep.betas: every beta must be in (0, 1], got " + format_double(beta));
        }
    }
    std::set<std::string> ids;
    for (const ProblemCase& c : problem_grid) {
        if (c.case_id.empty()) throw std::invalid_argument("sweep.problem_grid: case_id must not be empty");
        if (!ids.insert(c.case_id).second) {
            throw std::invalid_argument("sweep.problem_grid: duplicate case_id '" + c.case_id + "'");
        }
    }
    if (threads == 0) throw std::invalid_argument("sweep.threads: must be at least 1");
    schedule.validate();
    solver.validate();
}

namespace {

struct Cell {
    const ProblemCase* problem;
    Algorithm algorithm;
    double beta;
};

CaseResult run_cell(const Cell& cell, const SweepSpec& spec)
{
    const auto start = std::chrono::steady_clock::now();

    std::unique_ptr<TargetFunction> problem = make_problem(cell.problem->problem);
    SolverConfig config = spec.solver;
    config.algorithm = cell.algorithm;
    config.beta = cell.beta;
    const StateVector x_init = cell.problem->initial_state ? *cell.problem->initial_state
                                                           : problem->initial_guess(spec.schedule.t_start);
    SimulationResult sim = run_simulation(*problem, spec.schedule, config, x_init);

    CaseResult result;
    result.case_id = cell.problem->case_id;
    result.problem_params = describe(cell.problem->problem);
    result.algorithm = cell.algorithm;
    result.beta = cell.beta;
    result.total_iterations = sim.total_iterations;
    result.status = sim.status;
    result.diverged_at_step = sim.diverged_at_step;
    result.steps_run = sim.per_step.size();
    result.final_state = std::move(sim.final_state);
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace

std::vector<CaseResult> run_sweep(const SweepSpec& spec)
{
    spec.validate();

    std::vector<Cell> cells;
    cells.reserve(spec.cell_count());
    for (const ProblemCase& problem : spec.problem_grid) {
        for (Algorithm algorithm : spec.algorithms) {
            for (double beta : spec.betas) cells.push_back({&problem, algorithm, beta});
        }
    }

    std::vector<std::optional<CaseResult>> slots(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                slots[i] = run_cell(cells[i], spec);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const unsigned workers = std::min<unsigned>(spec.threads, static_cast<unsigned>(cells.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<CaseResult> results;
    results.reserve(slots.size());
    for (auto& slot : slots) results.push_back(std::move(*slot));
    return results;
}

void sort_results(std::vector<CaseResult>& results)
{
    std::stable_sort(results.begin(), results.end(), [](const CaseResult& a, const CaseResult& b) {
        return std::tie(a.case_id, a.algorithm, a.beta) < std::tie(b.case_id, b.algorithm, b.beta);
    });
}

// -----------------------------------------------------------------------------
// Acceleration
// -----------------------------------------------------------------------------

std::string_view to_string(ReferencePolicy policy) noexcept
{
    return policy == ReferencePolicy::BestFPI ? "BestFPI" : "MatchedBeta";
}

std::optional<ReferencePolicy> parse_reference_policy(std::string_view name) noexcept
{
    if (name == "BestFPI") return ReferencePolicy::BestFPI;
    if (name == "MatchedBeta") return ReferencePolicy::MatchedBeta;
    return std::nullopt;
}

const AlgorithmBest* AccelerationSummary::find_best(const std::string& case_id, Algorithm algorithm) const
{
    for (const AlgorithmBest& entry : best) {
        if (entry.case_id == case_id && entry.algorithm == algorithm) return &entry;
    }
    return nullptr;
}

namespace {

bool completed(const CaseResult& r) { return r.status == SimulationStatus::Completed; }

/// Best completed run; ties go to the larger beta.
const CaseResult* best_run(const std::vector<const CaseResult*>& runs)
{
    const CaseResult* best = nullptr;
    for (const CaseResult* r : runs) {
        if (!completed(*r)) continue;
        if (!best || r->total_iterations < best->total_iterations
            || (r->total_iterations == best->total_iterations && r->beta > best->beta)) {
            best = r;
        }
    }
    return best;
}

double ratio(std::size_t reference, std::size_t iterations)
{
    return round_significant(static_cast<double>(reference) / static_cast<double>(iterations), 3);
}

}  // namespace

AccelerationSummary compute_acceleration(const std::vector<CaseResult>& input, ReferencePolicy policy)
{
    std::vector<CaseResult> results = input;
    sort_results(results);

    // case_id -> algorithm -> runs sorted by beta
    std::map<std::string, std::map<Algorithm, std::vector<const CaseResult*>>> grouped;
    for (const CaseResult& r : results) grouped[r.case_id][r.algorithm].push_back(&r);

    AccelerationSummary summary;
    summary.policy = policy;

    for (const auto& [case_id, by_algorithm] : grouped) {
        const std::vector<const CaseResult*> no_runs;
        const auto fpi_it = by_algorithm.find(Algorithm::FPI);
        const auto& fpi_runs = fpi_it == by_algorithm.end() ? no_runs : fpi_it->second;
        const CaseResult* fpi_best = best_run(fpi_runs);

        auto matched_reference = [&](double beta) -> const CaseResult* {
            for (const CaseResult* r : fpi_runs) {
                if (r->beta == beta && completed(*r)) return r;
            }
            return nullptr;
        };

        for (const auto& [algorithm, runs] : by_algorithm) {
            AlgorithmBest entry;
            entry.case_id = case_id;
            entry.algorithm = algorithm;
            const CaseResult* best = best_run(runs);
            if (best) {
                entry.beta_opt = best->beta;
                entry.n_best = best->total_iterations;
            }
            if (algorithm == Algorithm::FPI) {
                summary.best.push_back(entry);
                continue;
            }

            for (const CaseResult* r : runs) {
                SpeedupEntry s;
                s.case_id = case_id;
                s.algorithm = algorithm;
                s.beta = r->beta;
                s.iterations = r->total_iterations;
                const CaseResult* reference =
                    policy == ReferencePolicy::BestFPI ? fpi_best : matched_reference(r->beta);
                if (reference && completed(*r)) {
                    s.reference_iterations = reference->total_iterations;
                    s.speedup = ratio(reference->total_iterations, r->total_iterations);
                    if (policy == ReferencePolicy::MatchedBeta && (!entry.s_max || *s.speedup > *entry.s_max)) {
                        entry.s_max = s.speedup;
                    }
                }
                summary.speedups.push_back(s);
            }
            if (policy == ReferencePolicy::BestFPI && fpi_best && best) {
                entry.s_max = ratio(fpi_best->total_iterations, best->total_iterations);
            }
            summary.best.push_back(entry);
        }
    }

    // (algorithm, beta) averages across cases
    std::map<std::pair<Algorithm, double>, BetaAverage> averages;
    std::map<std::pair<Algorithm, double>, double> sums;
    for (const CaseResult& r : results) {
        const auto key = std::make_pair(r.algorithm, r.beta);
        BetaAverage& avg = averages[key];
        avg.algorithm = r.algorithm;
        avg.beta = r.beta;
        ++avg.total_cases;
        if (completed(r)) {
            ++avg.completed_cases;
            sums[key] += static_cast<double>(r.total_iterations);
        }
    }
    for (auto& [key, avg] : averages) {
        if (avg.completed_cases > 0) avg.mean_iterations = sums[key] / static_cast<double>(avg.completed_cases);
        summary.averages.push_back(avg);
    }
    return summary;
}

}  // namespace fpc
