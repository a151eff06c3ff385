#include "fpc/bench.hpp"
#include "fpc/format.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpc {

using nlohmann::json;

std::string_view to_string(ReportFormat format) noexcept
{
    return format == ReportFormat::CSV ? "csv" : "json";
}

namespace {

std::string csv_field(const std::string& value)
{
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string_view status_name(SimulationStatus status)
{
    return status == SimulationStatus::Completed ? "Completed" : "Diverged";
}

SimulationStatus parse_status(const std::string& name)
{
    if (name == "Completed") return SimulationStatus::Completed;
    if (name == "Diverged") return SimulationStatus::Diverged;
    throw std::runtime_error("report: unknown status '" + name + "'");
}

Algorithm parse_algorithm_or_throw(const std::string& name)
{
    const auto algorithm = parse_algorithm(name);
    if (!algorithm) throw std::runtime_error("report: unknown algorithm '" + name + "'");
    return *algorithm;
}

template <typename T>
json optional_json(const std::optional<T>& value)
{
    return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& value)
{
    if (value.is_null()) return std::nullopt;
    return value.get<T>();
}

}  // namespace

std::string to_csv(std::vector<CaseResult> results)
{
    sort_results(results);
    std::string out = csv_header;
    out += '\n';
    for (const CaseResult& r : results) {
        out += csv_field(r.case_id);
        out += ',' + csv_field(r.problem_params);
        out += ',' + std::string(to_string(r.algorithm));
        out += ',' + format_double(r.beta);
        out += ',' + std::to_string(r.total_iterations);
        out += ',' + std::string(status_name(r.status));
        out += ',' + (r.diverged_at_step ? std::to_string(*r.diverged_at_step) : std::string());
        out += ',' + format_fixed(r.wall_time_ms, 3);
        out += '\n';
    }
    return out;
}

json to_json(std::vector<CaseResult> results, const AccelerationSummary& summary, const json& metadata)
{
    sort_results(results);
    json cases = json::array();
    for (const CaseResult& r : results) {
        cases.push_back({{"case_id", r.case_id},
                         {"problem_params", r.problem_params},
                         {"algorithm", to_string(r.algorithm)},
                         {"beta", r.beta},
                         {"total_iterations", r.total_iterations},
                         {"status", status_name(r.status)},
                         {"diverged_at_step", optional_json(r.diverged_at_step)},
                         {"steps_run", r.steps_run},
                         {"wall_time_ms", r.wall_time_ms}});
    }

    json speedups = json::array();
    for (const SpeedupEntry& s : summary.speedups) {
        speedups.push_back({{"case_id", s.case_id},
                            {"algorithm", to_string(s.algorithm)},
                            {"beta", s.beta},
                            {"iterations", s.iterations},
                            {"reference_iterations", optional_json(s.reference_iterations)},
                            {"speedup", optional_json(s.speedup)}});
    }
    json best = json::array();
    for (const AlgorithmBest& b : summary.best) {
        best.push_back({{"case_id", b.case_id},
                        {"algorithm", to_string(b.algorithm)},
                        {"beta_opt", optional_json(b.beta_opt)},
                        {"n_best", optional_json(b.n_best)},
                        {"s_max", optional_json(b.s_max)}});
    }
    json averages = json::array();
    for (const BetaAverage& a : summary.averages) {
        averages.push_back({{"algorithm", to_string(a.algorithm)},
                            {"beta", a.beta},
                            {"mean_iterations", optional_json(a.mean_iterations)},
                            {"completed_cases", a.completed_cases},
                            {"total_cases", a.total_cases}});
    }

    return json{{"sweep", metadata},
                {"cases", std::move(cases)},
                {"summary",
                 {{"policy", to_string(summary.policy)},
                  {"speedups", std::move(speedups)},
                  {"best", std::move(best)},
                  {"averages", std::move(averages)}}}};
}

ParsedReport parse_report(const json& document)
{
    ParsedReport parsed;
    try {
        parsed.metadata = document.at("sweep");
        for (const json& c : document.at("cases")) {
            CaseResult r;
            r.case_id = c.at("case_id").get<std::string>();
            r.problem_params = c.at("problem_params").get<std::string>();
            r.algorithm = parse_algorithm_or_throw(c.at("algorithm").get<std::string>());
            r.beta = c.at("beta").get<double>();
            r.total_iterations = c.at("total_iterations").get<std::size_t>();
            r.status = parse_status(c.at("status").get<std::string>());
            r.diverged_at_step = optional_from<std::size_t>(c.at("diverged_at_step"));
            r.steps_run = c.at("steps_run").get<std::size_t>();
            r.wall_time_ms = c.at("wall_time_ms").get<double>();
            parsed.results.push_back(std::move(r));
        }

        const json& summary = document.at("summary");
        const auto policy = parse_reference_policy(summary.at("policy").get<std::string>());
        if (!policy) throw std::runtime_error("report: unknown reference policy");
        parsed.summary.policy = *policy;
        for (const json& s : summary.at("speedups")) {
            SpeedupEntry e;
            e.case_id = s.at("case_id").get<std::string>();
            e.algorithm = parse_algorithm_or_throw(s.at("algorithm").get<std::string>());
            e.beta = s.at("beta").get<double>();
            e.iterations = s.at("iterations").get<std::size_t>();
            e.reference_iterations = optional_from<std::size_t>(s.at("reference_iterations"));
            e.speedup = optional_from<double>(s.at("speedup"));
            parsed.summary.speedups.push_back(std::move(e));
        }
        for (const json& b : summary.at("best")) {
            AlgorithmBest e;
            e.case_id = b.at("case_id").get<std::string>();
            e.algorithm = parse_algorithm_or_throw(b.at("algorithm").get<std::string>());
            e.beta_opt = optional_from<double>(b.at("beta_opt"));
            e.n_best = optional_from<std::size_t>(b.at("n_best"));
            e.s_max = optional_from<double>(b.at("s_max"));
            parsed.summary.best.push_back(std::move(e));
        }
        for (const json& a : summary.at("averages")) {
            BetaAverage e;
            e.algorithm = parse_algorithm_or_throw(a.at("algorithm").get<std::string>());
            e.beta = a.at("beta").get<double>();
            e.mean_iterations = optional_from<double>(a.at("mean_iterations"));
            e.completed_cases = a.at("completed_cases").get<std::size_t>();
            e.total_cases = a.at("total_cases").get<std::size_t>();
            parsed.summary.averages.push_back(e);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("report: malformed document: ") + e.what());
    }
    return parsed;
}

std::filesystem::path report_path(const std::filesystem::path& directory, const std::string& sweep_name,
                                  ReportFormat format)
{
    return directory / (sweep_name + "_results." + std::string(to_string(format)));
}

void emit_report(const std::vector<CaseResult>& results, const AccelerationSummary& summary, ReportFormat format,
                 const std::filesystem::path& path, const json& metadata)
{
    const std::string content =
        format == ReportFormat::CSV ? to_csv(results) : to_json(results, summary, metadata).dump(2) + "\n";

    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error(path.parent_path().string() + ": cannot create directory: " + ec.message());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

// -----------------------------------------------------------------------------
// Summary table
// -----------------------------------------------------------------------------

namespace {

std::string optional_text(const std::optional<double>& value, int digits)
{
    return value ? format_fixed(*value, digits) : std::string("---");
}

}  // namespace

std::string render_summary_table(const std::vector<CaseResult>& input, const AccelerationSummary& summary)
{
    std::vector<CaseResult> results = input;
    sort_results(results);

    std::set<std::string> case_ids;
    std::set<double> beta_set;
    for (const CaseResult& r : results) {
        case_ids.insert(r.case_id);
        beta_set.insert(r.beta);
    }
    const std::vector<double> betas(beta_set.begin(), beta_set.end());
    const Algorithm order[] = {Algorithm::TPA, Algorithm::ATK, Algorithm::FPI};

    std::ostringstream out;
    auto header = [&](const std::string& title) {
        out << title << '\n' << std::left << std::setw(8) << "beta" << std::right;
        for (double beta : betas) out << std::setw(11) << format_double(beta);
        out << " | " << std::setw(8) << "beta_opt" << std::setw(11) << "N_best" << std::setw(9) << "S_max" << '\n';
    };

    for (const std::string& case_id : case_ids) {
        header("case " + case_id + " (S policy " + std::string(to_string(summary.policy)) + ")");
        for (Algorithm algorithm : order) {
            bool present = false;
            std::ostringstream row;
            row << std::left << std::setw(8) << to_string(algorithm) << std::right;
            for (double beta : betas) {
                std::string cell = "";
                for (const CaseResult& r : results) {
                    if (r.case_id == case_id && r.algorithm == algorithm && r.beta == beta) {
                        present = true;
                        cell = r.status == SimulationStatus::Completed ? std::to_string(r.total_iterations) : "DNC";
                    }
                }
                row << std::setw(11) << cell;
            }
            if (!present) continue;
            const AlgorithmBest* best = summary.find_best(case_id, algorithm);
            row << " | " << std::setw(8) << optional_text(best ? best->beta_opt : std::nullopt, 3) << std::setw(11)
                << (best && best->n_best ? std::to_string(*best->n_best) : std::string("---")) << std::setw(9)
                << optional_text(best ? best->s_max : std::nullopt, 2);
            out << row.str() << '\n';
        }
        out << '\n';
    }

    if (case_ids.size() > 1) {
        out << "mean over " << case_ids.size() << " cases (completed runs only)\n";
        out << std::left << std::setw(8) << "beta" << std::right;
        for (double beta : betas) out << std::setw(11) << format_double(beta);
        out << '\n';
        for (Algorithm algorithm : order) {
            bool present = false;
            std::ostringstream row;
            row << std::left << std::setw(8) << to_string(algorithm) << std::right;
            for (double beta : betas) {
                std::string cell;
                for (const BetaAverage& a : summary.averages) {
                    if (a.algorithm == algorithm && a.beta == beta) {
                        present = true;
                        cell = a.mean_iterations ? format_fixed(*a.mean_iterations, 0) : "DNC";
                    }
                }
                row << std::setw(11) << cell;
            }
            if (present) out << row.str() << '\n';
        }
    }
    return out.str();
}

}  // namespace fpc
