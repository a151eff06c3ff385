#include "cli.hpp"

#include "fpc/bench.hpp"
#include "fpc/config.hpp"
#include "fpc/format.hpp"
#include "fpc/simulation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fpc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error(path.parent_path().string() + ": cannot create directory: " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

int command_run(const fs::path& config_path, const std::string& out_dir, std::ostream& out)
{
    const RunConfig config = parse_config(config_path);
    std::unique_ptr<TargetFunction> problem = make_problem(config.problem);
    const StateVector x0 = config.initial_state_for(*problem);
    const SimulationResult result = run_simulation(*problem, config.schedule, config.solver, x0);

    out << "name: " << config.name << '\n'
        << "algorithm: " << to_string(config.solver.algorithm) << '\n'
        << "beta: " << format_double(config.solver.beta) << '\n'
        << "status: " << result.status_text() << '\n'
        << "timesteps: " << result.per_step.size() << " of " << config.schedule.steps() << '\n'
        << "total_iterations: " << result.total_iterations << '\n'
        << "max_step_iterations: " << result.max_step_iterations() << '\n'
        << "mean_step_iterations: " << format_fixed(result.mean_step_iterations(), 3) << '\n';

    if (!out_dir.empty()) {
        json steps = json::array();
        for (const StepSummary& s : result.per_step) {
            steps.push_back({{"index", s.index},
                             {"t", s.t},
                             {"iterations", s.iterations},
                             {"converged", s.status == TimestepStatus::Converged},
                             {"beta_init", s.beta_init},
                             {"beta_last", s.beta_last},
                             {"changed", s.changed}});
        }
        json document = {{"config", to_json(config)},
                         {"status", result.status_text()},
                         {"total_iterations", result.total_iterations},
                         {"steps", std::move(steps)},
                         {"final_state", result.final_state.to_std()}};
        const fs::path path = fs::path(out_dir) / (config.name + "_run.json");
        write_file(path, document.dump(2) + "\n");
        out << "wrote " << path.string() << '\n';
    }
    return result.status == SimulationStatus::Completed ? exit_completed : exit_diverged;
}

int command_sweep(const fs::path& config_path, const std::string& out_dir, std::ostream& out)
{
    const RunConfig config = parse_config(config_path);
    const SweepSpec spec = config.sweep_spec();
    const ReferencePolicy policy = config.sweep ? config.sweep->reference_policy : ReferencePolicy::BestFPI;

    const std::vector<CaseResult> results = run_sweep(spec);
    const AccelerationSummary summary = compute_acceleration(results, policy);
    const json metadata = to_json(config);

    out << render_summary_table(results, summary);
    for (ReportFormat format : config.output.formats) {
        const fs::path path = report_path(out_dir.empty() ? config.output.directory : out_dir, config.name, format);
        emit_report(results, summary, format, path, metadata);
        out << "wrote " << path.string() << '\n';
    }
    return exit_completed;
}

fs::path locate_report(const fs::path& directory, const std::string& name)
{
    if (!name.empty()) return report_path(directory, name, ReportFormat::JSON);
    if (!fs::is_directory(directory)) throw std::runtime_error(directory.string() + ": not a directory");
    std::vector<fs::path> candidates;
    for (const fs::directory_entry& entry : fs::directory_iterator(directory)) {
        const std::string file = entry.path().filename().string();
        const std::string suffix = "_results.json";
        if (file.size() > suffix.size() && file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
            candidates.push_back(entry.path());
        }
    }
    if (candidates.empty()) throw std::runtime_error(directory.string() + ": no *_results.json report found");
    if (candidates.size() > 1) {
        throw std::runtime_error(directory.string() + ": several reports found; choose one with --name");
    }
    return candidates.front();
}

int command_report(const fs::path& directory, const std::string& name, const std::string& config_out,
                   std::ostream& out)
{
    const fs::path path = locate_report(directory, name);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open report");
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": malformed JSON: " + e.what());
    }
    ParsedReport report;
    try {
        report = parse_report(document);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }

    out << render_summary_table(report.results, report.summary);
    if (!config_out.empty()) {
        write_file(config_out, report.metadata.dump(2) + "\n");
        out << "wrote " << config_out << '\n';
    }
    return exit_completed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fixed-point coupling solvers: single runs, benchmark sweeps and reports", "fpc"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string in_dir;
    std::string report_name;
    std::string config_out;

    CLI::App* run = app.add_subcommand("run", "Run one simulation");
    run->add_option("--config", config_path, "Run configuration (JSON)")->required();
    run->add_option("--out", out_dir, "Directory for the per-step record");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a benchmark sweep and write reports");
    sweep->add_option("--config", config_path, "Run configuration (JSON)")->required();
    sweep->add_option("--out", out_dir, "Report directory (default: output.directory of the config)");

    CLI::App* report = app.add_subcommand("report", "Re-render a written JSON report as a table");
    report->add_option("--in", in_dir, "Directory holding <name>_results.json")->required();
    report->add_option("--name", report_name, "Sweep name when the directory holds several reports");
    report->add_option("--config-out", config_out, "Also write the embedded run configuration here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int code = app.exit(e, help, err);
        out << help.str();
        return code == 0 ? exit_completed : exit_usage;
    }

    try {
        if (run->parsed()) return command_run(config_path, out_dir, out);
        if (sweep->parsed()) return command_sweep(config_path, out_dir, out);
        return command_report(in_dir, report_name, config_out, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_usage;
}

}  // namespace fpc::cli
