#include "fpc/config.hpp"
#include "fpc/format.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace fpc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ConfigError(path + ": " + message);
}

std::string type_name(const json& value)
{
    return value.type_name();
}

/// Strict view of one JSON object: every key must be read before finish().
class ObjectReader {
public:
    ObjectReader(const json& value, std::string path) : value_(value), path_(std::move(path))
    {
        if (!value_.is_object()) fail(path_, "expected an object, got " + type_name(value_));
    }

    [[nodiscard]] std::string path_of(std::string_view key) const
    {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[nodiscard]] const json* find(std::string_view key)
    {
        const std::string k(key);
        seen_.insert(k);
        const auto it = value_.find(k);
        return it == value_.end() ? nullptr : &*it;
    }

    [[nodiscard]] const json& require(std::string_view key)
    {
        const json* v = find(key);
        if (!v) fail(path_of(key), "required field is missing");
        return *v;
    }

    double number(std::string_view key)
    {
        return as_number(require(key), path_of(key));
    }

    double number_or(std::string_view key, double fallback)
    {
        const json* v = find(key);
        return v ? as_number(*v, path_of(key)) : fallback;
    }

    std::uint64_t integer(std::string_view key)
    {
        return as_integer(require(key), path_of(key));
    }

    std::uint64_t integer_or(std::string_view key, std::uint64_t fallback)
    {
        const json* v = find(key);
        return v ? as_integer(*v, path_of(key)) : fallback;
    }

    std::string string_or(std::string_view key, const std::string& fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_string()) fail(path_of(key), "expected a string, got " + type_name(*v));
        return v->get<std::string>();
    }

    bool boolean_or(std::string_view key, bool fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(path_of(key), "expected a boolean, got " + type_name(*v));
        return v->get<bool>();
    }

    void finish() const
    {
        for (const auto& [key, unused] : value_.items()) {
            if (!seen_.contains(key)) fail(path_of(key), "unknown key");
        }
    }

    static double as_number(const json& v, const std::string& path)
    {
        if (!v.is_number()) fail(path, "expected a number, got " + type_name(v));
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(path, "must be finite");
        return d;
    }

    static std::uint64_t as_integer(const json& v, const std::string& path)
    {
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) {
            const std::int64_t i = v.get<std::int64_t>();
            if (i < 0) fail(path, "must be non-negative");
            return static_cast<std::uint64_t>(i);
        }
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d >= 0.0 && d == std::floor(d) && d < 9.0e15) return static_cast<std::uint64_t>(d);
        }
        fail(path, "expected a non-negative integer");
    }

private:
    const json& value_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<double> number_array(const json& v, const std::string& path)
{
    if (!v.is_array()) fail(path, "expected an array of numbers, got " + type_name(v));
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(ObjectReader::as_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Vector to_vector(const std::vector<double>& values)
{
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

/// number -> broadcast; array -> must have n entries.
std::vector<double> per_fracture(const json& v, std::size_t n, const std::string& path)
{
    if (v.is_number()) return std::vector<double>(n, ObjectReader::as_number(v, path));
    std::vector<double> values = number_array(v, path);
    if (values.size() != n) {
        fail(path, "expected " + std::to_string(n) + " values, got " + std::to_string(values.size()));
    }
    return values;
}

// -----------------------------------------------------------------------------
// Problem blocks
// -----------------------------------------------------------------------------

LinearAffineParams parse_linear_affine(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    LinearAffineParams p;
    if (const json* m = r.find("matrix")) {
        const std::string mpath = r.path_of("matrix");
        if (!m->is_array() || m->empty()) fail(mpath, "expected a non-empty array of rows");
        const std::size_t n = m->size();
        Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const std::string rpath = mpath + "[" + std::to_string(i) + "]";
            const std::vector<double> row = number_array((*m)[i], rpath);
            if (row.size() != n) fail(rpath, "expected " + std::to_string(n) + " entries (square matrix)");
            for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        p.matrix = std::move(a);
    }
    if (const json* rnd = r.find("random")) {
        ObjectReader rr(*rnd, r.path_of("random"));
        RandomAffineSpec spec;
        spec.dimension = rr.integer("dimension");
        spec.contraction = rr.number("contraction");
        spec.seed = rr.integer_or("seed", 1);
        spec.symmetric = rr.boolean_or("symmetric", false);
        rr.finish();
        if (spec.dimension < 1) fail(rr.path_of("dimension"), "must be at least 1");
        if (!(spec.contraction >= 0.0 && spec.contraction < 1.0)) {
            fail(rr.path_of("contraction"), "must lie in [0, 1)");
        }
        p.random = spec;
    }
    if (const json* b = r.find("offset")) p.offset = to_vector(number_array(*b, r.path_of("offset")));
    p.initial_offset = r.number_or("initial_offset", 1.0);
    r.finish();

    if (p.matrix.has_value() == p.random.has_value()) fail(path, "exactly one of 'matrix' or 'random' is required");
    if (p.matrix && !p.offset) fail(r.path_of("offset"), "required with an explicit matrix");
    const std::size_t n = p.matrix ? static_cast<std::size_t>(p.matrix->rows()) : p.random->dimension;
    if (p.offset && static_cast<std::size_t>(p.offset->size()) != n) {
        fail(r.path_of("offset"), "expected " + std::to_string(n) + " values");
    }
    return p;
}

OscillatingProblem::Params parse_oscillating(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    OscillatingProblem::Params p;
    p.dimension = r.integer_or("dimension", p.dimension);
    p.amplitude = r.number_or("amplitude", p.amplitude);
    const json* omega = r.find("angular_frequency");
    const json* period = r.find("period");
    if ((omega != nullptr) == (period != nullptr)) fail(path, "exactly one of 'angular_frequency' or 'period' is required");
    if (omega) {
        p.angular_frequency = ObjectReader::as_number(*omega, r.path_of("angular_frequency"));
    } else {
        const double t = ObjectReader::as_number(*period, r.path_of("period"));
        if (!(t > 0.0)) fail(r.path_of("period"), "must be positive");
        p.angular_frequency = 2.0 * std::numbers::pi / t;
    }
    p.contraction = r.number_or("contraction", p.contraction);
    p.stiffness = r.number_or("stiffness", p.stiffness);
    p.seed = r.integer_or("seed", p.seed);
    p.initial_offset = r.number_or("initial_offset", p.initial_offset);
    r.finish();
    if (p.dimension < 1) fail(r.path_of("dimension"), "must be at least 1");
    if (!(p.contraction > 0.0 && p.contraction < 1.0)) fail(r.path_of("contraction"), "must lie in (0, 1)");
    if (!(p.stiffness >= 1.0)) fail(r.path_of("stiffness"), "must be >= 1");
    return p;
}

ToyWellFractureParams parse_toy(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    ToyWellFractureParams p;
    p.n_frac = r.integer("n_frac");
    if (p.n_frac < 1) fail(r.path_of("n_frac"), "must be at least 1");
    p.depth = per_fracture(r.require("depth"), p.n_frac, r.path_of("depth"));
    p.density = r.number("density");
    p.friction_k = r.number_or("friction_k", 0.0);
    p.choke_k = r.number("choke_k");
    p.p_res = r.number("p_res");
    p.productivity_index = per_fracture(r.require("productivity_index"), p.n_frac, r.path_of("productivity_index"));
    p.area = per_fracture(r.require("area"), p.n_frac, r.path_of("area"));

    const json& v_crit = r.require("v_crit");
    if (v_crit.is_object()) {
        ObjectReader vr(v_crit, r.path_of("v_crit"));
        const double lo = vr.number("lo");
        const double hi = vr.number("hi");
        vr.finish();
        p.v_crit.resize(p.n_frac);
        for (std::size_t i = 0; i < p.n_frac; ++i) {
            const double fraction = p.n_frac > 1 ? static_cast<double>(i) / static_cast<double>(p.n_frac - 1) : 0.0;
            p.v_crit[i] = lo + (hi - lo) * fraction;
        }
    } else {
        p.v_crit = per_fracture(v_crit, p.n_frac, r.path_of("v_crit"));
    }

    const json& schedule = r.require("schedule");
    const std::string spath = r.path_of("schedule");
    if (!schedule.is_array()) fail(spath, "expected an array of settings");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        ObjectReader sr(schedule[i], spath + "[" + std::to_string(i) + "]");
        ChokeSetting s;
        s.t = sr.number("t");
        s.choke_diam = sr.number("choke_diam");
        s.p_whdc = sr.number("p_whdc");
        sr.finish();
        p.schedule.push_back(s);
    }
    r.finish();

    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        const std::string message = e.what();
        const std::string prefix = "toy_well_fracture.";
        if (message.rfind(prefix, 0) == 0) throw ConfigError(path + "." + message.substr(prefix.size()));
        fail(path, message);
    }
    return p;
}

ProblemConfig parse_problem_block(const std::string& key, const json& block, const std::string& bpath);

ProblemConfig parse_problem(const json& value, const std::string& path)
{
    if (!value.is_object()) fail(path, "expected an object, got " + type_name(value));
    if (value.size() != 1) {
        fail(path, "exactly one problem type (linear_affine, oscillating, toy_well_fracture) must be present");
    }
    const auto& [key, block] = *value.items().begin();
    return parse_problem_block(key, block, path + "." + key);
}

ProblemConfig parse_problem_block(const std::string& key, const json& block, const std::string& bpath)
{
    ProblemConfig problem;
    if (key == "linear_affine") {
        problem = parse_linear_affine(block, bpath);
    } else if (key == "oscillating") {
        problem = parse_oscillating(block, bpath);
    } else if (key == "toy_well_fracture") {
        problem = parse_toy(block, bpath);
    } else {
        fail(bpath, "unknown problem type");
    }
    try {
        (void)make_problem(problem);
    } catch (const std::exception& e) {
        fail(bpath, e.what());
    }
    return problem;
}

// -----------------------------------------------------------------------------
// Other blocks
// -----------------------------------------------------------------------------

Algorithm parse_algorithm_at(const json& v, const std::string& path)
{
    if (!v.is_string()) fail(path, "expected one of FPI, ATK, TPA");
    const auto algorithm = parse_algorithm(v.get<std::string>());
    if (!algorithm) fail(path, "unknown algorithm '" + v.get<std::string>() + "' (expected FPI, ATK or TPA)");
    return *algorithm;
}

void check_beta(double beta, const std::string& path)
{
    if (!(beta > 0.0 && beta <= 1.0)) fail(path, "must be in (0, 1], got " + format_double(beta));
}

SolverConfig parse_solver(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    SolverConfig s;
    if (const json* a = r.find("algorithm")) s.algorithm = parse_algorithm_at(*a, r.path_of("algorithm"));
    s.beta = r.number_or("beta", 1.0);
    check_beta(s.beta, r.path_of("beta"));
    s.epsilon = r.number("epsilon");
    if (!(s.epsilon > 0.0)) fail(r.path_of("epsilon"), "must be positive");
    s.n_crit = r.integer("n_crit");
    if (s.n_crit < 1) fail(r.path_of("n_crit"), "must be at least 1");
    s.guard_epsilon = r.number_or("guard_epsilon", s.guard_epsilon);
    if (!(s.guard_epsilon > 0.0)) fail(r.path_of("guard_epsilon"), "must be positive");
    s.zero_norm_floor = r.number_or("zero_norm_floor", s.zero_norm_floor);
    if (!(s.zero_norm_floor >= 0.0)) fail(r.path_of("zero_norm_floor"), "must be non-negative");
    if (const json* c = r.find("beta_clamp")) {
        const std::vector<double> bounds = number_array(*c, r.path_of("beta_clamp"));
        if (bounds.size() != 2 || !(bounds[0] > 0.0 && bounds[0] <= bounds[1])) {
            fail(r.path_of("beta_clamp"), "expected [lo, hi] with 0 < lo <= hi");
        }
        s.beta_clamp = BetaClamp{bounds[0], bounds[1]};
    }
    r.finish();
    return s;
}

TimestepSchedule parse_schedule(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    TimestepSchedule s;
    s.t_start = r.number_or("t_start", 0.0);
    s.t_end = r.number("t_end");
    s.dt = r.number("dt");
    r.finish();
    if (!(s.t_end > s.t_start)) fail(r.path_of("t_end"), "must exceed t_start");
    if (!(s.dt > 0.0)) fail(r.path_of("dt"), "must be positive");
    return s;
}

std::optional<StateVector> parse_state(const json* value, const std::string& path)
{
    if (!value) return std::nullopt;
    const std::vector<double> values = number_array(*value, path);
    if (values.empty()) fail(path, "must not be empty");
    return StateVector(values);
}

void check_case_id(const std::string& id, const std::string& path)
{
    if (id.empty()) fail(path, "must not be empty");
    if (id.find_first_of(",\"\n\r") != std::string::npos) fail(path, "must not contain commas, quotes or newlines");
}

SweepConfig parse_sweep(const json& value, const std::string& path, const json& base_problem,
                        const ProblemConfig& base, const std::string& name)
{
    ObjectReader r(value, path);
    SweepConfig s;
    if (const json* a = r.find("algorithms")) {
        const std::string apath = r.path_of("algorithms");
        if (!a->is_array() || a->empty()) fail(apath, "expected a non-empty array");
        for (std::size_t i = 0; i < a->size(); ++i) {
            s.algorithms.push_back(parse_algorithm_at((*a)[i], apath + "[" + std::to_string(i) + "]"));
        }
    } else {
        s.algorithms = {Algorithm::FPI, Algorithm::ATK, Algorithm::TPA};
    }
    if (const json* b = r.find("betas")) {
        s.betas = number_array(*b, r.path_of("betas"));
        if (s.betas.empty()) fail(r.path_of("betas"), "must not be empty");
        for (std::size_t i = 0; i < s.betas.size(); ++i) {
            check_beta(s.betas[i], r.path_of("betas") + "[" + std::to_string(i) + "]");
        }
    } else {
        s.betas = default_beta_grid();
    }
    s.threads = static_cast<unsigned>(r.integer_or("threads", 1));
    if (s.threads < 1) fail(r.path_of("threads"), "must be at least 1");
    const std::string policy = r.string_or("reference_policy", "BestFPI");
    const auto parsed_policy = parse_reference_policy(policy);
    if (!parsed_policy) fail(r.path_of("reference_policy"), "expected BestFPI or MatchedBeta");
    s.reference_policy = *parsed_policy;

    if (const json* grid = r.find("problem_grid")) {
        const std::string gpath = r.path_of("problem_grid");
        if (!grid->is_array() || grid->empty()) fail(gpath, "expected a non-empty array");
        std::set<std::string> ids;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const std::string epath = gpath + "[" + std::to_string(i) + "]";
            ObjectReader er((*grid)[i], epath);
            ProblemCase c{.case_id = er.string_or("case_id", ""), .problem = base, .initial_state = std::nullopt};
            check_case_id(c.case_id, er.path_of("case_id"));
            if (!ids.insert(c.case_id).second) fail(er.path_of("case_id"), "duplicate case_id '" + c.case_id + "'");
            const json* patch = er.find("set");
            const json* full = er.find("problem");
            if (patch && full) fail(epath, "use either 'set' or 'problem', not both");
            if (full) {
                c.problem = parse_problem(*full, er.path_of("problem"));
            } else if (patch) {
                if (!patch->is_object()) fail(er.path_of("set"), "expected an object");
                json merged = base_problem.begin().value();
                merged.merge_patch(*patch);
                c.problem = parse_problem_block(base_problem.begin().key(), merged, er.path_of("set"));
            }
            c.initial_state = parse_state(er.find("initial_state"), er.path_of("initial_state"));
            er.finish();
            s.problem_grid.push_back(std::move(c));
        }
    } else {
        s.problem_grid.push_back(ProblemCase{.case_id = name, .problem = base, .initial_state = std::nullopt});
    }
    r.finish();
    return s;
}

OutputConfig parse_output(const json& value, const std::string& path)
{
    ObjectReader r(value, path);
    OutputConfig o;
    o.directory = r.string_or("directory", o.directory);
    if (const json* f = r.find("formats")) {
        const std::string fpath = r.path_of("formats");
        if (!f->is_array() || f->empty()) fail(fpath, "expected a non-empty array of \"csv\" / \"json\"");
        o.formats.clear();
        for (std::size_t i = 0; i < f->size(); ++i) {
            const json& item = (*f)[i];
            if (item == "csv") {
                o.formats.push_back(ReportFormat::CSV);
            } else if (item == "json") {
                o.formats.push_back(ReportFormat::JSON);
            } else {
                fail(fpath + "[" + std::to_string(i) + "]", "expected \"csv\" or \"json\"");
            }
        }
    }
    r.finish();
    return o;
}

}  // namespace

// -----------------------------------------------------------------------------
// Public API
// -----------------------------------------------------------------------------

RunConfig parse_config_json(const json& document)
{
    ObjectReader r(document, "");
    RunConfig config;
    config.name = r.string_or("name", config.name);
    check_case_id(config.name, "name");
    if (config.name.find_first_of("/\\") != std::string::npos) fail("name", "must not contain path separators");

    const json& problem = r.require("problem");
    config.problem = parse_problem(problem, "problem");
    config.solver = parse_solver(r.require("solver"), "solver");
    config.schedule = parse_schedule(r.require("schedule"), "schedule");
    config.initial_state = parse_state(r.find("initial_state"), "initial_state");
    if (const json* sweep = r.find("sweep")) {
        config.sweep = parse_sweep(*sweep, "sweep", problem, config.problem, config.name);
    }
    if (const json* output = r.find("output")) config.output = parse_output(*output, "output");
    r.finish();

    const std::size_t n = make_problem(config.problem)->dimension();
    if (config.initial_state && config.initial_state->size() != n) {
        fail("initial_state", "expected " + std::to_string(n) + " values");
    }
    if (config.sweep) {
        for (std::size_t i = 0; i < config.sweep->problem_grid.size(); ++i) {
            const ProblemCase& c = config.sweep->problem_grid[i];
            if (c.initial_state && c.initial_state->size() != make_problem(c.problem)->dimension()) {
                fail("sweep.problem_grid[" + std::to_string(i) + "].initial_state", "dimension mismatch");
            }
        }
    }
    return config;
}

RunConfig parse_config_text(std::string_view text)
{
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config_json(document);
}

RunConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

SweepSpec RunConfig::sweep_spec() const
{
    SweepSpec spec;
    spec.name = name;
    spec.schedule = schedule;
    spec.solver = solver;
    if (sweep) {
        spec.problem_grid = sweep->problem_grid;
        spec.algorithms = sweep->algorithms;
        spec.betas = sweep->betas;
        spec.threads = sweep->threads;
    } else {
        spec.problem_grid.push_back(ProblemCase{.case_id = name, .problem = problem, .initial_state = initial_state});
        spec.algorithms = {solver.algorithm};
        spec.betas = {solver.beta};
    }
    if (initial_state) {
        for (ProblemCase& c : spec.problem_grid) {
            if (!c.initial_state) c.initial_state = initial_state;
        }
    }
    return spec;
}

StateVector RunConfig::initial_state_for(const TargetFunction& target) const
{
    return initial_state ? *initial_state : target.initial_guess(schedule.t_start);
}

// -----------------------------------------------------------------------------
// Emission
// -----------------------------------------------------------------------------

namespace {

json vector_json(const Vector& v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

struct ProblemEmitter {
    json operator()(const LinearAffineParams& p) const
    {
        json block = json::object();
        if (p.matrix) {
            json rows = json::array();
            for (Eigen::Index i = 0; i < p.matrix->rows(); ++i) rows.push_back(vector_json(p.matrix->row(i).transpose()));
            block["matrix"] = std::move(rows);
        }
        if (p.random) {
            block["random"] = {{"dimension", p.random->dimension},
                               {"contraction", p.random->contraction},
                               {"seed", p.random->seed},
                               {"symmetric", p.random->symmetric}};
        }
        if (p.offset) block["offset"] = vector_json(*p.offset);
        block["initial_offset"] = p.initial_offset;
        return {{"linear_affine", std::move(block)}};
    }

    json operator()(const OscillatingProblem::Params& p) const
    {
        return {{"oscillating",
                 {{"dimension", p.dimension},
                  {"amplitude", p.amplitude},
                  {"angular_frequency", p.angular_frequency},
                  {"contraction", p.contraction},
                  {"stiffness", p.stiffness},
                  {"seed", p.seed},
                  {"initial_offset", p.initial_offset}}}};
    }

    json operator()(const ToyWellFractureParams& p) const
    {
        json schedule = json::array();
        for (const ChokeSetting& s : p.schedule) {
            schedule.push_back({{"t", s.t}, {"choke_diam", s.choke_diam}, {"p_whdc", s.p_whdc}});
        }
        return {{"toy_well_fracture",
                 {{"n_frac", p.n_frac},
                  {"depth", p.depth},
                  {"density", p.density},
                  {"friction_k", p.friction_k},
                  {"choke_k", p.choke_k},
                  {"p_res", p.p_res},
                  {"productivity_index", p.productivity_index},
                  {"area", p.area},
                  {"v_crit", p.v_crit},
                  {"schedule", std::move(schedule)}}}};
    }
};

}  // namespace

json problem_to_json(const ProblemConfig& problem)
{
    return std::visit(ProblemEmitter{}, problem);
}

json to_json(const RunConfig& config)
{
    json solver = {{"algorithm", to_string(config.solver.algorithm)},
                   {"beta", config.solver.beta},
                   {"epsilon", config.solver.epsilon},
                   {"n_crit", config.solver.n_crit},
                   {"guard_epsilon", config.solver.guard_epsilon},
                   {"zero_norm_floor", config.solver.zero_norm_floor}};
    if (config.solver.beta_clamp) solver["beta_clamp"] = {config.solver.beta_clamp->lo, config.solver.beta_clamp->hi};

    json out = {{"name", config.name},
                {"problem", problem_to_json(config.problem)},
                {"solver", std::move(solver)},
                {"schedule",
                 {{"t_start", config.schedule.t_start}, {"t_end", config.schedule.t_end}, {"dt", config.schedule.dt}}}};
    if (config.initial_state) out["initial_state"] = vector_json(config.initial_state->values());

    if (config.sweep) {
        json algorithms = json::array();
        for (Algorithm a : config.sweep->algorithms) algorithms.push_back(to_string(a));
        json grid = json::array();
        for (const ProblemCase& c : config.sweep->problem_grid) {
            json entry = {{"case_id", c.case_id}, {"problem", problem_to_json(c.problem)}};
            if (c.initial_state) entry["initial_state"] = vector_json(c.initial_state->values());
            grid.push_back(std::move(entry));
        }
        out["sweep"] = {{"algorithms", std::move(algorithms)},
                        {"betas", config.sweep->betas},
                        {"threads", config.sweep->threads},
                        {"reference_policy", to_string(config.sweep->reference_policy)},
                        {"problem_grid", std::move(grid)}};
    }

    json formats = json::array();
    for (ReportFormat f : config.output.formats) formats.push_back(to_string(f));
    out["output"] = {{"directory", config.output.directory}, {"formats", std::move(formats)}};
    return out;
}

}  // namespace fpc
