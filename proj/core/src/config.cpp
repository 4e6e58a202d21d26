#include "portinspect/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace portinspect {

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (auto key : allowed) known = known || item.key() == key;
        if (!known) {
            const std::string field = where.empty() ? item.key() : where + "." + item.key();
            throw ValidationError(field, "unknown key: " + field);
        }
    }
}

const json& require(const json& object, const char* key, const std::string& field) {
    const auto it = object.find(key);
    if (it == object.end()) throw ValidationError(field, "missing field: " + field);
    return *it;
}

double as_number(const json& value, const std::string& field) {
    if (!value.is_number()) throw ValidationError(field, field + " must be a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ValidationError(field, field + " must be finite");
    return v;
}

std::uint64_t as_unsigned(const json& value, const std::string& field) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0))
        throw ValidationError(field, field + " must be a nonnegative integer");
    return value.get<std::uint64_t>();
}

std::vector<double> as_vector(const json& value, const std::string& field) {
    if (!value.is_array()) throw ValidationError(field, field + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(as_number(value[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

BooleanStructure parse_structure(const json& value, std::size_t n, const std::string& field) {
    if (value.is_string()) {
        const auto name = value.get<std::string>();
        if (name == "all" || name == "parallel") return BooleanStructure::parallel(n);
        if (name == "any" || name == "series") return BooleanStructure::series(n);
        throw ValidationError(field, "unknown structure '" + name + "'");
    }
    if (value.is_number_integer()) {
        const long long leaf = value.get<long long>();
        if (leaf < 1) throw ValidationError(field, "structure leaves are 1-based station numbers");
        return BooleanStructure::leaf(static_cast<std::size_t>(leaf - 1));
    }
    if (value.is_object() && value.size() == 1) {
        const auto& [key, children] = *value.items().begin();
        if ((key == "all" || key == "any") && children.is_array()) {
            std::vector<BooleanStructure> parts;
            for (const auto& child : children) parts.push_back(parse_structure(child, n, field));
            return key == "all" ? BooleanStructure::all_of(std::move(parts))
                                : BooleanStructure::any_of(std::move(parts));
        }
    }
    throw ValidationError(field, "structure must be \"all\", \"any\", a station number or "
                                 "{\"all\"|\"any\": [...]}");
}

Policy parse_policy(const json& value, const std::string& field) {
    if (!value.is_object()) throw ValidationError(field, field + " must be an object");
    reject_unknown_keys(value, {"sequence", "thresholds"}, field);
    const json& seq = require(value, "sequence", field + ".sequence");
    if (!seq.is_string())
        throw ValidationError(field + ".sequence", "sequence must be a string such as \"2-3-1\"");
    Policy policy;
    policy.sequence = parse_sequence(seq.get<std::string>());
    policy.thresholds =
        as_vector(require(value, "thresholds", field + ".thresholds"), field + ".thresholds");
    return policy;
}

void parse_stations(const json& value, SystemModel& model) {
    if (!value.is_object()) throw ValidationError("stations", "stations must be an object of arrays");
    reject_unknown_keys(value, {"sigma0", "sigma1", "c", "a", "b"}, "stations");
    const auto sigma0 = as_vector(require(value, "sigma0", "stations.sigma0"), "stations.sigma0");
    const auto sigma1 = as_vector(require(value, "sigma1", "stations.sigma1"), "stations.sigma1");
    const auto cost = as_vector(require(value, "c", "stations.c"), "stations.c");
    const auto a = as_vector(require(value, "a", "stations.a"), "stations.a");
    const auto b = as_vector(require(value, "b", "stations.b"), "stations.b");
    const std::size_t n = sigma0.size();
    for (const auto& [name, v] : {std::pair{"sigma1", &sigma1}, std::pair{"c", &cost},
                                  std::pair{"a", &a}, std::pair{"b", &b}})
        if (v->size() != n)
            throw ValidationError(std::string("stations.") + name,
                                  std::string("stations.") + name + " length differs from sigma0");
    model.stations.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        model.stations[i] = Station{sigma0[i], sigma1[i], cost[i], a[i], b[i]};
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    // nlohmann reports the 1-based byte count of the last character read.
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ConfigSyntaxError(e.what(), line, column);
    }
}

} // namespace

ConfigSyntaxError::ConfigSyntaxError(const std::string& message, std::size_t line,
                                     std::size_t column)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

RunMethod parse_run_method(std::string_view name) {
    if (name == "grid") return RunMethod::Grid;
    if (name == "local") return RunMethod::Local;
    if (name == "ga") return RunMethod::GA;
    if (name == "all") return RunMethod::All;
    throw ValidationError("method", "method must be one of grid, local, ga, all");
}

const char* run_method_name(RunMethod method) noexcept {
    switch (method) {
    case RunMethod::Grid: return "grid";
    case RunMethod::Local: return "local";
    case RunMethod::GA: return "ga";
    case RunMethod::All: return "all";
    }
    return "?";
}

RunConfig parse_config(std::string_view text) {
    // An empty document reads as an empty object.
    const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
    const json doc = blank ? json::object() : parse_json(text);
    if (!doc.is_object()) throw ValidationError("stations", "missing field: stations");
    reject_unknown_keys(doc,
                        {"stations", "prior", "c_fa", "c_fr", "structure", "threshold_box",
                         "method", "grid", "local", "ga", "weights", "policy", "seed", "workers",
                         "output"},
                        "");

    RunConfig config;
    SystemModel& model = config.model;
    parse_stations(require(doc, "stations", "stations"), model);
    model.prior = as_number(require(doc, "prior", "prior"), "prior");
    model.cost_false_accept = as_number(require(doc, "c_fa", "c_fa"), "c_fa");
    model.cost_false_reject = as_number(require(doc, "c_fr", "c_fr"), "c_fr");
    model.structure = parse_structure(require(doc, "structure", "structure"), model.size(),
                                      "structure");
    if (const auto it = doc.find("threshold_box"); it != doc.end()) {
        const auto box = as_vector(*it, "threshold_box");
        if (box.size() != 2)
            throw ValidationError("threshold_box", "threshold_box must be [lo, hi]");
        model.box = ThresholdBox{box[0], box[1]};
    }
    validate_model(model);

    if (const auto it = doc.find("method"); it != doc.end()) {
        if (!it->is_string()) throw ValidationError("method", "method must be a string");
        config.method = parse_run_method(it->get<std::string>());
    }
    if (const auto it = doc.find("grid"); it != doc.end()) {
        if (!it->is_object()) throw ValidationError("grid", "grid must be an object");
        reject_unknown_keys(*it, {"step"}, "grid");
        if (const auto s = it->find("step"); s != it->end())
            config.grid.step = as_number(*s, "grid.step");
    }
    if (const auto it = doc.find("local"); it != doc.end()) {
        if (!it->is_object()) throw ValidationError("local", "local must be an object");
        reject_unknown_keys(*it, {"starts", "max_iterations", "tolerance", "initial_step"},
                            "local");
        if (const auto s = it->find("starts"); s != it->end()) {
            if (!s->is_array()) throw ValidationError("local.starts", "starts must be an array");
            for (std::size_t i = 0; i < s->size(); ++i)
                config.local.initial_thresholds.push_back(
                    as_vector((*s)[i], "local.starts[" + std::to_string(i) + "]"));
        }
        if (const auto s = it->find("max_iterations"); s != it->end())
            config.local.max_iterations = as_unsigned(*s, "local.max_iterations");
        if (const auto s = it->find("tolerance"); s != it->end())
            config.local.convergence_tol = as_number(*s, "local.tolerance");
        if (const auto s = it->find("initial_step"); s != it->end())
            config.local.initial_step = as_number(*s, "local.initial_step");
    }
    if (config.local.initial_thresholds.empty())
        config.local.initial_thresholds.push_back(
            std::vector<double>(model.size(), model.box.lo + 0.2 * model.box.span()));
    if (const auto it = doc.find("ga"); it != doc.end()) {
        if (!it->is_object()) throw ValidationError("ga", "ga must be an object");
        reject_unknown_keys(*it,
                            {"population_size", "generations", "crossover_rate", "mutation_rate",
                             "mutation_scale", "blend_alpha", "tournament_size", "elite_count",
                             "restarts"},
                            "ga");
        GAParams& ga = config.ga;
        if (const auto s = it->find("population_size"); s != it->end())
            ga.population_size = as_unsigned(*s, "ga.population_size");
        if (const auto s = it->find("generations"); s != it->end())
            ga.generations = as_unsigned(*s, "ga.generations");
        if (const auto s = it->find("crossover_rate"); s != it->end())
            ga.crossover_rate = as_number(*s, "ga.crossover_rate");
        if (const auto s = it->find("mutation_rate"); s != it->end())
            ga.mutation_rate = as_number(*s, "ga.mutation_rate");
        if (const auto s = it->find("mutation_scale"); s != it->end())
            ga.mutation_scale = as_number(*s, "ga.mutation_scale");
        if (const auto s = it->find("blend_alpha"); s != it->end())
            ga.blend_alpha = as_number(*s, "ga.blend_alpha");
        if (const auto s = it->find("tournament_size"); s != it->end())
            ga.tournament_size = as_unsigned(*s, "ga.tournament_size");
        if (const auto s = it->find("elite_count"); s != it->end())
            ga.elite_count = as_unsigned(*s, "ga.elite_count");
        if (const auto s = it->find("restarts"); s != it->end())
            ga.restarts = as_unsigned(*s, "ga.restarts");
    }
    if (const auto it = doc.find("weights"); it != doc.end()) {
        if (!it->is_object()) throw ValidationError("weights", "weights must be an object");
        reject_unknown_keys(*it, {"start", "step", "end"}, "weights");
        if (const auto s = it->find("start"); s != it->end())
            config.weights.start = as_number(*s, "weights.start");
        if (const auto s = it->find("step"); s != it->end())
            config.weights.step = as_number(*s, "weights.step");
        if (const auto s = it->find("end"); s != it->end())
            config.weights.end = as_number(*s, "weights.end");
    }
    if (const auto it = doc.find("policy"); it != doc.end())
        config.policy = parse_policy(*it, "policy");
    if (const auto it = doc.find("seed"); it != doc.end())
        config.seed = as_unsigned(*it, "seed");
    if (const auto it = doc.find("workers"); it != doc.end())
        config.workers = as_unsigned(*it, "workers");
    if (const auto it = doc.find("output"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>().empty())
            throw ValidationError("output", "output must be a non-empty path");
        config.output = it->get<std::string>();
    }
    validate_config(config);
    return config;
}

void validate_config(const RunConfig& config) {
    validate_model(config.model);
    const std::size_t n = config.model.size();
    validate(config.grid, config.model.box);
    const Bounds bounds = Bounds::uniform(n, config.model.box);
    for (const auto& start : config.local.initial_thresholds)
        if (start.size() != n)
            throw ValidationError("local.starts", "each start needs one threshold per station");
    validate(config.local, bounds);
    validate(config.ga);
    config.weights.expand();
    if (config.policy) validate_policy(config.model, *config.policy);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string policy_to_json(const Policy& policy) {
    json j;
    j["sequence"] = format_sequence(policy.sequence);
    j["thresholds"] = policy.thresholds;
    return j.dump();
}

Policy policy_from_json(std::string_view text) { return parse_policy(parse_json(text), "policy"); }

} // namespace portinspect
