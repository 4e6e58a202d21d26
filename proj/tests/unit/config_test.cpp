#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "portinspect/config.hpp"

using namespace portinspect;

namespace {

const char* kMinimal = R"({
  "stations": {"sigma0": [0.16, 0.2, 0.22], "sigma1": [0.3, 0.2, 0.26],
               "c": [1, 1, 1], "a": [20, 20, 20], "b": [-3, -3, -3]},
  "prior": 0.0002, "c_fa": 100000, "c_fr": 500, "structure": "all"
})";

std::string with(const std::string& base, const std::string& extra) {
    // insert extra members before the closing brace
    const auto pos = base.rfind('}');
    return base.substr(0, pos) + ", " + extra + "\n}";
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.field() + ": " + e.what();
    } catch (const ConfigSyntaxError& e) {
        return std::string("syntax: ") + e.what();
    }
    return "no error";
}

} // namespace

TEST(Config, ShippedExampleParsesToReferenceModel) {
    const RunConfig c = load_config(PORTINSPECT_EXAMPLE_CONFIG);
    const SystemModel ref = reference_port_model();
    ASSERT_EQ(c.model.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(c.model.stations[i].sigma0, ref.stations[i].sigma0);
        EXPECT_EQ(c.model.stations[i].sigma1, ref.stations[i].sigma1);
        EXPECT_EQ(c.model.stations[i].cost, ref.stations[i].cost);
        EXPECT_EQ(c.model.stations[i].time_a, ref.stations[i].time_a);
        EXPECT_EQ(c.model.stations[i].time_b, ref.stations[i].time_b);
    }
    EXPECT_EQ(c.model.prior, ref.prior);
    EXPECT_EQ(c.model.cost_false_accept, ref.cost_false_accept);
    EXPECT_EQ(c.model.cost_false_reject, ref.cost_false_reject);
    EXPECT_EQ(c.model.structure, ref.structure);
    EXPECT_EQ(c.method, RunMethod::Grid);
    EXPECT_EQ(c.grid.step, 0.05);
    EXPECT_EQ(c.weights.expand().size(), 251u);
}

TEST(Config, Defaults) {
    const RunConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.method, RunMethod::GA);
    EXPECT_EQ(c.model.box.lo, 0.0);
    EXPECT_EQ(c.model.box.hi, 1.0);
    EXPECT_EQ(c.weights.start, 0.0);
    EXPECT_EQ(c.weights.step, 0.004);
    EXPECT_EQ(c.weights.end, 1.0);
    ASSERT_EQ(c.local.initial_thresholds.size(), 1u);
    EXPECT_EQ(c.local.initial_thresholds[0], (std::vector<double>{0.2, 0.2, 0.2}));
    EXPECT_EQ(c.ga.population_size, 80u);
    EXPECT_EQ(c.output, "frontier.csv");
    EXPECT_FALSE(c.policy.has_value());
}

TEST(Config, EmptyDocument) {
    EXPECT_EQ(error_of(""), "stations: missing field: stations");
    EXPECT_EQ(error_of("{}"), "stations: missing field: stations");
    EXPECT_EQ(error_of("[]"), "stations: missing field: stations");
}

TEST(Config, PriorOutOfRange) {
    std::string text = kMinimal;
    text.replace(text.find("0.0002"), 6, "1.5");
    EXPECT_EQ(error_of(text), "prior: prior outside [0,1]");
}

TEST(Config, UnknownKeysAreErrors) {
    EXPECT_EQ(error_of(with(kMinimal, R"("colour": 1)")), "colour: unknown key: colour");
    EXPECT_EQ(error_of(with(kMinimal, R"("grid": {"stepp": 0.1})")), "grid.stepp: unknown key: grid.stepp");
    std::string text = kMinimal;
    text.replace(text.find("\"b\""), 3, "\"d\"");
    EXPECT_EQ(error_of(text).rfind("stations.d:", 0), 0u);
}

TEST(Config, SemanticErrorsNameTheField) {
    std::string text = kMinimal;
    text.replace(text.find("[1, 1, 1]"), 9, "[1, 1]");
    EXPECT_EQ(error_of(text).rfind("stations.c:", 0), 0u);
    text = kMinimal;
    text.replace(text.find("0.16"), 4, "-0.1");
    EXPECT_EQ(error_of(text).rfind("sigma0:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("method": "annealing")")).rfind("method:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("grid": {"step": 0})")).rfind("grid.step:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("weights": {"step": -1})")).rfind("weights:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("local": {"starts": [[0.2, 0.2]]})")).rfind("local.starts:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("ga": {"population_size": -3})")).rfind("ga.population_size:", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("prior": "high")")).rfind("prior", 0), 0u);
    EXPECT_EQ(error_of(with(kMinimal, R"("policy": {"sequence": "1-2-2", "thresholds": [0, 0, 0]})"))
                  .rfind("sequence:", 0),
              0u);
}

TEST(Config, SyntaxErrorReportsLineAndColumn) {
    const std::string text = "{\n  \"prior\": 0.1,\n  \"c_fa\": ,\n}";
    try {
        parse_config(text);
        FAIL() << "expected a syntax error";
    } catch (const ConfigSyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 11u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Config, NestedStructureAndOptions) {
    const std::string text = with(kMinimal, R"("threshold_box": [-0.5, 1.5], "method": "all",
        "local": {"starts": [[0.2, 0.2, 0.2], [0.2, 0.6, 0.2]], "max_iterations": 50},
        "ga": {"population_size": 20, "generations": 10}, "seed": 9, "workers": 2,
        "weights": {"start": 0.1, "step": 0.1, "end": 0.9}, "output": "out/x.csv",
        "policy": {"sequence": "2-1-3", "thresholds": [0, 0.85, 0]})");
    std::string nested = text;
    nested.replace(nested.find("\"all\""), 5, R"({"all": [1, {"any": [2, 3]}]})");
    const RunConfig c = parse_config(nested);
    EXPECT_EQ(c.model.structure.to_string(), "all(1,any(2,3))");
    EXPECT_EQ(c.model.box.lo, -0.5);
    EXPECT_EQ(c.method, RunMethod::All);
    EXPECT_EQ(c.local.initial_thresholds.size(), 2u);
    EXPECT_EQ(c.local.max_iterations, 50u);
    EXPECT_EQ(c.ga.population_size, 20u);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.workers, 2u);
    EXPECT_EQ(c.weights.expand().size(), 9u);
    EXPECT_EQ(c.output, "out/x.csv");
    ASSERT_TRUE(c.policy.has_value());
    EXPECT_EQ(c.policy->sequence, (Sequence{1, 0, 2}));
}

TEST(Config, StructureAliases) {
    std::string text = kMinimal;
    text.replace(text.find("\"all\""), 5, "\"series\"");
    EXPECT_EQ(parse_config(text).model.structure, BooleanStructure::series(3));
    text = kMinimal;
    text.replace(text.find("\"all\""), 5, R"({"all": [1, 2, 2]})");
    EXPECT_NE(error_of(text).find("duplicate leaf"), std::string::npos);
}

TEST(Config, PolicyJsonRoundTripIsExact) {
    const std::vector<std::vector<double>> cases = {
        {0.0, 0.85, 0.0}, {0.123456789, 0.987654321, 1e-9}, {0.1, 0.2, 0.30000000000000004}};
    for (const auto& t : cases) {
        const Policy p{{2, 0, 1}, t};
        const Policy back = policy_from_json(policy_to_json(p));
        EXPECT_EQ(back, p);
    }
}

TEST(Config, RunMethodNames) {
    for (const auto m : {RunMethod::Grid, RunMethod::Local, RunMethod::GA, RunMethod::All})
        EXPECT_EQ(parse_run_method(run_method_name(m)), m);
    EXPECT_THROW(parse_run_method("simplex"), ValidationError);
}

TEST(Config, MissingFileIsReported) {
    EXPECT_THROW(load_config("/nonexistent/port.json"), std::runtime_error);
}
