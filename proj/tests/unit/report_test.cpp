#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "portinspect/report.hpp"

using namespace portinspect;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("portinspect_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

RunConfig small_config(const std::filesystem::path& dir) {
    RunConfig c = load_config(PORTINSPECT_EXAMPLE_CONFIG);
    c.weights = WeightSpec{0.0, 0.02, 1.0};
    c.ga.generations = 30;
    c.workers = 2;
    c.output = (dir / "front.csv").string();
    return c;
}

} // namespace

TEST(Csv, HeaderAndFormatting) {
    std::vector<ParetoPoint> pts{
        ParetoPoint{Policy{{1, 2, 0}, {0.0, 0.95, 0.05}}, 9.0328321, 1.1599561, WeightPair(0.08, 0.92)}};
    std::ostringstream os;
    write_frontier_csv(os, pts, 3);
    EXPECT_EQ(os.str(), "w1,w2,cost,time,sequence,T1,T2,T3\n0.08,0.92,9.03283,1.15996,2-3-1,0,0.95,0.05\n");
}

TEST(Csv, ReadBack) {
    std::istringstream in("w1,w2,cost,time,sequence,T1,T2\n0.5,0.5,1.5,2.5,2-1,0.25,0.75\n,,3,4,1-2,0,1\n");
    const auto rows = read_frontier_csv(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].policy.sequence, (Sequence{1, 0}));
    EXPECT_EQ(rows[0].policy.thresholds, (std::vector<double>{0.25, 0.75}));
    EXPECT_TRUE(rows[0].weights.has_value());
    EXPECT_FALSE(rows[1].weights.has_value());
    std::istringstream bad("w1,w2,cost,time,sequence,T1\n1,0,1,2,1\n");
    EXPECT_THROW(read_frontier_csv(bad), std::runtime_error);
}

TEST(Csv, OutputPaths) {
    EXPECT_EQ(output_path("a/front.csv", ""), "a/front.csv");
    EXPECT_EQ(output_path("a/front.csv", "all"), "a/front.all.csv");
    EXPECT_EQ(output_path("front", "ga.all"), "front.ga.all.csv");
}

TEST(Run, RowsReevaluateToTheirOwnColumns) {
    const auto dir = scratch_dir("roundtrip");
    for (const auto method : {RunMethod::Grid, RunMethod::Local, RunMethod::GA}) {
        RunConfig c = small_config(dir);
        c.method = method;
        std::ostringstream log;
        const auto summary = run(c, log);
        for (const auto& path : {summary.outcomes[0].frontier_path, summary.outcomes[0].all_points_path}) {
            std::ifstream in(path);
            const auto rows = read_frontier_csv(in);
            ASSERT_FALSE(rows.empty());
            for (const auto& row : rows) {
                const auto e = evaluate_policy(c.model, row.policy);
                EXPECT_LE(std::fabs(e.c_total - row.cost), 1e-5 * std::fabs(row.cost)) << path;
                EXPECT_LE(std::fabs(e.t_total - row.time), 1e-5 * std::fabs(row.time)) << path;
            }
        }
    }
}

TEST(Run, GaOutputIsByteStable) {
    const auto dir = scratch_dir("stable");
    RunConfig c = small_config(dir);
    c.method = RunMethod::GA;
    std::ostringstream log;
    run(c, log);
    const std::string first = slurp(c.output);
    const std::string first_all = slurp(output_path(c.output, "all"));
    c.workers = 1;
    run(c, log);
    EXPECT_EQ(slurp(c.output), first);
    EXPECT_EQ(slurp(output_path(c.output, "all")), first_all);
    c.seed = 2;
    run(c, log);
    EXPECT_NE(slurp(output_path(c.output, "all")), first_all);
}

TEST(Run, AllMethodsWriteSummary) {
    const auto dir = scratch_dir("all");
    RunConfig c = small_config(dir);
    c.method = RunMethod::All;
    std::ostringstream log;
    const auto summary = run(c, log);
    ASSERT_EQ(summary.outcomes.size(), 3u);
    for (const char* name : {"grid", "local", "ga"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / (std::string("front.") + name + ".csv")));
        EXPECT_TRUE(std::filesystem::exists(dir / (std::string("front.") + name + ".all.csv")));
    }
    ASSERT_TRUE(std::filesystem::exists(summary.summary_path));
    const std::string text = slurp(summary.summary_path);
    EXPECT_EQ(text.rfind("from,to,directed_distance,from_frontier_size,to_frontier_size\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(summary.distances[i][i], 0.0);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_GE(summary.distances[i][j], 0.0);
    }
    EXPECT_NE(log.str().find("frontier size"), std::string::npos);
}

TEST(Run, GridFrontierOnReferenceModel) {
    const auto dir = scratch_dir("grid");
    RunConfig c = load_config(PORTINSPECT_EXAMPLE_CONFIG);
    c.output = (dir / "front.csv").string();
    c.workers = 0;
    std::ostringstream log;
    const auto summary = run(c, log);
    std::ifstream in(c.output);
    const auto rows = read_frontier_csv(in);
    EXPECT_EQ(rows.size(), summary.outcomes[0].frontier.size());
    const double table[3][2] = {{9.03, 1.16}, {5.54, 1.57}, {3.13, 2.11}};
    for (const auto& [cost, time] : table) {
        bool near = false;
        for (const auto& r : rows)
            near = near || (std::fabs(r.cost - cost) <= 0.01 && std::fabs(r.time - time) <= 0.01);
        EXPECT_TRUE(near) << cost << "/" << time;
    }
}

TEST(Run, AllMethodsMatchRecordedBaselines) {
    // Directed distances recorded on the first verified run of the example
    // config with method=all and the default 251 weights.
    const auto dir = scratch_dir("baseline");
    RunConfig c = load_config(PORTINSPECT_EXAMPLE_CONFIG);
    c.method = RunMethod::All;
    c.output = (dir / "front.csv").string();
    c.workers = 0;
    std::ostringstream log;
    const auto summary = run(c, log);
    ASSERT_EQ(summary.outcomes.size(), 3u);
    EXPECT_EQ(summary.outcomes[0].frontier.size(), 20u);
    EXPECT_EQ(summary.outcomes[1].frontier.size(), 251u);
    EXPECT_EQ(summary.outcomes[2].frontier.size(), 251u);
    const double expected[3][3] = {{0.0, 0.04519, 0.0451941},
                                   {0.0877975, 0.0, 7.46845e-06},
                                   {0.0877939, 0.0348817, 0.0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_NEAR(summary.distances[i][j], expected[i][j], 1e-6) << i << "->" << j;
}
