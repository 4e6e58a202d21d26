#pragma once

// CSV emission for sweep results and the end-to-end run driver used by the
// command-line tool.

#include <chrono>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "portinspect/config.hpp"
#include "portinspect/pareto.hpp"
#include "portinspect/solvers.hpp"

namespace portinspect {

/// One parsed CSV row.
struct FrontierRow {
    std::optional<WeightPair> weights;
    double cost = 0.0;
    double time = 0.0;
    Policy policy;
};

/// Header `w1,w2,cost,time,sequence,T1..Tn`. Weights, cost and time use 6
/// significant digits; thresholds use 9 so rows re-evaluate faithfully.
void write_frontier_csv(std::ostream& os, std::span<const ParetoPoint> points, std::size_t n);
std::vector<FrontierRow> read_frontier_csv(std::istream& is);

std::vector<ParetoPoint> to_pareto_points(std::span<const SweepPoint> sweep);

struct MethodOutcome {
    Method method;
    std::vector<SweepPoint> sweep;
    std::vector<ParetoPoint> frontier;
    std::string frontier_path;
    std::string all_points_path;
    std::chrono::duration<double> wall_time{};
};

struct RunSummary {
    std::vector<MethodOutcome> outcomes;
    /// For method=all: directed distances distance[i][j] = frontier_distance(i -> j).
    std::vector<std::vector<double>> distances;
    std::string summary_path;
};

/// Runs the configured sweep(s), filters frontiers and writes the CSV files.
/// Progress lines go to `log`.
RunSummary run(const RunConfig& config, std::ostream& log);

/// Output paths: "<stem>.csv" plus "<stem>.all.csv" for one method, and
/// "<stem>.<method>.csv" / "<stem>.<method>.all.csv" / "<stem>.summary.csv"
/// for method=all.
std::string output_path(const std::string& base, const std::string& tag);

} // namespace portinspect
