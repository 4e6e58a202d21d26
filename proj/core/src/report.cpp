#include "portinspect/report.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace portinspect {

namespace {

std::string format_number(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

void write_file(const std::string& path, std::span<const ParetoPoint> points, std::size_t n) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_frontier_csv(out, points, n);
    if (!out) throw std::runtime_error("error while writing " + path);
}

MethodParams params_for(Method method, const RunConfig& config) {
    switch (method) {
    case Method::Grid: return config.grid;
    case Method::Local: return config.local;
    case Method::GA: {
        GAParams ga = config.ga;
        ga.seed = config.seed;
        return ga;
    }
    }
    return config.grid;
}

} // namespace

void write_frontier_csv(std::ostream& os, std::span<const ParetoPoint> points, std::size_t n) {
    os << "w1,w2,cost,time,sequence";
    for (std::size_t i = 0; i < n; ++i) os << ",T" << i + 1;
    os << '\n';
    for (const auto& p : points) {
        if (p.weights)
            os << format_number(p.weights->w1(), 6) << ',' << format_number(p.weights->w2(), 6);
        else
            os << ',';
        os << ',' << format_number(p.cost, 6) << ',' << format_number(p.time, 6) << ','
           << format_sequence(p.policy.sequence);
        for (const double t : p.policy.thresholds) os << ',' << format_number(t, 9);
        os << '\n';
    }
}

std::vector<FrontierRow> read_frontier_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("frontier CSV: missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 6 || header[0] != "w1" || header[4] != "sequence")
        throw std::runtime_error("frontier CSV: unexpected header");
    const std::size_t n = header.size() - 5;
    std::vector<FrontierRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("frontier CSV: wrong column count on line " +
                                     std::to_string(line_no));
        FrontierRow row;
        if (!cells[0].empty()) row.weights = WeightPair(std::stod(cells[0]), 1.0 - std::stod(cells[0]));
        row.cost = std::stod(cells[2]);
        row.time = std::stod(cells[3]);
        row.policy.sequence = parse_sequence(cells[4]);
        for (std::size_t i = 0; i < n; ++i) row.policy.thresholds.push_back(std::stod(cells[5 + i]));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ParetoPoint> to_pareto_points(std::span<const SweepPoint> sweep) {
    std::vector<ParetoPoint> out;
    out.reserve(sweep.size());
    for (const auto& s : sweep)
        out.push_back(ParetoPoint{s.policy, s.evaluation.c_total, s.evaluation.t_total, s.weights});
    return out;
}

std::string output_path(const std::string& base, const std::string& tag) {
    std::string stem = base;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0)
        stem.resize(stem.size() - 4);
    return tag.empty() ? stem + ".csv" : stem + "." + tag + ".csv";
}

RunSummary run(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    const std::vector<WeightPair> weights = config.weights.expand();
    const std::size_t n = config.model.size();

    std::vector<Method> methods;
    if (config.method == RunMethod::All)
        methods = {Method::Grid, Method::Local, Method::GA};
    else
        methods = {static_cast<Method>(static_cast<int>(config.method))};
    const bool tagged = methods.size() > 1;

    RunSummary summary;
    for (const Method method : methods) {
        MethodOutcome outcome{method, {}, {}, {}, {}, {}};
        const auto started = std::chrono::steady_clock::now();
        outcome.sweep = weight_sweep(config.model, params_for(method, config), weights,
                                     SweepOptions{config.workers});
        const auto points = to_pareto_points(outcome.sweep);
        outcome.frontier = non_dominated_filter(points);
        outcome.wall_time = std::chrono::steady_clock::now() - started;

        const std::string tag = tagged ? method_name(method) : "";
        outcome.frontier_path = output_path(config.output, tag);
        outcome.all_points_path = output_path(config.output, tag.empty() ? "all" : tag + ".all");
        write_file(outcome.frontier_path, outcome.frontier, n);
        write_file(outcome.all_points_path, points, n);

        log << method_name(method) << ": " << weights.size() << " weights, frontier size "
            << outcome.frontier.size() << ", wall time " << format_number(outcome.wall_time.count(), 4)
            << " s -> " << outcome.frontier_path << '\n';
        summary.outcomes.push_back(std::move(outcome));
    }

    if (tagged) {
        const std::size_t m = summary.outcomes.size();
        summary.distances.assign(m, std::vector<double>(m, 0.0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                summary.distances[i][j] = frontier_distance(summary.outcomes[i].frontier,
                                                            summary.outcomes[j].frontier);
        summary.summary_path = output_path(config.output, "summary");
        std::ofstream out(summary.summary_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + summary.summary_path);
        out << "from,to,directed_distance,from_frontier_size,to_frontier_size\n";
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                out << method_name(summary.outcomes[i].method) << ','
                    << method_name(summary.outcomes[j].method) << ','
                    << format_number(summary.distances[i][j], 6) << ','
                    << summary.outcomes[i].frontier.size() << ','
                    << summary.outcomes[j].frontier.size() << '\n';
                log << "distance " << method_name(summary.outcomes[i].method) << " -> "
                    << method_name(summary.outcomes[j].method) << ": "
                    << format_number(summary.distances[i][j], 6) << '\n';
            }
    }
    return summary;
}

} // namespace portinspect
