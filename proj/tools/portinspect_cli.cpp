// portinspect: optimize inspection policies from a JSON config and emit
// Pareto frontiers as CSV.
//
//   portinspect --config port.json [--method grid|local|ga|all] [--grid-step X]
//               [--seed N] [--weights START:STEP:END] [--out PATH] [--workers N]
//   portinspect evaluate --config port.json [--sequence 2-1-3 --thresholds 0,0.85,0]
//   portinspect simulate --config port.json [--samples N] [--seed N] [...]

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "portinspect/config.hpp"
#include "portinspect/evaluation.hpp"
#include "portinspect/report.hpp"
#include "portinspect/simulation.hpp"

namespace {

using namespace portinspect;

WeightSpec parse_weight_flag(const std::string& text) {
    WeightSpec spec;
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos)
        throw ValidationError("weights", "--weights expects START:STEP:END");
    spec.start = std::stod(text.substr(0, first));
    spec.step = std::stod(text.substr(first + 1, second - first - 1));
    spec.end = std::stod(text.substr(second + 1));
    return spec;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stod(item));
    return out;
}

Policy resolve_policy(const RunConfig& config, const std::string& sequence,
                      const std::string& thresholds) {
    if (!sequence.empty() || !thresholds.empty()) {
        if (sequence.empty() || thresholds.empty())
            throw ValidationError("policy", "--sequence and --thresholds go together");
        return Policy{parse_sequence(sequence), parse_list(thresholds)};
    }
    if (!config.policy) throw ValidationError("policy", "no policy in config or on the command line");
    return *config.policy;
}

void print_evaluation(const Evaluation& e) {
    std::printf("pfa        %.10g\n", e.pfa.value());
    std::printf("pfr        %.10g\n", e.pfr.value());
    std::printf("c_f        %.10g\n", e.c_f);
    std::printf("inspection %.10g\n", e.expected_inspection_cost);
    std::printf("c_total    %.10g\n", e.c_total);
    std::printf("t_total    %.10g\n", e.t_total);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inspection policy optimizer: sequence and thresholds on the cost/time frontier"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::optional<std::string> method, weights, out;
    std::optional<double> grid_step;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--method", method, "grid | local | ga | all")
        ->check(CLI::IsMember({"grid", "local", "ga", "all"}));
    app.add_option("--grid-step", grid_step, "grid step for the grid method");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--weights", weights, "cost weight range START:STEP:END");
    app.add_option("--out", out, "frontier CSV path");
    app.add_option("--workers", workers, "threads (0 = all cores)");

    auto* evaluate = app.add_subcommand("evaluate", "evaluate one policy");
    std::string sequence, thresholds;
    evaluate->add_option("--sequence", sequence, "visiting order, e.g. 2-1-3");
    evaluate->add_option("--thresholds", thresholds, "comma-separated thresholds by station");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo check of one policy");
    std::size_t samples = 1'000'000;
    bool prior_sampling = false;
    simulate_cmd->add_option("--sequence", sequence, "visiting order, e.g. 2-1-3");
    simulate_cmd->add_option("--thresholds", thresholds, "comma-separated thresholds by station");
    simulate_cmd->add_option("--samples", samples, "number of simulated containers");
    simulate_cmd->add_flag("--prior-sampling", prior_sampling,
                           "draw x from the prior instead of stratifying");

    CLI11_PARSE(app, argc, argv);

    try {
        if (config_path.empty()) throw std::runtime_error("--config is required");
        RunConfig config = load_config(config_path);
        if (method) config.method = parse_run_method(*method);
        if (grid_step) config.grid.step = *grid_step;
        if (seed) config.seed = *seed;
        if (weights) config.weights = parse_weight_flag(*weights);
        if (out) config.output = *out;
        if (workers) config.workers = *workers;
        validate_config(config);

        if (evaluate->parsed()) {
            const Policy policy = resolve_policy(config, sequence, thresholds);
            std::printf("sequence   %s\n", format_sequence(policy.sequence).c_str());
            print_evaluation(evaluate_policy(config.model, policy));
            return 0;
        }
        if (simulate_cmd->parsed()) {
            const Policy policy = resolve_policy(config, sequence, thresholds);
            SimulationOptions options;
            options.sampling = prior_sampling ? Sampling::Prior : Sampling::Stratified;
            options.workers = config.workers;
            const auto r = simulate(config.model, policy, samples, config.seed, options);
            const auto e = evaluate_policy(config.model, policy);
            std::printf("%-10s %14s %14s %14s\n", "quantity", "simulated", "std.err", "analytic");
            std::printf("%-10s %14.8g %14.3g %14.8g\n", "pfa", r.pfa.value, r.pfa.standard_error,
                        e.pfa.value());
            std::printf("%-10s %14.8g %14.3g %14.8g\n", "pfr", r.pfr.value, r.pfr.standard_error,
                        e.pfr.value());
            std::printf("%-10s %14.8g %14.3g %14.8g\n", "cost", r.mean_cost.value,
                        r.mean_cost.standard_error, e.expected_inspection_cost);
            std::printf("%-10s %14.8g %14.3g %14.8g\n", "time", r.mean_time.value,
                        r.mean_time.standard_error, e.t_total);
            return 0;
        }

        const auto started = std::chrono::steady_clock::now();
        const auto summary = run(config, std::cout);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        for (const auto& outcome : summary.outcomes)
            std::cout << "frontier size (" << method_name(outcome.method)
                      << "): " << outcome.frontier.size() << '\n';
        std::cout << "wall time: " << elapsed.count() << " s\n";
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error [" << e.field() << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
