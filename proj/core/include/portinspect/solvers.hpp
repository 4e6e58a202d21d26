#pragma once

// Threshold optimization over the sequence-collapsed fitness: exhaustive grid
// search, multi-start bounded Nelder-Mead, and a real-coded genetic
// algorithm, plus the weight sweep that turns any of them into a set of
// candidate frontier points.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "portinspect/evaluation.hpp"
#include "portinspect/model.hpp"

namespace portinspect {

using Objective = std::function<double(std::span<const double>)>;

/// Per-coordinate bounds.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dimension, const ThresholdBox& box);
    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> point) const noexcept;
};

struct MinimizeResult {
    std::vector<double> point;
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
};

struct GridParams {
    double step = 0.05;
};

struct LocalSearchParams {
    std::vector<std::vector<double>> initial_thresholds;
    std::size_t max_iterations = 2000;
    double convergence_tol = 1e-9;
    /// Initial simplex edge as a fraction of each coordinate's span.
    double initial_step = 0.1;
};

struct GAParams {
    std::size_t population_size = 80;
    std::size_t generations = 100;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    /// Mutation std. dev. as a fraction of each coordinate's span.
    double mutation_scale = 0.1;
    /// BLX-alpha extension of the parents' interval.
    double blend_alpha = 0.5;
    std::size_t tournament_size = 2;
    std::size_t elite_count = 2;
    /// Independent populations; the best final individual wins.
    std::size_t restarts = 8;
    std::uint64_t seed = 1;
};

void validate(const GridParams& params, const ThresholdBox& box);
void validate(const LocalSearchParams& params, const Bounds& bounds);
void validate(const GAParams& params);

/// Grid values lo, lo + step, ... up to hi. When the span is a whole number
/// of steps the last value is exactly hi.
std::vector<double> grid_axis(const ThresholdBox& box, double step);

inline constexpr std::size_t kMaxGridEvaluations = 10'000'000;

struct EvaluatedPolicy {
    Policy policy;
    Evaluation evaluation;
};

/// Every grid threshold vector under every sequence, fully evaluated.
/// Threshold vectors vary slowest, sequences in lexicographic order.
std::vector<EvaluatedPolicy> grid_search(const SystemModel& model, const GridParams& params,
                                         std::size_t workers = 1);

/// Minimum of `objective` over the grid; ties keep the first grid point in
/// odometer order (last coordinate fastest).
MinimizeResult grid_minimize(const Objective& objective, const Bounds& bounds,
                             std::span<const std::vector<double>> axes);

/// Bounded Nelder-Mead. Trial points are projected onto the box, the start
/// is a simplex vertex, so the result never exceeds objective(start).
MinimizeResult local_minimize(const Objective& objective, std::span<const double> start,
                              const Bounds& bounds, const LocalSearchParams& params);

/// Real-coded GA: uniform initialization, tournament selection, BLX-alpha
/// crossover, Gaussian mutation clipped to the box, elitism. Runs
/// `restarts` independent populations and keeps the best. Deterministic in
/// (objective, bounds, params).
MinimizeResult ga_minimize(const Objective& objective, const Bounds& bounds,
                           const GAParams& params);

enum class Method { Grid, Local, GA };

using MethodParams = std::variant<GridParams, LocalSearchParams, GAParams>;

Method method_of(const MethodParams& params) noexcept;
const char* method_name(Method method) noexcept;

/// Weights (w1, 1 - w1) for w1 = start, start + step, ..., end.
std::vector<WeightPair> weight_range(double start, double step, double end);
/// w1 = 0, 0.004, ..., 1 (251 pairs).
std::vector<WeightPair> default_weights();

struct SweepPoint {
    WeightPair weights;
    Policy policy;
    Evaluation evaluation;
    double objective = 0.0; ///< minimized collapsed fitness
};

struct SweepOptions {
    /// Threads used across weight pairs (0 = hardware concurrency). Results
    /// do not depend on this value.
    std::size_t workers = 1;
};

/// Minimizes the collapsed fitness for each weight pair with the chosen
/// method and returns the fully evaluated optimal policy per weight, in
/// input order. The GA seeds weight i with stream_seed(seed, i).
std::vector<SweepPoint> weight_sweep(const SystemModel& model, const MethodParams& params,
                                     std::span<const WeightPair> weights,
                                     const SweepOptions& options = {});

} // namespace portinspect
