#include "portinspect/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "portinspect/random.hpp"
#include "portinspect/sequencing.hpp"

namespace portinspect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void project(std::vector<double>& point, const Bounds& bounds) {
    for (std::size_t j = 0; j < point.size(); ++j)
        point[j] = std::clamp(point[j], bounds.lower[j], bounds.upper[j]);
}

double checked_eval(const Objective& objective, std::span<const double> point,
                    std::size_t& evaluations) {
    ++evaluations;
    const double v = objective(point);
    return std::isnan(v) ? kInf : v;
}

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Odometer decode: index -> grid point, last coordinate fastest.
void decode_grid_point(std::size_t index, std::span<const std::vector<double>> axes,
                       std::vector<double>& out) {
    for (std::size_t j = axes.size(); j-- > 0;) {
        const std::size_t k = axes[j].size();
        out[j] = axes[j][index % k];
        index /= k;
    }
}

std::size_t grid_size(std::span<const std::vector<double>> axes) {
    double total = 1.0;
    std::size_t count = 1;
    for (const auto& axis : axes) {
        total *= static_cast<double>(axis.size());
        count *= axis.size();
    }
    if (total > static_cast<double>(kMaxGridEvaluations))
        throw std::invalid_argument("grid exceeds the evaluation budget");
    return count;
}

} // namespace

Bounds Bounds::uniform(std::size_t dimension, const ThresholdBox& box) {
    return Bounds{std::vector<double>(dimension, box.lo), std::vector<double>(dimension, box.hi)};
}

bool Bounds::contains(std::span<const double> point) const noexcept {
    if (point.size() != lower.size()) return false;
    for (std::size_t j = 0; j < point.size(); ++j)
        if (!(point[j] >= lower[j] && point[j] <= upper[j])) return false;
    return true;
}

void validate(const GridParams& params, const ThresholdBox& box) {
    if (!(params.step > 0.0) || !std::isfinite(params.step))
        throw ValidationError("grid.step", "grid step must be positive");
    if (params.step > box.span() * (1.0 + 1e-12))
        throw ValidationError("grid.step", "grid step exceeds the threshold box span");
}

void validate(const LocalSearchParams& params, const Bounds& bounds) {
    if (params.initial_thresholds.empty())
        throw ValidationError("local.starts", "at least one initial threshold vector is required");
    for (const auto& start : params.initial_thresholds)
        if (!bounds.contains(start))
            throw ValidationError("local.starts", "initial thresholds must lie inside the box");
    if (params.max_iterations == 0)
        throw ValidationError("local.max_iterations", "max_iterations must be positive");
    if (!(params.convergence_tol > 0.0))
        throw ValidationError("local.tolerance", "convergence tolerance must be positive");
    if (!(params.initial_step > 0.0 && params.initial_step <= 1.0))
        throw ValidationError("local.initial_step", "initial step must be in (0,1]");
}

void validate(const GAParams& params) {
    if (params.population_size < 2)
        throw ValidationError("ga.population_size", "population size must be at least 2");
    if (params.generations == 0)
        throw ValidationError("ga.generations", "generations must be positive");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(params.crossover_rate))
        throw ValidationError("ga.crossover_rate", "crossover rate must be in [0,1]");
    if (!unit(params.mutation_rate))
        throw ValidationError("ga.mutation_rate", "mutation rate must be in [0,1]");
    if (!(params.mutation_scale >= 0.0))
        throw ValidationError("ga.mutation_scale", "mutation scale must be nonnegative");
    if (!(params.blend_alpha >= 0.0))
        throw ValidationError("ga.blend_alpha", "blend alpha must be nonnegative");
    if (params.tournament_size == 0)
        throw ValidationError("ga.tournament_size", "tournament size must be positive");
    if (params.restarts == 0)
        throw ValidationError("ga.restarts", "restarts must be positive");
    if (params.elite_count >= params.population_size)
        throw ValidationError("ga.elite_count", "elite count must be below the population size");
}

std::vector<double> grid_axis(const ThresholdBox& box, double step) {
    const double steps = box.span() / step;
    const double whole = std::round(steps);
    std::vector<double> axis;
    if (std::abs(steps - whole) <= 1e-9 * std::max(1.0, whole)) {
        const auto k_max = static_cast<std::size_t>(whole);
        for (std::size_t k = 0; k <= k_max; ++k)
            axis.push_back(k == k_max ? box.hi
                                      : box.lo + box.span() * static_cast<double>(k) /
                                                     static_cast<double>(k_max));
    } else {
        for (std::size_t k = 0;; ++k) {
            const double v = box.lo + step * static_cast<double>(k);
            if (v > box.hi) break;
            axis.push_back(v);
        }
    }
    return axis;
}

std::vector<EvaluatedPolicy> grid_search(const SystemModel& model, const GridParams& params,
                                         std::size_t workers) {
    validate_model(model);
    validate(params, model.box);
    const std::size_t n = model.size();
    if (n > kMaxPermutationStations)
        throw std::invalid_argument("grid search over all sequences supports at most " +
                                    std::to_string(kMaxPermutationStations) + " stations");
    const std::vector<std::vector<double>> axes(n, grid_axis(model.box, params.step));
    const std::size_t points = grid_size(axes);
    const std::size_t orders = factorial(n);
    if (static_cast<double>(points) * static_cast<double>(orders) >
        static_cast<double>(kMaxGridEvaluations))
        throw std::invalid_argument("grid search exceeds the evaluation budget");

    std::vector<Sequence> sequences;
    Sequence seq(n);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    do sequences.push_back(seq);
    while (std::next_permutation(seq.begin(), seq.end()));

    std::vector<EvaluatedPolicy> out(points * orders);
    detail::parallel_for(points, workers, [&](std::size_t p) {
        std::vector<double> thresholds(n);
        decode_grid_point(p, axes, thresholds);
        for (std::size_t s = 0; s < orders; ++s) {
            Policy policy{sequences[s], thresholds};
            Evaluation e = evaluate_policy(model, policy);
            out[p * orders + s] = EvaluatedPolicy{std::move(policy), e};
        }
    });
    return out;
}

MinimizeResult grid_minimize(const Objective& objective, const Bounds& bounds,
                             std::span<const std::vector<double>> axes) {
    if (axes.size() != bounds.dimension())
        throw std::invalid_argument("grid dimension does not match bounds");
    const std::size_t points = grid_size(axes);
    MinimizeResult best;
    best.value = kInf;
    std::vector<double> point(axes.size());
    for (std::size_t p = 0; p < points; ++p) {
        decode_grid_point(p, axes, point);
        const double v = checked_eval(objective, point, best.evaluations);
        if (v < best.value || best.point.empty()) {
            best.value = v;
            best.point = point;
        }
    }
    best.converged = true;
    best.iterations = points;
    return best;
}

MinimizeResult local_minimize(const Objective& objective, std::span<const double> start,
                              const Bounds& bounds, const LocalSearchParams& params) {
    const std::size_t n = bounds.dimension();
    if (start.size() != n) throw std::invalid_argument("start dimension does not match bounds");
    if (!bounds.contains(start)) throw ValidationError("start", "start lies outside the box");

    MinimizeResult result;
    std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) {
        const double h = params.initial_step * (bounds.upper[i] - bounds.lower[i]);
        auto& v = simplex[i + 1];
        v[i] = v[i] + h <= bounds.upper[i] ? v[i] + h : v[i] - h;
        project(v, bounds);
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        values[i] = checked_eval(objective, simplex[i], result.evaluations);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), second(n);
    auto along = [&](double coefficient, const std::vector<double>& from,
                     std::vector<double>& out) {
        // out = centroid + coefficient * (from - centroid), projected
        for (std::size_t j = 0; j < n; ++j)
            out[j] = centroid[j] + coefficient * (from[j] - centroid[j]);
        project(out, bounds);
    };

    for (;;) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t next_worst = order[n > 0 ? n - 1 : 0];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
        if (diameter < params.convergence_tol) {
            result.converged = true;
            break;
        }
        if (result.iterations >= params.max_iterations) break;
        ++result.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        along(-1.0, simplex[worst], trial);
        const double f_reflect = checked_eval(objective, trial, result.evaluations);

        if (f_reflect < values[best]) {
            along(-2.0, simplex[worst], second);
            const double f_expand = checked_eval(objective, second, result.evaluations);
            if (f_expand < f_reflect) {
                simplex[worst] = second;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[next_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }

        const bool outside = f_reflect < values[worst];
        along(outside ? -0.5 : 0.5, simplex[worst], second);
        const double f_contract = checked_eval(objective, second, result.evaluations);
        if (outside ? f_contract <= f_reflect : f_contract < values[worst]) {
            simplex[worst] = second;
            values[worst] = f_contract;
            continue;
        }

        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j)
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            project(simplex[i], bounds);
            values[i] = checked_eval(objective, simplex[i], result.evaluations);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    result.point = simplex[best];
    result.value = values[best];
    return result;
}

namespace {

MinimizeResult ga_population(const Objective& objective, const Bounds& bounds,
                             const GAParams& params, std::uint64_t seed) {
    const std::size_t n = bounds.dimension();
    const std::size_t size = params.population_size;
    Rng rng(seed);
    MinimizeResult result;

    std::vector<std::vector<double>> population(size, std::vector<double>(n));
    std::vector<double> scores(size);
    for (auto& individual : population)
        for (std::size_t j = 0; j < n; ++j)
            individual[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
    for (std::size_t i = 0; i < size; ++i)
        scores[i] = checked_eval(objective, population[i], result.evaluations);

    auto tournament = [&]() {
        std::size_t winner = rng.below(size);
        for (std::size_t k = 1; k < params.tournament_size; ++k) {
            const std::size_t challenger = rng.below(size);
            if (scores[challenger] < scores[winner] ||
                (scores[challenger] == scores[winner] && challenger < winner))
                winner = challenger;
        }
        return winner;
    };

    std::vector<std::size_t> ranking(size);
    std::vector<std::vector<double>> next(size, std::vector<double>(n));
    std::vector<double> next_scores(size);
    for (std::size_t generation = 0; generation < params.generations; ++generation) {
        std::iota(ranking.begin(), ranking.end(), std::size_t{0});
        std::stable_sort(ranking.begin(), ranking.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
        for (std::size_t e = 0; e < params.elite_count; ++e) {
            next[e] = population[ranking[e]];
            next_scores[e] = scores[ranking[e]];
        }
        for (std::size_t c = params.elite_count; c < size; ++c) {
            const auto& mother = population[tournament()];
            const auto& father = population[tournament()];
            auto& child = next[c];
            if (rng.bernoulli(params.crossover_rate)) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double lo = std::min(mother[j], father[j]);
                    const double hi = std::max(mother[j], father[j]);
                    const double ext = params.blend_alpha * (hi - lo);
                    child[j] = rng.uniform(lo - ext, hi + ext);
                }
            } else {
                child = mother;
            }
            for (std::size_t j = 0; j < n; ++j)
                if (rng.bernoulli(params.mutation_rate))
                    child[j] += rng.normal() * params.mutation_scale *
                                (bounds.upper[j] - bounds.lower[j]);
            project(child, bounds);
            next_scores[c] = checked_eval(objective, child, result.evaluations);
        }
        population.swap(next);
        scores.swap(next_scores);
        ++result.iterations;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < size; ++i)
        if (scores[i] < scores[best]) best = i;
    result.point = population[best];
    result.value = scores[best];
    result.converged = true;
    return result;
}

} // namespace

MinimizeResult ga_minimize(const Objective& objective, const Bounds& bounds,
                           const GAParams& params) {
    validate(params);
    MinimizeResult best;
    for (std::size_t r = 0; r < params.restarts; ++r) {
        // restart 0 keeps the plain seed so a single population is reproducible on its own
        const std::uint64_t seed = r == 0 ? params.seed : stream_seed(params.seed, r);
        MinimizeResult run = ga_population(objective, bounds, params, seed);
        const std::size_t evaluations = best.evaluations + run.evaluations;
        const std::size_t iterations = best.iterations + run.iterations;
        if (r == 0 || run.value < best.value) best = std::move(run);
        best.evaluations = evaluations;
        best.iterations = iterations;
    }
    return best;
}

Method method_of(const MethodParams& params) noexcept {
    return static_cast<Method>(params.index());
}

const char* method_name(Method method) noexcept {
    switch (method) {
    case Method::Grid: return "grid";
    case Method::Local: return "local";
    case Method::GA: return "ga";
    }
    return "?";
}

std::vector<WeightPair> weight_range(double start, double step, double end) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw ValidationError("weights", "weight step must be positive");
    if (!(start >= 0.0 && end <= 1.0 && start <= end))
        throw ValidationError("weights", "weight range must satisfy 0 <= start <= end <= 1");
    const double steps = (end - start) / step;
    const double whole = std::round(steps);
    std::vector<WeightPair> out;
    if (std::abs(steps - whole) <= 1e-9 * std::max(1.0, whole)) {
        const auto k_max = static_cast<std::size_t>(whole);
        for (std::size_t k = 0; k <= k_max; ++k) {
            const double w1 = k == k_max ? end
                                         : start + (end - start) * static_cast<double>(k) /
                                                       static_cast<double>(k_max);
            out.push_back(WeightPair::from_cost_weight(w1));
        }
    } else {
        for (std::size_t k = 0;; ++k) {
            const double w1 = start + step * static_cast<double>(k);
            if (w1 > end) break;
            out.push_back(WeightPair::from_cost_weight(w1));
        }
    }
    return out;
}

std::vector<WeightPair> default_weights() { return weight_range(0.0, 0.004, 1.0); }

std::vector<SweepPoint> weight_sweep(const SystemModel& model, const MethodParams& params,
                                     std::span<const WeightPair> weights,
                                     const SweepOptions& options) {
    validate_model(model);
    const std::size_t n = model.size();
    const Bounds bounds = Bounds::uniform(n, model.box);

    std::vector<std::vector<double>> axes;
    if (const auto* grid = std::get_if<GridParams>(&params)) {
        validate(*grid, model.box);
        axes.assign(n, grid_axis(model.box, grid->step));
        grid_size(axes);
    } else if (const auto* local = std::get_if<LocalSearchParams>(&params)) {
        validate(*local, bounds);
    } else {
        validate(std::get<GAParams>(params));
    }

    std::vector<SweepPoint> out(weights.size());
    detail::parallel_for(weights.size(), options.workers, [&](std::size_t i) {
        const WeightPair w = weights[i];
        const Objective objective = [&model, w](std::span<const double> t) {
            return collapsed_fitness(model, t, w);
        };
        MinimizeResult best;
        switch (method_of(params)) {
        case Method::Grid:
            best = grid_minimize(objective, bounds, axes);
            break;
        case Method::Local: {
            const auto& local = std::get<LocalSearchParams>(params);
            best.value = kInf;
            for (const auto& start : local.initial_thresholds) {
                auto r = local_minimize(objective, start, bounds, local);
                if (r.value < best.value || best.point.empty()) best = std::move(r);
            }
            break;
        }
        case Method::GA: {
            GAParams ga = std::get<GAParams>(params);
            ga.seed = stream_seed(ga.seed, i);
            best = ga_minimize(objective, bounds, ga);
            break;
        }
        }
        auto sequenced = optimal_sequence(model, best.point, w);
        Policy policy{std::move(sequenced.sequence), std::move(best.point)};
        Evaluation e = evaluate_policy(model, policy);
        out[i] = SweepPoint{w, std::move(policy), e, sequenced.fitness};
    });
    return out;
}

} // namespace portinspect
