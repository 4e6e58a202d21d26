#include "portinspect/sequencing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace portinspect {

namespace {

Policy make_policy(Sequence sequence, std::span<const double> thresholds) {
    return Policy{std::move(sequence), std::vector<double>(thresholds.begin(), thresholds.end())};
}

} // namespace

Sequence ratio_sequence(const SystemModel& model, std::span<const double> thresholds,
                        const WeightPair& weights) {
    const auto kind = model.structure.flat_kind();
    if (!kind)
        throw std::invalid_argument("ratio rule applies to flat series or parallel structures only");
    const std::size_t n = model.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> ratio(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Station& s = model.stations[i];
        const double numerator =
            weights.w1() * s.cost + weights.w2() * station_time(s, thresholds[i]);
        const double p = pass_probability(s, thresholds[i], model.prior);
        const double denominator = *kind == NodeKind::All ? p : 1.0 - p;
        ratio[i] = denominator > 0.0 ? numerator / denominator : inf;
    }
    Sequence order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
    return order;
}

SequencedFitness enumerate_sequences(const SystemModel& model, std::span<const double> thresholds,
                                     const WeightPair& weights) {
    const std::size_t n = model.size();
    if (n > kMaxPermutationStations)
        throw std::invalid_argument("permutation search supports at most " +
                                    std::to_string(kMaxPermutationStations) + " stations");
    Policy policy = make_policy(Sequence(n), thresholds);
    std::iota(policy.sequence.begin(), policy.sequence.end(), std::size_t{0});

    SequencedFitness best{policy.sequence, std::numeric_limits<double>::infinity()};
    do {
        const double f = fitness(model, policy, weights);
        // next_permutation walks in lexicographic order, so strict < keeps
        // the smallest minimizer.
        if (f < best.fitness) best = {policy.sequence, f};
    } while (std::next_permutation(policy.sequence.begin(), policy.sequence.end()));
    return best;
}

SequencedFitness optimal_sequence(const SystemModel& model, std::span<const double> thresholds,
                                  const WeightPair& weights) {
    if (model.structure.flat_kind()) {
        Sequence order = ratio_sequence(model, thresholds, weights);
        const double f = fitness(model, make_policy(order, thresholds), weights);
        return {std::move(order), f};
    }
    return enumerate_sequences(model, thresholds, weights);
}

double collapsed_fitness(const SystemModel& model, std::span<const double> thresholds,
                         const WeightPair& weights) {
    return optimal_sequence(model, thresholds, weights).fitness;
}

} // namespace portinspect
