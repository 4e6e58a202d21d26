#pragma once

// Optimal visiting order for fixed thresholds and weights.
//
// For flat structures the order follows the ratio rule: sort stations by
// (w1 c_i + w2 t_i) / q_i for series systems and by (w1 c_i + w2 t_i) / p_i
// for parallel systems, smallest first. Nested structures are sequenced by
// exhaustive search over permutations.

#include <cstddef>
#include <span>

#include "portinspect/evaluation.hpp"
#include "portinspect/model.hpp"

namespace portinspect {

inline constexpr std::size_t kMaxPermutationStations = 8;

struct SequencedFitness {
    Sequence sequence;
    double fitness = 0.0;
};

/// Ratio-rule order. Zero denominators sort last; ties go to the lower index.
/// Throws std::invalid_argument for nested structures.
Sequence ratio_sequence(const SystemModel& model, std::span<const double> thresholds,
                        const WeightPair& weights);

/// Brute force over all n! orders; returns the lexicographically smallest
/// minimizer. Throws std::invalid_argument for n > kMaxPermutationStations.
SequencedFitness enumerate_sequences(const SystemModel& model, std::span<const double> thresholds,
                                     const WeightPair& weights);

/// Best sequence for the given thresholds, via the ratio rule when the
/// structure is flat and enumeration otherwise.
SequencedFitness optimal_sequence(const SystemModel& model, std::span<const double> thresholds,
                                  const WeightPair& weights);

/// min over sequences of fitness(model, (S, T), weights)
double collapsed_fitness(const SystemModel& model, std::span<const double> thresholds,
                         const WeightPair& weights);

} // namespace portinspect
