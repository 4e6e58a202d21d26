#pragma once

// Exact evaluation of an inspection policy: system error probabilities,
// misclassification cost, expected inspection cost and expected dwell time.
//
// Expected cost and time follow short-circuit inspection: stations are visited
// in sequence order and inspection stops as soon as the decision function is
// determined by the decisions seen so far. Station outcomes are weighted by
// the unconditional pass probabilities p_i / q_i, which makes the enumeration
// coincide with the classical series and parallel recursions
//   series:   t_1 + sum_{i>=2} (prod_{j<i} p_j) t_i
//   parallel: t_1 + sum_{i>=2} (prod_{j<i} q_j) t_i
// System error probabilities use decisions that are independent given the
// true container status x.

#include <cstddef>
#include <span>
#include <vector>

#include "portinspect/model.hpp"
#include "portinspect/stats.hpp"

namespace portinspect {

inline constexpr std::size_t kMaxEnumerationStations = 20;

/// Three-valued station or system decision.
enum class Decision : unsigned char { Pass = 0, Reject = 1, Unknown = 2 };

/// Evaluates the decision function on a partial assignment indexed by
/// station. Returns Unknown while the observed decisions leave it open.
Decision evaluate_partial(const BooleanStructure& structure, std::span<const Decision> decisions);

struct ErrorProbabilities {
    Probability pfa; ///< P(D = 0 | x = 1)
    Probability pfr; ///< P(D = 1 | x = 0)
};

struct InspectionEffort {
    double cost = 0.0;
    double time = 0.0;
};

struct Evaluation {
    Probability pfa;
    Probability pfr;
    double c_f = 0.0;
    double expected_inspection_cost = 0.0;
    double c_total = 0.0;
    double t_total = 0.0;

    Probability pta() const noexcept { return pfr.complement(); }
    Probability ptr() const noexcept { return pfa.complement(); }
};

/// t = a * exp(b * T)
double station_time(const Station& station, double threshold);

ErrorProbabilities system_error_probabilities(const SystemModel& model,
                                              std::span<const double> thresholds);

/// C_F = prior * PFA * c_FA + (1 - prior) * PFR * c_FR
double misclassification_cost(const SystemModel& model, Probability pfa, Probability pfr);

/// Expected inspection cost and time by short-circuit enumeration over all
/// outcome prefixes. Throws std::invalid_argument for more than
/// kMaxEnumerationStations stations.
InspectionEffort expected_effort(const SystemModel& model, const Policy& policy);

/// Series/parallel recursions in closed form. Throws std::invalid_argument
/// for nested structures.
InspectionEffort expected_effort_closed_form(const SystemModel& model, const Policy& policy);

/// Expected cost and time when readings are drawn conditionally on the true
/// status x (x first, then independent readings). This is the estimand of
/// the Monte Carlo simulator; it differs from expected_effort by covariance
/// terms of order prior * (1 - prior) when three or more stations can be
/// visited.
InspectionEffort expected_effort_conditional(const SystemModel& model, const Policy& policy);

Evaluation evaluate_policy(const SystemModel& model, const Policy& policy);

/// w1 * c_total + w2 * t_total
double fitness(const SystemModel& model, const Policy& policy, const WeightPair& weights);
double fitness(const Evaluation& evaluation, const WeightPair& weights) noexcept;

/// Per-station accumulation form of the fitness for flat structures:
///   (w1 c_1 + w2 t_1) + sum_{i>=2} (prod_{j<i} p_j) (w1 c_i + w2 t_i) + w1 C_F
/// with q_j in place of p_j for parallel structures.
double fitness_accumulated(const SystemModel& model, const Policy& policy,
                           const WeightPair& weights);

} // namespace portinspect
