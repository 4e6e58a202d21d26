#include "portinspect/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace portinspect {

namespace {

using Node = BooleanStructure::Node;

Decision evaluate_node(const Node& node, std::span<const Decision> decisions) {
    switch (node.kind) {
    case NodeKind::Leaf:
        return decisions[node.station];
    case NodeKind::Any: {
        bool all_pass = true;
        for (const auto& child : node.children) {
            const Decision d = evaluate_node(child, decisions);
            if (d == Decision::Reject) return Decision::Reject;
            if (d == Decision::Unknown) all_pass = false;
        }
        return all_pass ? Decision::Pass : Decision::Unknown;
    }
    case NodeKind::All: {
        bool all_reject = true;
        for (const auto& child : node.children) {
            const Decision d = evaluate_node(child, decisions);
            if (d == Decision::Pass) return Decision::Pass;
            if (d == Decision::Unknown) all_reject = false;
        }
        return all_reject ? Decision::Reject : Decision::Unknown;
    }
    }
    return Decision::Unknown;
}

// P(node rejects | x) given per-station P(d_i = 1 | x).
double reject_probability(const Node& node, std::span<const double> station_reject) {
    switch (node.kind) {
    case NodeKind::Leaf:
        return station_reject[node.station];
    case NodeKind::Any: {
        double all_pass = 1.0;
        for (const auto& child : node.children)
            all_pass *= 1.0 - reject_probability(child, station_reject);
        return 1.0 - all_pass;
    }
    case NodeKind::All: {
        double all_reject = 1.0;
        for (const auto& child : node.children)
            all_reject *= reject_probability(child, station_reject);
        return all_reject;
    }
    }
    return 0.0;
}

Probability clamp_probability(double p) { return Probability(std::clamp(p, 0.0, 1.0)); }

struct StationTerms {
    std::vector<double> cost;
    std::vector<double> time;
};

StationTerms station_terms(const SystemModel& model, std::span<const double> thresholds) {
    StationTerms terms;
    terms.cost.reserve(model.size());
    terms.time.reserve(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        terms.cost.push_back(model.stations[i].cost);
        terms.time.push_back(station_time(model.stations[i], thresholds[i]));
    }
    return terms;
}

// Depth-first walk over outcome prefixes. Every visited station contributes
// its cost and time weighted by the probability of reaching it.
class PrefixWalker {
public:
    PrefixWalker(const BooleanStructure& structure, const Sequence& sequence,
                 std::span<const double> pass, const StationTerms& terms)
        : structure_(structure), sequence_(sequence), pass_(pass), terms_(terms),
          assignment_(sequence.size(), Decision::Unknown) {}

    InspectionEffort run() {
        walk(0, 1.0);
        return effort_;
    }

private:
    void walk(std::size_t position, double reach) {
        if (position == sequence_.size()) return;
        const std::size_t station = sequence_[position];
        effort_.cost += reach * terms_.cost[station];
        effort_.time += reach * terms_.time[station];
        for (const Decision outcome : {Decision::Pass, Decision::Reject}) {
            const double p =
                outcome == Decision::Pass ? pass_[station] : 1.0 - pass_[station];
            if (p <= 0.0) continue;
            assignment_[station] = outcome;
            if (evaluate_partial(structure_, assignment_) == Decision::Unknown)
                walk(position + 1, reach * p);
        }
        assignment_[station] = Decision::Unknown;
    }

    const BooleanStructure& structure_;
    const Sequence& sequence_;
    std::span<const double> pass_;
    const StationTerms& terms_;
    std::vector<Decision> assignment_;
    InspectionEffort effort_;
};

void check_enumerable(const SystemModel& model) {
    if (model.size() > kMaxEnumerationStations)
        throw std::invalid_argument("policy evaluation supports at most " +
                                    std::to_string(kMaxEnumerationStations) + " stations");
}

} // namespace

Decision evaluate_partial(const BooleanStructure& structure, std::span<const Decision> decisions) {
    return evaluate_node(structure.root(), decisions);
}

double station_time(const Station& station, double threshold) {
    return station.time_a * std::exp(station.time_b * threshold);
}

ErrorProbabilities system_error_probabilities(const SystemModel& model,
                                              std::span<const double> thresholds) {
    const std::size_t n = model.size();
    std::vector<double> reject_given_clean(n);
    std::vector<double> reject_given_bad(n);
    for (std::size_t i = 0; i < n; ++i) {
        reject_given_clean[i] = type1_error(model.stations[i], thresholds[i]);
        reject_given_bad[i] = type2_error(model.stations[i], thresholds[i]).complement();
    }
    const auto& root = model.structure.root();
    const double pfr = reject_probability(root, reject_given_clean);
    const double ptr = reject_probability(root, reject_given_bad);
    return {clamp_probability(1.0 - ptr), clamp_probability(pfr)};
}

double misclassification_cost(const SystemModel& model, Probability pfa, Probability pfr) {
    return model.prior * pfa * model.cost_false_accept +
           (1.0 - model.prior) * pfr * model.cost_false_reject;
}

InspectionEffort expected_effort(const SystemModel& model, const Policy& policy) {
    check_enumerable(model);
    const StationTerms terms = station_terms(model, policy.thresholds);
    std::vector<double> pass(model.size());
    for (std::size_t i = 0; i < model.size(); ++i)
        pass[i] = pass_probability(model.stations[i], policy.thresholds[i], model.prior);
    return PrefixWalker(model.structure, policy.sequence, pass, terms).run();
}

InspectionEffort expected_effort_closed_form(const SystemModel& model, const Policy& policy) {
    const auto kind = model.structure.flat_kind();
    if (!kind) throw std::invalid_argument("closed form needs a flat series or parallel structure");
    InspectionEffort effort;
    double reach = 1.0;
    for (const std::size_t station : policy.sequence) {
        const Station& s = model.stations[station];
        const double threshold = policy.thresholds[station];
        effort.cost += reach * s.cost;
        effort.time += reach * station_time(s, threshold);
        const double p = pass_probability(s, threshold, model.prior);
        reach *= *kind == NodeKind::All ? 1.0 - p : p;
    }
    return effort;
}

InspectionEffort expected_effort_conditional(const SystemModel& model, const Policy& policy) {
    check_enumerable(model);
    const StationTerms terms = station_terms(model, policy.thresholds);
    const std::size_t n = model.size();
    std::vector<double> pass_clean(n);
    std::vector<double> pass_bad(n);
    for (std::size_t i = 0; i < n; ++i) {
        pass_clean[i] = type1_error(model.stations[i], policy.thresholds[i]).complement();
        pass_bad[i] = type2_error(model.stations[i], policy.thresholds[i]);
    }
    InspectionEffort total;
    const double weights[2] = {1.0 - model.prior, model.prior};
    const std::vector<double>* pass[2] = {&pass_clean, &pass_bad};
    for (int x = 0; x < 2; ++x) {
        if (weights[x] <= 0.0) continue;
        const auto part = PrefixWalker(model.structure, policy.sequence, *pass[x], terms).run();
        total.cost += weights[x] * part.cost;
        total.time += weights[x] * part.time;
    }
    return total;
}

Evaluation evaluate_policy(const SystemModel& model, const Policy& policy) {
    validate_policy(model, policy);
    const auto errors = system_error_probabilities(model, policy.thresholds);
    const auto effort = expected_effort(model, policy);
    Evaluation e;
    e.pfa = errors.pfa;
    e.pfr = errors.pfr;
    e.c_f = misclassification_cost(model, errors.pfa, errors.pfr);
    e.expected_inspection_cost = effort.cost;
    e.c_total = e.c_f + effort.cost;
    e.t_total = effort.time;
    return e;
}

double fitness(const Evaluation& evaluation, const WeightPair& weights) noexcept {
    return weights.w1() * evaluation.c_total + weights.w2() * evaluation.t_total;
}

double fitness(const SystemModel& model, const Policy& policy, const WeightPair& weights) {
    return fitness(evaluate_policy(model, policy), weights);
}

double fitness_accumulated(const SystemModel& model, const Policy& policy,
                           const WeightPair& weights) {
    const auto kind = model.structure.flat_kind();
    if (!kind) throw std::invalid_argument("accumulation form needs a flat structure");
    double total = 0.0;
    double reach = 1.0;
    for (const std::size_t station : policy.sequence) {
        const Station& s = model.stations[station];
        const double threshold = policy.thresholds[station];
        total += reach * (weights.w1() * s.cost + weights.w2() * station_time(s, threshold));
        const double p = pass_probability(s, threshold, model.prior);
        reach *= *kind == NodeKind::All ? 1.0 - p : p;
    }
    const auto errors = system_error_probabilities(model, policy.thresholds);
    return total + weights.w1() * misclassification_cost(model, errors.pfa, errors.pfr);
}

} // namespace portinspect
