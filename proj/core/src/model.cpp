#include "portinspect/model.hpp"

#include <cmath>
#include <sstream>

namespace portinspect {

namespace {

using Node = BooleanStructure::Node;

std::size_t count_leaves(const Node& node) {
    if (node.kind == NodeKind::Leaf) return 1;
    std::size_t total = 0;
    for (const auto& child : node.children) total += count_leaves(child);
    return total;
}

void relabel(Node& node, const std::vector<std::size_t>& mapping) {
    if (node.kind == NodeKind::Leaf) {
        node.station = mapping.at(node.station);
        return;
    }
    for (auto& child : node.children) relabel(child, mapping);
}

void write_node(std::ostream& os, const Node& node) {
    if (node.kind == NodeKind::Leaf) {
        os << node.station + 1;
        return;
    }
    os << (node.kind == NodeKind::Any ? "any(" : "all(");
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) os << ',';
        write_node(os, node.children[i]);
    }
    os << ')';
}

void check_node(const Node& node, std::size_t n, std::vector<bool>& seen) {
    if (node.kind == NodeKind::Leaf) {
        if (node.station >= n)
            throw ValidationError("structure", "leaf index " + std::to_string(node.station + 1) +
                                                   " out of range 1.." + std::to_string(n));
        if (seen[node.station])
            throw ValidationError("structure",
                                  "duplicate leaf " + std::to_string(node.station + 1));
        seen[node.station] = true;
        return;
    }
    if (node.children.size() < 2)
        throw ValidationError("structure", "any/all node needs at least 2 children");
    for (const auto& child : node.children) check_node(child, n, seen);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

BooleanStructure BooleanStructure::leaf(std::size_t station) {
    return BooleanStructure(Node{NodeKind::Leaf, station, {}});
}

BooleanStructure BooleanStructure::any_of(std::vector<BooleanStructure> children) {
    Node node{NodeKind::Any, 0, {}};
    node.children.reserve(children.size());
    for (auto& c : children) node.children.push_back(std::move(c.root_));
    return BooleanStructure(std::move(node));
}

BooleanStructure BooleanStructure::all_of(std::vector<BooleanStructure> children) {
    Node node{NodeKind::All, 0, {}};
    node.children.reserve(children.size());
    for (auto& c : children) node.children.push_back(std::move(c.root_));
    return BooleanStructure(std::move(node));
}

BooleanStructure BooleanStructure::series(std::size_t n) {
    if (n == 1) return leaf(0);
    std::vector<BooleanStructure> leaves;
    for (std::size_t i = 0; i < n; ++i) leaves.push_back(leaf(i));
    return any_of(std::move(leaves));
}

BooleanStructure BooleanStructure::parallel(std::size_t n) {
    if (n == 1) return leaf(0);
    std::vector<BooleanStructure> leaves;
    for (std::size_t i = 0; i < n; ++i) leaves.push_back(leaf(i));
    return all_of(std::move(leaves));
}

std::size_t BooleanStructure::leaf_count() const { return count_leaves(root_); }

std::optional<NodeKind> BooleanStructure::flat_kind() const {
    if (root_.kind == NodeKind::Leaf) return NodeKind::Leaf;
    for (const auto& child : root_.children)
        if (child.kind != NodeKind::Leaf) return std::nullopt;
    return root_.kind;
}

BooleanStructure BooleanStructure::relabeled(const std::vector<std::size_t>& mapping) const {
    Node copy = root_;
    relabel(copy, mapping);
    return BooleanStructure(std::move(copy));
}

std::string BooleanStructure::to_string() const {
    std::ostringstream os;
    write_node(os, root_);
    return os.str();
}

WeightPair::WeightPair(double w1, double w2) : w1_(w1), w2_(w2) {
    if (!finite(w1) || !finite(w2) || w1 < 0.0 || w2 < 0.0 || w1 > 1.0 || w2 > 1.0)
        throw ValidationError("weights", "weights must lie in [0,1]");
    if (std::abs(w1 + w2 - 1.0) > kSumTolerance)
        throw ValidationError("weights", "weights must sum to 1");
}

WeightPair WeightPair::from_cost_weight(double w1) { return WeightPair(w1, 1.0 - w1); }

void validate_model(const SystemModel& model) {
    const std::size_t n = model.stations.size();
    if (n == 0) throw ValidationError("stations", "at least one station is required");
    for (std::size_t i = 0; i < n; ++i) {
        const Station& s = model.stations[i];
        const std::string at = " (station " + std::to_string(i + 1) + ")";
        if (!finite(s.sigma0) || s.sigma0 <= 0.0)
            throw ValidationError("sigma0", "sigma0 must be positive" + at);
        if (!finite(s.sigma1) || s.sigma1 <= 0.0)
            throw ValidationError("sigma1", "sigma1 must be positive" + at);
        if (!finite(s.cost) || s.cost < 0.0)
            throw ValidationError("c", "cost must be nonnegative" + at);
        if (!finite(s.time_a) || s.time_a <= 0.0)
            throw ValidationError("a", "time coefficient a must be positive" + at);
        if (!finite(s.time_b)) throw ValidationError("b", "time exponent b must be finite" + at);
    }
    if (!finite(model.prior) || model.prior < 0.0 || model.prior > 1.0)
        throw ValidationError("prior", "prior outside [0,1]");
    if (!finite(model.cost_false_accept) || model.cost_false_accept < 0.0)
        throw ValidationError("c_fa", "false-accept cost must be nonnegative");
    if (!finite(model.cost_false_reject) || model.cost_false_reject < 0.0)
        throw ValidationError("c_fr", "false-reject cost must be nonnegative");
    if (!finite(model.box.lo) || !finite(model.box.hi) || !(model.box.lo < model.box.hi))
        throw ValidationError("threshold_box", "threshold box requires lo < hi");

    const auto& root = model.structure.root();
    if (root.kind == NodeKind::Leaf && n != 1)
        throw ValidationError("structure", "a single-leaf structure only fits a 1-station system");
    std::vector<bool> seen(n, false);
    check_node(root, n, seen);
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw ValidationError("structure",
                                  "station " + std::to_string(i + 1) + " missing from structure");
}

void validate_sequence(const Sequence& sequence, std::size_t n) {
    if (sequence.size() != n)
        throw ValidationError("sequence", "sequence length " + std::to_string(sequence.size()) +
                                              " does not match " + std::to_string(n) + " stations");
    std::vector<bool> seen(n, false);
    for (auto s : sequence) {
        if (s >= n) throw ValidationError("sequence", "sequence entry out of range");
        if (seen[s]) throw ValidationError("sequence", "sequence repeats a station");
        seen[s] = true;
    }
}

void validate_thresholds(const SystemModel& model, const std::vector<double>& thresholds) {
    if (thresholds.size() != model.size())
        throw ValidationError("thresholds", "expected " + std::to_string(model.size()) +
                                                " thresholds, got " +
                                                std::to_string(thresholds.size()));
    for (double t : thresholds)
        if (!finite(t) || !model.box.contains(t))
            throw ValidationError("thresholds", "threshold outside the threshold box");
}

void validate_policy(const SystemModel& model, const Policy& policy) {
    validate_sequence(policy.sequence, model.size());
    validate_thresholds(model, policy.thresholds);
}

std::string format_sequence(const Sequence& sequence) {
    std::string out;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(sequence[i] + 1);
    }
    return out;
}

Sequence parse_sequence(const std::string& text) {
    Sequence out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto dash = text.find('-', pos);
        if (dash == std::string::npos) dash = text.size();
        const std::string token = text.substr(pos, dash - pos);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("sequence", "malformed sequence '" + text + "'");
        const unsigned long value = std::stoul(token);
        if (value == 0) throw ValidationError("sequence", "sequence indices are 1-based");
        out.push_back(value - 1);
        pos = dash + 1;
    }
    return out;
}

SystemModel reference_port_model() {
    SystemModel m;
    m.stations = {
        Station{0.16, 0.30, 1.0, 20.0, -3.0},
        Station{0.20, 0.20, 1.0, 20.0, -3.0},
        Station{0.22, 0.26, 1.0, 20.0, -3.0},
    };
    m.prior = 0.0002;
    m.cost_false_accept = 100000.0;
    m.cost_false_reject = 500.0;
    m.structure = BooleanStructure::parallel(3);
    m.box = ThresholdBox{0.0, 1.0};
    return m;
}

} // namespace portinspect
