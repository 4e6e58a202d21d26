#pragma once

// Domain types shared by every part of the library: stations, the Boolean
// decision structure, the system model, inspection policies and weights.
//
// Station indices are 0-based throughout the C++ API. Text formats (config
// files, CSV sequences such as "2-3-1") use 1-based indices.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace portinspect {

/// Raised when a model, policy or parameter set violates an invariant.
/// `field()` names the offending field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// One sensor station. Reading means are normalized to 0 (acceptable
/// container) and 1 (container to reject), so only the spreads are stored.
struct Station {
    double sigma0 = 1.0; ///< reading std. dev. when x = 0
    double sigma1 = 1.0; ///< reading std. dev. when x = 1
    double cost = 0.0;   ///< unit inspection cost
    double time_a = 1.0; ///< time model t = time_a * exp(time_b * T)
    double time_b = 0.0;
};

enum class NodeKind {
    Leaf,
    Any, ///< series: rejects if any child rejects
    All, ///< parallel: rejects only if every child rejects
};

/// Boolean decision function over station decisions, as a tree whose leaves
/// are station indices.
class BooleanStructure {
public:
    struct Node {
        NodeKind kind = NodeKind::Leaf;
        std::size_t station = 0;
        std::vector<Node> children;

        friend bool operator==(const Node&, const Node&) = default;
    };

    static BooleanStructure leaf(std::size_t station);
    static BooleanStructure any_of(std::vector<BooleanStructure> children);
    static BooleanStructure all_of(std::vector<BooleanStructure> children);
    /// ANY over stations 0..n-1 (a bare leaf when n == 1).
    static BooleanStructure series(std::size_t n);
    /// ALL over stations 0..n-1 (a bare leaf when n == 1).
    static BooleanStructure parallel(std::size_t n);

    const Node& root() const noexcept { return root_; }
    std::size_t leaf_count() const;

    /// Kind of a flat structure: Any/All when the root's children are all
    /// leaves, Leaf for a single-leaf tree, nullopt for nested structures.
    std::optional<NodeKind> flat_kind() const;

    /// Same tree shape with every station index replaced by mapping[index].
    BooleanStructure relabeled(const std::vector<std::size_t>& mapping) const;

    /// Compact text form, e.g. "all(1,any(2,3))" with 1-based leaves.
    std::string to_string() const;

    friend bool operator==(const BooleanStructure&, const BooleanStructure&) = default;

private:
    explicit BooleanStructure(Node root) : root_(std::move(root)) {}
    Node root_;
};

struct ThresholdBox {
    double lo = 0.0;
    double hi = 1.0;

    double span() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return t >= lo && t <= hi; }
    double clamp(double t) const noexcept { return t < lo ? lo : (t > hi ? hi : t); }
};

struct SystemModel {
    std::vector<Station> stations;
    double prior = 0.0; ///< P(x = 1)
    double cost_false_accept = 0.0;
    double cost_false_reject = 0.0;
    BooleanStructure structure = BooleanStructure::leaf(0);
    ThresholdBox box{};

    std::size_t size() const noexcept { return stations.size(); }
};

/// Visiting order as a permutation of 0-based station indices.
using Sequence = std::vector<std::size_t>;

/// Sequence plus thresholds. Thresholds are indexed by station, not by
/// position in the sequence.
struct Policy {
    Sequence sequence;
    std::vector<double> thresholds;

    friend bool operator==(const Policy&, const Policy&) = default;
};

/// Scalarization weights, w1 for cost and w2 for time.
class WeightPair {
public:
    static constexpr double kSumTolerance = 1e-12;

    WeightPair() = default;
    WeightPair(double w1, double w2);
    /// (w1, 1 - w1)
    static WeightPair from_cost_weight(double w1);

    double w1() const noexcept { return w1_; }
    double w2() const noexcept { return w2_; }

    friend bool operator==(const WeightPair&, const WeightPair&) = default;

private:
    double w1_ = 0.5;
    double w2_ = 0.5;
};

/// Throws ValidationError naming the first violated invariant.
void validate_model(const SystemModel& model);

/// Checks that `sequence` is a permutation of 0..n-1.
void validate_sequence(const Sequence& sequence, std::size_t n);
void validate_thresholds(const SystemModel& model, const std::vector<double>& thresholds);
void validate_policy(const SystemModel& model, const Policy& policy);

/// "2-3-1" for {1, 2, 0}.
std::string format_sequence(const Sequence& sequence);
/// Inverse of format_sequence; throws ValidationError on malformed text.
Sequence parse_sequence(const std::string& text);

/// The three-station parallel system used as the worked example throughout
/// the docs and tests.
SystemModel reference_port_model();

} // namespace portinspect
