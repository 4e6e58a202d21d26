#pragma once

// Two-objective (cost, time) non-dominated filtering and frontier distance.

#include <optional>
#include <span>
#include <vector>

#include "portinspect/model.hpp"

namespace portinspect {

struct ParetoPoint {
    Policy policy;
    double cost = 0.0; ///< c_total
    double time = 0.0; ///< t_total
    std::optional<WeightPair> weights; ///< scalarization that produced the point, if any
};

/// True when `a` weakly dominates `b` with at least one strict inequality.
bool dominates(const ParetoPoint& a, const ParetoPoint& b) noexcept;

/// Non-dominated subset sorted by ascending cost (and strictly decreasing
/// time). Points with identical (cost, time) keep the first by input order.
std::vector<ParetoPoint> non_dominated_filter(std::span<const ParetoPoint> points);

/// Directed Hausdorff distance from `from` to `to`: the largest distance of a
/// point of `from` to its nearest point of `to`, after min-max scaling of
/// each axis over the union of both sets. Throws std::invalid_argument when
/// either set is empty.
double frontier_distance(std::span<const ParetoPoint> from, std::span<const ParetoPoint> to);

} // namespace portinspect
