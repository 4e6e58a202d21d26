#include "portinspect/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace portinspect {

bool dominates(const ParetoPoint& a, const ParetoPoint& b) noexcept {
    return a.cost <= b.cost && a.time <= b.time && (a.cost < b.cost || a.time < b.time);
}

std::vector<ParetoPoint> non_dominated_filter(std::span<const ParetoPoint> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Cost, then time, then input position: the first point of any run of
    // equal costs has the smallest time, and exact duplicates keep input order.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].cost != points[b].cost) return points[a].cost < points[b].cost;
        return points[a].time < points[b].time;
    });
    std::vector<ParetoPoint> front;
    double best_time = std::numeric_limits<double>::infinity();
    for (const std::size_t i : order) {
        if (points[i].time < best_time) {
            front.push_back(points[i]);
            best_time = points[i].time;
        }
    }
    return front;
}

double frontier_distance(std::span<const ParetoPoint> from, std::span<const ParetoPoint> to) {
    if (from.empty() || to.empty()) throw std::invalid_argument("frontier_distance: empty frontier");
    double cost_lo = std::numeric_limits<double>::infinity(), cost_hi = -cost_lo;
    double time_lo = cost_lo, time_hi = -cost_lo;
    for (const auto set : {from, to})
        for (const auto& p : set) {
            cost_lo = std::min(cost_lo, p.cost);
            cost_hi = std::max(cost_hi, p.cost);
            time_lo = std::min(time_lo, p.time);
            time_hi = std::max(time_hi, p.time);
        }
    // A degenerate axis carries no spread; leave it unscaled.
    const double cost_span = cost_hi > cost_lo ? cost_hi - cost_lo : 1.0;
    const double time_span = time_hi > time_lo ? time_hi - time_lo : 1.0;

    double worst = 0.0;
    for (const auto& a : from) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& b : to) {
            const double dc = (a.cost - b.cost) / cost_span;
            const double dt = (a.time - b.time) / time_span;
            nearest = std::min(nearest, std::hypot(dc, dt));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

} // namespace portinspect
