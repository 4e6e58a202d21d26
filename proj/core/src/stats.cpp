#include "portinspect/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace portinspect {

namespace {
constexpr double kSaturation = 40.0;
}

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::domain_error("probability outside [0,1]: " + std::to_string(value));
}

Probability Probability::complement() const noexcept {
    Probability p;
    p.value_ = 1.0 - value_;
    return p;
}

Probability normal_cdf(double z) {
    if (!std::isfinite(z)) throw std::domain_error("normal_cdf: non-finite argument");
    if (z < -kSaturation) return Probability(0.0);
    if (z > kSaturation) return Probability(1.0);
    // erfc keeps full relative accuracy in the lower tail.
    return Probability(0.5 * std::erfc(-z / std::numbers::sqrt2));
}

Probability type1_error(const Station& station, double threshold) {
    // 1 - Phi(u) == Phi(-u), without cancellation in the upper tail.
    return normal_cdf(-threshold / station.sigma0);
}

Probability type2_error(const Station& station, double threshold) {
    return normal_cdf((threshold - 1.0) / station.sigma1);
}

Probability pass_probability(const Station& station, double threshold, double prior) {
    if (!(prior >= 0.0 && prior <= 1.0)) throw std::domain_error("prior outside [0,1]");
    const double clean_pass = normal_cdf(threshold / station.sigma0);
    const double bad_pass = type2_error(station, threshold);
    const double p = (1.0 - prior) * clean_pass + prior * bad_pass;
    return Probability(std::min(1.0, std::max(0.0, p)));
}

} // namespace portinspect
