#pragma once

// Standard normal CDF and the per-station probability kernels.

#include "portinspect/model.hpp"

namespace portinspect {

/// A value in [0, 1]. Construction outside the range throws.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value);

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }
    Probability complement() const noexcept;

private:
    double value_ = 0.0;
};

/// Phi(z). Saturates to exactly 0 below -40 and exactly 1 above 40;
/// throws std::domain_error on NaN or infinite input.
Probability normal_cdf(double z);

/// P(d = 1 | x = 0) = 1 - Phi(T / sigma0)
Probability type1_error(const Station& station, double threshold);

/// P(d = 0 | x = 1) = Phi((T - 1) / sigma1)
Probability type2_error(const Station& station, double threshold);

/// p_i = (1 - prior) Phi(T / sigma0) + prior Phi((T - 1) / sigma1)
Probability pass_probability(const Station& station, double threshold, double prior);

/// q_i = 1 - p_i
inline Probability fail_probability(const Station& station, double threshold, double prior) {
    return pass_probability(station, threshold, prior).complement();
}

} // namespace portinspect
