#pragma once

// Monte Carlo execution of an inspection policy, used to validate the
// analytic evaluation. Each container draws its true status x, then
// independent Gaussian readings station by station (mean 0 or 1, spread
// sigma0 or sigma1) until the decision function is determined.

#include <cstddef>
#include <cstdint>

#include "portinspect/model.hpp"

namespace portinspect {

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

enum class Sampling {
    /// Half the samples with x = 0 and half with x = 1; cost and time are
    /// re-weighted by the prior. Keeps PFA estimable when the prior is tiny.
    Stratified,
    /// x drawn with P(x = 1) = prior.
    Prior,
};

struct SimulationOptions {
    Sampling sampling = Sampling::Stratified;
    /// Threads (0 = hardware concurrency). Output is independent of this.
    std::size_t workers = 1;
};

struct SimulationResult {
    std::size_t n_samples = 0;
    std::size_t clean_samples = 0; ///< samples with x = 0
    std::size_t bad_samples = 0;   ///< samples with x = 1
    Estimate pfa;
    Estimate pfr;
    Estimate mean_cost; ///< expected inspection cost (misclassification excluded)
    Estimate mean_time;
    std::uint64_t seed = 0;
};

/// Sample i uses its own random stream stream_seed(seed, i), so results are
/// bit-identical for any worker count. Proportion standard errors use the
/// add-one smoothed proportion, so zero counts still carry uncertainty; a
/// conditional error rate with no samples in its stratum is reported as 0.
SimulationResult simulate(const SystemModel& model, const Policy& policy, std::size_t n_samples,
                          std::uint64_t seed, const SimulationOptions& options = {});

} // namespace portinspect
