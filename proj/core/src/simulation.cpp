#include "portinspect/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "portinspect/evaluation.hpp"
#include "portinspect/random.hpp"

namespace portinspect {

namespace {

constexpr std::size_t kBlockSize = 4096;

// Running mean / sum of squared deviations with Chan's pairwise merge.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0.0) return;
        if (count == 0.0) {
            *this = other;
            return;
        }
        const double total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * other.count / total;
        m2 += other.m2 + delta * delta * count * other.count / total;
        count = total;
    }

    double variance() const { return count > 1.0 ? std::max(0.0, m2 / (count - 1.0)) : 0.0; }
};

struct Stratum {
    Moments cost;
    Moments time;
    std::size_t rejects = 0;

    void merge(const Stratum& other) {
        cost.merge(other.cost);
        time.merge(other.time);
        rejects += other.rejects;
    }
};

struct Tally {
    Stratum by_status[2];
};

Estimate proportion(std::size_t hits, std::size_t n) {
    if (n == 0) return {};
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const double smoothed = (static_cast<double>(hits) + 1.0) / (static_cast<double>(n) + 2.0);
    return {p, std::sqrt(smoothed * (1.0 - smoothed) / static_cast<double>(n))};
}

} // namespace

SimulationResult simulate(const SystemModel& model, const Policy& policy, std::size_t n_samples,
                          std::uint64_t seed, const SimulationOptions& options) {
    if (n_samples == 0) throw std::invalid_argument("simulate: n_samples must be positive");
    validate_model(model);
    validate_policy(model, policy);

    const std::size_t n = model.size();
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = station_time(model.stations[i], policy.thresholds[i]);

    const bool stratified = options.sampling == Sampling::Stratified;
    const std::size_t clean_quota = stratified ? n_samples / 2 : 0;

    const std::size_t blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<Tally> tallies(blocks);
    detail::parallel_for(blocks, options.workers, [&](std::size_t b) {
        Tally& tally = tallies[b];
        std::vector<Decision> decisions(n);
        const std::size_t end = std::min(n_samples, (b + 1) * kBlockSize);
        for (std::size_t s = b * kBlockSize; s < end; ++s) {
            Rng rng(stream_seed(seed, s));
            int status;
            if (stratified)
                status = s < clean_quota ? 0 : 1;
            else
                status = rng.bernoulli(model.prior) ? 1 : 0;

            std::fill(decisions.begin(), decisions.end(), Decision::Unknown);
            double cost = 0.0, time = 0.0;
            Decision system = Decision::Unknown;
            for (const std::size_t station : policy.sequence) {
                const Station& st = model.stations[station];
                const double reading =
                    status == 0 ? st.sigma0 * rng.normal() : 1.0 + st.sigma1 * rng.normal();
                decisions[station] =
                    reading > policy.thresholds[station] ? Decision::Reject : Decision::Pass;
                cost += st.cost;
                time += times[station];
                system = evaluate_partial(model.structure, decisions);
                if (system != Decision::Unknown) break;
            }
            Stratum& stratum = tally.by_status[status];
            stratum.cost.add(cost);
            stratum.time.add(time);
            if (system == Decision::Reject) ++stratum.rejects;
        }
    });

    Tally total;
    for (const auto& t : tallies) {
        total.by_status[0].merge(t.by_status[0]);
        total.by_status[1].merge(t.by_status[1]);
    }
    const Stratum& clean = total.by_status[0];
    const Stratum& bad = total.by_status[1];
    const auto clean_n = static_cast<std::size_t>(clean.cost.count);
    const auto bad_n = static_cast<std::size_t>(bad.cost.count);

    SimulationResult result;
    result.n_samples = n_samples;
    result.clean_samples = clean_n;
    result.bad_samples = bad_n;
    result.seed = seed;
    result.pfr = proportion(clean.rejects, clean_n);
    result.pfa = proportion(bad_n - bad.rejects, bad_n);

    if (stratified) {
        // Prior-weighted stratum means; an empty stratum hands its weight to
        // the other one.
        double w_clean = 1.0 - model.prior;
        double w_bad = model.prior;
        if (clean_n == 0) w_clean = 0.0, w_bad = 1.0;
        if (bad_n == 0) w_bad = 0.0, w_clean = 1.0;
        auto combine = [&](const Moments& c, const Moments& d) {
            Estimate e;
            e.value = w_clean * c.mean + w_bad * d.mean;
            double var = 0.0;
            if (clean_n) var += w_clean * w_clean * c.variance() / c.count;
            if (bad_n) var += w_bad * w_bad * d.variance() / d.count;
            e.standard_error = std::sqrt(var);
            return e;
        };
        result.mean_cost = combine(clean.cost, bad.cost);
        result.mean_time = combine(clean.time, bad.time);
    } else {
        auto pooled = [](Moments a, const Moments& b) {
            a.merge(b);
            return Estimate{a.mean, std::sqrt(a.variance() / a.count)};
        };
        result.mean_cost = pooled(clean.cost, bad.cost);
        result.mean_time = pooled(clean.time, bad.time);
    }
    return result;
}

} // namespace portinspect
