#include "smc/exploration.hpp"

#include <algorithm>
#include <cmath>

namespace smc {

namespace {

enum Stream : std::uint64_t { policy_stream = 1, latent_stream = 2, sensor_stream = 3 };

double fold(double x, double lo, double hi) {
    if (x >= lo && x <= hi) return x;
    const double span = hi - lo;
    if (span <= 0.0) return lo;
    double y = std::fmod(x - lo, 2.0 * span);
    if (y < 0.0) y += 2.0 * span;
    if (y > span) y = 2.0 * span - y;
    return lo + y;
}

} // namespace

std::vector<Observation> SampleLog::observations() const {
    std::vector<Observation> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.obs);
    return out;
}

std::vector<LatentState> SampleLog::ground_truth() const {
    std::vector<LatentState> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.latent);
    return out;
}

double step_policy(double m, const PolicyConfig& policy, double m_min, double m_max, Rng& rng) {
    const double proposed = m + policy.sigma_m * rng.normal();
    if (policy.boundary == Boundary::clamp) return std::clamp(proposed, m_min, m_max);
    return fold(proposed, m_min, m_max);
}

SampleLog collect(std::size_t n_steps, const WorldConfig& world, const PolicyConfig& policy,
                  std::uint64_t seed) {
    Rng policy_rng(derive_seed(seed, policy_stream));
    Rng latent_rng(derive_seed(seed, latent_stream));
    Rng sensor_rng(derive_seed(seed, sensor_stream));

    std::vector<SampleRecord> records;
    records.reserve(n_steps);

    double m = 0.5 * (world.m_min + world.m_max);
    LatentState e = initial_latent(world, latent_rng);
    for (std::size_t t = 0; t < n_steps; ++t) {
        if (t > 0) {
            m = step_policy(m, policy, world.m_min, world.m_max, policy_rng);
            e = step_latent(e, world, latent_rng);
        }
        records.push_back({t, {m, observe(m, e, world, sensor_rng)}, e});
    }
    return SampleLog(std::move(records));
}

} // namespace smc
