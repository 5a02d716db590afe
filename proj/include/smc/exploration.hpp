#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smc/rng.hpp"
#include "smc/wallworld.hpp"

namespace smc {

enum class Boundary { reflect, clamp };

struct PolicyConfig {
    double sigma_m = 0.5; // motor random-walk step std (radians)
    Boundary boundary = Boundary::reflect;
};

// A point in the joint motor-sensor plane.
struct Observation {
    double motor = 0.0;
    double sensor = 0.0;
};

struct SampleRecord {
    std::size_t t = 0;
    Observation obs;
    LatentState latent; // ground truth, evaluation only
};

// Time-indexed experience. Learning code only ever sees observations();
// ground truth is kept in the same records but exposed separately.
class SampleLog {
public:
    SampleLog() = default;
    explicit SampleLog(std::vector<SampleRecord> records) : records_(std::move(records)) {}

    std::size_t size() const { return records_.size(); }
    const std::vector<SampleRecord>& records() const { return records_; }

    std::vector<Observation> observations() const;
    std::vector<LatentState> ground_truth() const;

private:
    std::vector<SampleRecord> records_;
};

double step_policy(double m, const PolicyConfig& policy, double m_min, double m_max, Rng& rng);

// Coupled loop m_{t+1} = step_policy(m_t), e_{t+1} = step_latent(e_t),
// s_{t+1} = observe(m_{t+1}, e_{t+1}). The motor starts at the range midpoint;
// the initial environment state is drawn uniformly. Policy noise, environment
// dynamics and sensor noise use separate substreams of `seed`.
SampleLog collect(std::size_t n_steps, const WorldConfig& world, const PolicyConfig& policy,
                  std::uint64_t seed);

} // namespace smc
