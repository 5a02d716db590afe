#pragma once

// A one-joint agent at the origin with a range sensor pointing along the motor
// angle, facing an infinite wall. The wall is the line through (d, 0) with unit
// normal (cos phi, sin phi); (d, phi) is the hidden environment state.

#include <cstddef>
#include <numbers>
#include <vector>

#include "smc/rng.hpp"

namespace smc {

struct LatentState {
    double distance = 1.0;    // d, perpendicular distance parameter (length units)
    double orientation = 0.0; // phi (radians)
    int id = -1;              // index into the discrete state set, -1 when continuous
};

enum class LatentMode { discrete_translate, continuous_translate, discrete_translate_rotate };

// How a discrete environment picks its next state when it changes.
enum class DiscreteJump { uniform, neighbor };

struct LatentDynamics {
    LatentMode mode = LatentMode::discrete_translate;
    std::size_t n_positions = 5;    // discrete_translate
    std::size_t n_distances = 3;    // discrete_translate_rotate
    std::size_t n_orientations = 2; // discrete_translate_rotate
    double change_prob = 0.1;
    double sigma_e = 0.15; // continuous_translate step std (length units)
    DiscreteJump jump = DiscreteJump::uniform;
};

struct WorldConfig {
    double d_min = 1.0;
    double d_max = 3.0;
    double phi_min = -std::numbers::pi / 8.0;
    double phi_max = std::numbers::pi / 8.0;
    double m_min = -std::numbers::pi / 4.0;
    double m_max = std::numbers::pi / 4.0;
    double s_max = 8.0;
    double sensor_noise = 0.0; // additive Gaussian std, 0 disables
    LatentDynamics dynamics;
};

// Noise-free range reading along motor angle m; s_max when the ray misses the
// wall or the hit lies beyond s_max.
double sense(double m, const LatentState& e, double s_max);

// sense() plus the configured additive noise, clamped to [0, s_max]. Draws from
// rng only when noise is enabled.
double observe(double m, const LatentState& e, const WorldConfig& world, Rng& rng);

// The discrete environment states for discrete modes, in id order
// (distance-major for the rotate variant); empty for the continuous mode.
std::vector<LatentState> discrete_states(const WorldConfig& world);

// Uniformly drawn initial state (uniform over the discrete set, or uniform in
// [d_min, d_max] at phi = 0 for the continuous mode).
LatentState initial_latent(const WorldConfig& world, Rng& rng);

// One environment step: unchanged with probability 1 - change_prob, else a new
// state per the dynamics. Always consumes exactly one uniform for the change
// decision, then whatever the change itself needs.
LatentState step_latent(const LatentState& e, const WorldConfig& world, Rng& rng);

// Lower bound on s_max for which unsaturated readings exist across the whole
// motor range for every admissible latent state.
double saturation_bound(const WorldConfig& world);

} // namespace smc
