#include "smc/wallworld.hpp"

#include <algorithm>
#include <cmath>

namespace smc {

double sense(double m, const LatentState& e, double s_max) {
    const double c = std::cos(m - e.orientation);
    if (c <= 0.0) return s_max;
    const double t = e.distance * std::cos(e.orientation) / c;
    if (t > s_max || t < 0.0) return s_max;
    return t;
}

double observe(double m, const LatentState& e, const WorldConfig& world, Rng& rng) {
    double s = sense(m, e, world.s_max);
    if (world.sensor_noise > 0.0) s = std::clamp(s + world.sensor_noise * rng.normal(), 0.0, world.s_max);
    return s;
}

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = 0.5 * (lo + hi);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

double reflect_into(double x, double lo, double hi) {
    const double span = hi - lo;
    if (span <= 0.0) return lo;
    // Fold onto a period of 2 * span, then mirror the upper half.
    double y = std::fmod(x - lo, 2.0 * span);
    if (y < 0.0) y += 2.0 * span;
    if (y > span) y = 2.0 * span - y;
    return lo + y;
}

std::size_t neighbor_of(std::size_t current, const WorldConfig& world, Rng& rng) {
    const auto& dyn = world.dynamics;
    std::vector<std::size_t> nbrs;
    if (dyn.mode == LatentMode::discrete_translate) {
        if (current > 0) nbrs.push_back(current - 1);
        if (current + 1 < dyn.n_positions) nbrs.push_back(current + 1);
    } else {
        const std::size_t cols = dyn.n_orientations;
        const std::size_t row = current / cols;
        const std::size_t col = current % cols;
        if (row > 0) nbrs.push_back(current - cols);
        if (row + 1 < dyn.n_distances) nbrs.push_back(current + cols);
        if (col > 0) nbrs.push_back(current - 1);
        if (col + 1 < cols) nbrs.push_back(current + 1);
    }
    if (nbrs.empty()) return current;
    return nbrs[rng.uniform_index(nbrs.size())];
}

} // namespace

std::vector<LatentState> discrete_states(const WorldConfig& world) {
    const auto& dyn = world.dynamics;
    std::vector<LatentState> out;
    switch (dyn.mode) {
    case LatentMode::discrete_translate: {
        const auto ds = grid(world.d_min, world.d_max, dyn.n_positions);
        for (std::size_t i = 0; i < ds.size(); ++i) out.push_back({ds[i], 0.0, static_cast<int>(i)});
        break;
    }
    case LatentMode::discrete_translate_rotate: {
        const auto ds = grid(world.d_min, world.d_max, dyn.n_distances);
        const auto phis = grid(world.phi_min, world.phi_max, dyn.n_orientations);
        for (double d : ds)
            for (double phi : phis) out.push_back({d, phi, static_cast<int>(out.size())});
        break;
    }
    case LatentMode::continuous_translate:
        break;
    }
    return out;
}

LatentState initial_latent(const WorldConfig& world, Rng& rng) {
    if (world.dynamics.mode == LatentMode::continuous_translate)
        return {world.d_min + (world.d_max - world.d_min) * rng.uniform(), 0.0, -1};
    const auto states = discrete_states(world);
    return states[rng.uniform_index(states.size())];
}

LatentState step_latent(const LatentState& e, const WorldConfig& world, Rng& rng) {
    const auto& dyn = world.dynamics;
    if (rng.uniform() >= dyn.change_prob) return e;

    if (dyn.mode == LatentMode::continuous_translate) {
        LatentState next = e;
        next.distance = reflect_into(e.distance + dyn.sigma_e * rng.normal(), world.d_min, world.d_max);
        return next;
    }

    const auto states = discrete_states(world);
    const auto current = static_cast<std::size_t>(e.id);
    if (states.size() < 2) return e;
    if (dyn.jump == DiscreteJump::neighbor) return states[neighbor_of(current, world, rng)];
    // Uniform over the other states.
    std::size_t pick = rng.uniform_index(states.size() - 1);
    if (pick >= current) ++pick;
    return states[pick];
}

double saturation_bound(const WorldConfig& world) {
    const double max_m = std::max(std::abs(world.m_min), std::abs(world.m_max));
    const double max_phi = std::max(std::abs(world.phi_min), std::abs(world.phi_max));
    return world.d_max / std::cos(max_m + max_phi);
}

} // namespace smc
