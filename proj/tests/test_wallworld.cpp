#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "smc/wallworld.hpp"

using namespace smc;
using std::numbers::pi;

namespace {

WorldConfig rotate_world() {
    WorldConfig w;
    w.dynamics.mode = LatentMode::discrete_translate_rotate;
    w.dynamics.n_distances = 3;
    w.dynamics.n_orientations = 2;
    return w;
}

std::vector<double> motor_grid(const WorldConfig& w, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = w.m_min + (w.m_max - w.m_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

} // namespace

TEST_CASE("perpendicular ray hits at exactly d") {
    CHECK(sense(0.0, {2.0, 0.0, 0}, 8.0) == 2.0);
}

TEST_CASE("rays parallel to or facing away from the wall saturate") {
    CHECK(sense(pi / 2, {2.0, 0.0, 0}, 8.0) == 8.0);
    CHECK(sense(-pi / 2 - 0.1, {2.0, 0.0, 0}, 8.0) == 8.0);
    CHECK(sense(pi, {1.0, 0.3, 0}, 6.0) == 6.0);
    CHECK(sense(0.3 + pi / 2, {1.0, 0.3, 0}, 6.0) == 6.0);
}

TEST_CASE("oblique reading matches brute-force ray marching") {
    const double s = sense(pi / 4, {2.0, 0.0, 0}, 8.0);
    const double marched = oracle::ray_march(pi / 4, 2.0, 0.0, 1e-5, 8.0);
    CHECK(s == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(s - marched) <= 1e-5);
}

TEST_CASE("readings match ray marching across the default geometry") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const double m = -pi / 4 + pi / 2 * rng.uniform();
        const double d = 1.0 + 2.0 * rng.uniform();
        const double phi = -pi / 8 + pi / 4 * rng.uniform();
        const double s = sense(m, {d, phi, 0}, 8.0);
        CHECK(std::abs(s - oracle::ray_march(m, d, phi, 1e-4, 8.0)) <= 1e-4);
    }
}

TEST_CASE("readings never exceed s_max and are never negative") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double m = -pi + 2 * pi * rng.uniform();
        const LatentState e{0.5 + 3.0 * rng.uniform(), -0.6 + 1.2 * rng.uniform(), 0};
        const double s = sense(m, e, 4.0);
        CHECK(s >= 0.0);
        CHECK(s <= 4.0);
    }
}

TEST_CASE("facing the wall the reading is even in m and smallest at m = 0") {
    const WorldConfig w;
    for (double d : {1.0, 2.0, 3.0}) {
        const LatentState e{d, 0.0, 0};
        const double s0 = sense(0.0, e, w.s_max);
        for (double m : motor_grid(w, 101)) {
            CHECK(sense(m, e, w.s_max) == doctest::Approx(sense(-m, e, w.s_max)).epsilon(1e-14));
            CHECK(sense(m, e, w.s_max) >= s0);
        }
    }
}

TEST_CASE("five translated walls give non-intersecting response curves") {
    const WorldConfig w;
    const auto states = discrete_states(w);
    REQUIRE(states.size() == 5);
    for (double m : motor_grid(w, 401))
        for (std::size_t i = 0; i + 1 < states.size(); ++i)
            CHECK(sense(m, states[i], w.s_max) < sense(m, states[i + 1], w.s_max));
}

TEST_CASE("rotated walls give at least one pair of intersecting curves") {
    const WorldConfig w = rotate_world();
    const auto states = discrete_states(w);
    REQUIRE(states.size() == 6);
    const auto grid = motor_grid(w, 401);
    bool crossing = false;
    for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            bool pos = false, neg = false;
            for (double m : grid) {
                const double diff = sense(m, states[a], w.s_max) - sense(m, states[b], w.s_max);
                pos |= diff > 0.0;
                neg |= diff < 0.0;
            }
            crossing |= pos && neg;
        }
    CHECK(crossing);
}

TEST_CASE("rotate variant is the product of distances and orientations") {
    const auto states = discrete_states(rotate_world());
    std::set<std::pair<double, double>> combos;
    for (const auto& s : states) combos.insert({s.distance, s.orientation});
    CHECK(combos.size() == 6);
    for (std::size_t i = 0; i < states.size(); ++i) CHECK(states[i].id == static_cast<int>(i));
}

TEST_CASE("default s_max exceeds the saturation bound") {
    const WorldConfig w;
    CHECK(saturation_bound(w) == doctest::Approx(3.0 / std::cos(3 * pi / 8)));
    CHECK(w.s_max > saturation_bound(w));
}

TEST_CASE("zero change probability never moves the wall") {
    WorldConfig w;
    w.dynamics.change_prob = 0.0;
    Rng rng(2);
    const LatentState e = discrete_states(w)[3];
    for (int i = 0; i < 1000; ++i) {
        const auto next = step_latent(e, w, rng);
        CHECK(next.id == e.id);
        CHECK(next.distance == e.distance);
    }
}

TEST_CASE("a forced discrete change lands on a different grid position") {
    WorldConfig w;
    w.dynamics.change_prob = 1.0;
    const auto states = discrete_states(w);
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto& e = states[rng.uniform_index(5)];
        const auto next = step_latent(e, w, rng);
        CHECK(next.id != e.id);
        CHECK(next.distance == states[static_cast<std::size_t>(next.id)].distance);
    }
}

TEST_CASE("neighbor jumps move one grid step") {
    WorldConfig w;
    w.dynamics.change_prob = 1.0;
    w.dynamics.jump = DiscreteJump::neighbor;
    const auto states = discrete_states(w);
    Rng rng(4);
    LatentState e = states[0];
    for (int i = 0; i < 1000; ++i) {
        const auto next = step_latent(e, w, rng);
        CHECK(std::abs(next.id - e.id) == 1);
        e = next;
    }
}

TEST_CASE("continuous wall stays in range and changes at the configured rate") {
    WorldConfig w;
    w.dynamics.mode = LatentMode::continuous_translate;
    Rng rng(5);

    w.dynamics.change_prob = 1.0;
    LatentState e{2.0, 0.0, -1};
    for (int i = 0; i < 100000; ++i) {
        e = step_latent(e, w, rng);
        REQUIRE(e.distance >= w.d_min);
        REQUIRE(e.distance <= w.d_max);
        CHECK(e.id == -1);
    }

    w.dynamics.change_prob = 0.1;
    std::size_t changes = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto next = step_latent(e, w, rng);
        changes += next.distance != e.distance;
        e = next;
    }
    CHECK(std::abs(static_cast<double>(changes) / n - 0.1) <= 0.01);
}

TEST_CASE("sensor noise stays within [0, s_max]") {
    WorldConfig w;
    w.sensor_noise = 2.0;
    Rng rng(6);
    for (int i = 0; i < 10000; ++i) {
        const double s = observe(0.7, {2.9, 0.3, 0}, w, rng);
        CHECK(s >= 0.0);
        CHECK(s <= w.s_max);
    }
}
