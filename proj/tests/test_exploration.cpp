#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smc/exploration.hpp"

using namespace smc;

TEST_CASE("vanishing step size leaves the motor where it is") {
    PolicyConfig p;
    p.sigma_m = 1e-300;
    Rng rng(1);
    for (double m : {-0.7, 0.0, 0.3}) CHECK(std::abs(step_policy(m, p, -0.785, 0.785, rng) - m) <= 1e-290);
}

TEST_CASE("reflection at the upper bound mirrors the overshoot") {
    const double lo = -std::numbers::pi / 4, hi = std::numbers::pi / 4;
    PolicyConfig p;
    p.sigma_m = 0.2;
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        Rng probe = rng;
        const double draw = p.sigma_m * probe.normal();
        const double out = step_policy(hi, p, lo, hi, rng);
        if (draw > 0.0 && draw < hi - lo) CHECK(out == doctest::Approx(2 * hi - (hi + draw)).epsilon(1e-12));
        CHECK(out >= lo);
        CHECK(out <= hi);
    }
}

TEST_CASE("clamp boundary pins the motor to the range") {
    PolicyConfig p;
    p.boundary = Boundary::clamp;
    p.sigma_m = 5.0;
    Rng rng(2);
    bool hit_edge = false;
    for (int i = 0; i < 1000; ++i) {
        const double out = step_policy(0.0, p, -1.0, 1.0, rng);
        CHECK(out >= -1.0);
        CHECK(out <= 1.0);
        hit_edge |= out == -1.0 || out == 1.0;
    }
    CHECK(hit_edge);
}

TEST_CASE("default random walk covers the motor range") {
    const WorldConfig w;
    const PolicyConfig p;
    Rng rng(42);
    std::vector<std::size_t> bins(20, 0);
    double m = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        m = step_policy(m, p, w.m_min, w.m_max, rng);
        REQUIRE(m >= w.m_min);
        REQUIRE(m <= w.m_max);
        const auto b = std::min<std::size_t>(19, static_cast<std::size_t>((m - w.m_min) / (w.m_max - w.m_min) * 20));
        ++bins[b];
    }
    for (auto c : bins) CHECK(c >= n / 100);
}

TEST_CASE("a one-step log starts at t = 0 with the motor at the midpoint") {
    const WorldConfig w;
    const auto log = collect(1, w, {}, 9);
    REQUIRE(log.size() == 1);
    CHECK(log.records()[0].t == 0);
    CHECK(log.records()[0].obs.motor == 0.5 * (w.m_min + w.m_max));
}

TEST_CASE("static environment: every sample lies on one response curve") {
    WorldConfig w;
    w.dynamics.change_prob = 0.0;
    const auto log = collect(5000, w, {}, 3);
    const auto e0 = log.records()[0].latent;
    double worst = 0.0;
    for (const auto& r : log.records()) worst = std::max(worst, std::abs(r.obs.sensor - sense(r.obs.motor, e0, w.s_max)));
    CHECK(worst == 0.0);
}

TEST_CASE("every wall position is visited and dwell time is about 10 steps") {
    const WorldConfig w;
    const auto log = collect(10000, w, {}, 42);
    std::vector<std::size_t> seen(5, 0);
    for (const auto& r : log.records()) ++seen[static_cast<std::size_t>(r.latent.id)];
    for (auto c : seen) CHECK(c >= 500);

    const auto long_log = collect(200000, w, {}, 43);
    std::size_t runs = 1;
    for (std::size_t t = 1; t < long_log.size(); ++t)
        runs += long_log.records()[t].latent.id != long_log.records()[t - 1].latent.id;
    const double dwell = static_cast<double>(long_log.size()) / static_cast<double>(runs);
    CHECK(std::abs(dwell - 10.0) <= 1.0);
}

TEST_CASE("collect is bit-identical for the same seed") {
    WorldConfig w;
    w.sensor_noise = 0.05;
    const auto a = collect(3000, w, {}, 77);
    const auto b = collect(3000, w, {}, 77);
    const auto c = collect(3000, w, {}, 78);
    bool differs = false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a.records()[t].obs.motor == b.records()[t].obs.motor);
        CHECK(a.records()[t].obs.sensor == b.records()[t].obs.sensor);
        CHECK(a.records()[t].latent.distance == b.records()[t].latent.distance);
        differs |= a.records()[t].obs.motor != c.records()[t].obs.motor;
    }
    CHECK(differs);
}

TEST_CASE("policy and latent draws come from independent substreams") {
    // Changing the world's latent dynamics must not perturb the motor trajectory.
    WorldConfig a, b;
    b.dynamics.change_prob = 0.5;
    b.dynamics.jump = DiscreteJump::neighbor;
    const auto la = collect(2000, a, {}, 5);
    const auto lb = collect(2000, b, {}, 5);
    for (std::size_t t = 0; t < la.size(); ++t) CHECK(la.records()[t].obs.motor == lb.records()[t].obs.motor);
}

TEST_CASE("motor samples never leave the range") {
    WorldConfig w;
    PolicyConfig p;
    p.sigma_m = 3.0;
    const auto log = collect(20000, w, p, 8);
    for (const auto& r : log.records()) {
        CHECK(r.obs.motor >= w.m_min);
        CHECK(r.obs.motor <= w.m_max);
    }
}
