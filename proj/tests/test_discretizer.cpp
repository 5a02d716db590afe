#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "smc/discretizer.hpp"
#include "smc/error.hpp"
#include "smc/kmeans.hpp"

using namespace smc;

namespace {

struct Blobs {
    std::vector<Observation> points;
    Observation mean_a, mean_b;
};

// Two 50-point blobs, std 0.01, means one unit apart.
Blobs two_blobs(std::uint64_t seed) {
    Rng rng(seed);
    Blobs b;
    double ax = 0, ay = 0, bx = 0, by = 0;
    for (int i = 0; i < 50; ++i) {
        b.points.push_back({0.2 + 0.01 * rng.normal(), 1.0 + 0.01 * rng.normal()});
        ax += b.points.back().motor;
        ay += b.points.back().sensor;
    }
    for (int i = 0; i < 50; ++i) {
        b.points.push_back({0.2 + 0.01 * rng.normal(), 2.0 + 0.01 * rng.normal()});
        bx += b.points.back().motor;
        by += b.points.back().sensor;
    }
    b.mean_a = {ax / 50, ay / 50};
    b.mean_b = {bx / 50, by / 50};
    return b;
}

double dist(const Observation& a, const Observation& b) { return std::hypot(a.motor - b.motor, a.sensor - b.sensor); }

} // namespace

TEST_CASE("three distinct points with r = 3 are their own prototypes") {
    const std::vector<Observation> pts{{0.0, 1.0}, {0.5, 3.0}, {-0.4, 2.0}};
    const auto p = fit_prototypes(pts, 3, 1);
    CHECK(p.inertia == doctest::Approx(0.0).epsilon(1e-24));
    for (const auto& x : pts) {
        const auto& c = p.centers()[p.classify(x)];
        CHECK(c.motor == doctest::Approx(x.motor).epsilon(1e-12));
        CHECK(c.sensor == doctest::Approx(x.sensor).epsilon(1e-12));
    }
}

TEST_CASE("identical samples cannot support two prototypes") {
    const std::vector<Observation> pts(10, Observation{0.1, 2.0});
    try {
        fit_prototypes(pts, 2, 1);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::fewer_distinct_points_than_r);
    }
}

TEST_CASE("empty input is rejected") {
    try {
        fit_prototypes(std::vector<Observation>{}, 2, 1);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::empty_input);
    }
}

TEST_CASE("two separated blobs: centers land on the blob means") {
    const auto b = two_blobs(5);
    const auto p = fit_prototypes(b.points, 2, 7);
    REQUIRE(p.size() == 2);
    const auto& c0 = p.centers()[0];
    const auto& c1 = p.centers()[1];
    const double matched = std::min(std::max(dist(c0, b.mean_a), dist(c1, b.mean_b)),
                                    std::max(dist(c0, b.mean_b), dist(c1, b.mean_a)));
    CHECK(matched <= 0.02);

    const std::size_t a_center = dist(c0, b.mean_a) < dist(c1, b.mean_a) ? 0 : 1;
    std::size_t hits = 0;
    for (int i = 0; i < 50; ++i) hits += p.classify(b.points[i]) == a_center;
    CHECK(hits >= 50); // 99% of 50 rounds up to all of them
}

TEST_CASE("classify maps each prototype to itself and breaks ties low") {
    std::vector<Observation> pts;
    Rng rng(3);
    for (int i = 0; i < 400; ++i) pts.push_back({rng.uniform(), 4.0 * rng.uniform()});
    const auto p = fit_prototypes(pts, 20, 11);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.classify(p.centers()[i]) == i);

    // Centers 2 and 5 equidistant (in normalized space) from the query.
    std::vector<Observation> centers;
    for (int i = 0; i < 8; ++i) centers.push_back({10.0 + i, 0.0});
    centers[2] = {0.0, 1.0};
    centers[5] = {0.0, -1.0};
    const PrototypeSet tie(centers, AxisScaling{});
    CHECK(tie.classify(Observation{0.0, 0.0}) == 2);
}

TEST_CASE("fit is deterministic and keeps the best restart") {
    std::vector<Observation> pts;
    Rng rng(8);
    for (int i = 0; i < 2000; ++i) pts.push_back({rng.normal(), rng.uniform() * 6});
    const auto a = fit_prototypes(pts, 30, 4);
    const auto b = fit_prototypes(pts, 30, 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.centers()[i].motor == b.centers()[i].motor);
        CHECK(a.centers()[i].sensor == b.centers()[i].sensor);
    }
    REQUIRE(a.restart_inertias.size() == 10);
    for (double x : a.restart_inertias) CHECK(a.inertia <= x);
}

TEST_CASE("min-max scaling maps the sample box onto the unit square and back") {
    const std::vector<Observation> pts{{-0.5, 1.0}, {0.5, 7.0}, {0.0, 3.0}};
    const auto s = AxisScaling::fit(pts);
    const auto lo = s.apply(pts[0]);
    const auto hi = s.apply(pts[1]);
    CHECK(lo[0] == doctest::Approx(0.0));
    CHECK(lo[1] == doctest::Approx(0.0));
    CHECK(hi[0] == doctest::Approx(1.0));
    CHECK(hi[1] == doctest::Approx(1.0));
    const auto back = s.invert(s.apply(pts[2]));
    CHECK(back.motor == doctest::Approx(0.0));
    CHECK(back.sensor == doctest::Approx(3.0));
}

TEST_CASE("kmeans labels are consistent with the returned centers") {
    Rng rng(12);
    std::vector<double> pts;
    for (int i = 0; i < 600; ++i) {
        pts.push_back(rng.normal() + (i % 3) * 5.0);
        pts.push_back(rng.normal());
        pts.push_back(rng.normal() - (i % 3) * 5.0);
    }
    const auto km = kmeans(pts, 3, 3, 1);
    double inertia = 0.0;
    for (std::size_t i = 0; i < 600; ++i) {
        std::size_t best = 0;
        double best_d = INFINITY;
        for (std::size_t c = 0; c < 3; ++c) {
            double d = 0;
            for (std::size_t j = 0; j < 3; ++j) d += std::pow(pts[i * 3 + j] - km.centers[c * 3 + j], 2);
            if (d < best_d) best_d = d, best = c;
        }
        CHECK(km.labels[i] == best);
        inertia += best_d;
    }
    CHECK(km.inertia == doctest::Approx(inertia).epsilon(1e-9));
    CHECK(count_distinct_rows(pts, 3) == 600);
}
