#include <doctest.h>

#include <cmath>
#include <set>

#include "smc/rng.hpp"

using smc::Rng;

TEST_CASE("same seed gives the same stream") {
    Rng a(7), b(7);
    for (int i = 0; i < 1000; ++i) CHECK(a() == b());
}

TEST_CASE("seed expansion matches splitmix64's published first output") {
    std::uint64_t s = 0;
    CHECK(smc::splitmix64(s) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("derived substreams differ from each other and from the master") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t master : {0ULL, 1ULL, 42ULL})
        for (std::uint64_t stream = 0; stream < 16; ++stream) seen.insert(smc::derive_seed(master, stream));
    CHECK(seen.size() == 48);
    CHECK(smc::derive_seed(42, 1) == smc::derive_seed(42, 1));
}

TEST_CASE("uniform stays in [0, 1) and normal has unit moments") {
    Rng r(123);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double z = r.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("uniform_index covers its range evenly") {
    Rng r(5);
    int counts[7] = {};
    for (int i = 0; i < 70000; ++i) ++counts[r.uniform_index(7)];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}
