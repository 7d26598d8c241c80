#include <doctest.h>

#include <cmath>

#include "mcpc/rng.hpp"

using namespace mcpc;

TEST_CASE("mt19937_64 reference output pins cross-platform determinism") {
    // The C++ standard fixes the 10000th draw of a default-seeded
    // mt19937_64; if this holds, raw streams are bit-identical everywhere.
    std::mt19937_64 gen(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = gen();
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("uniform stays in [0,1) and is seed-deterministic") {
    Rng a(123), b(123), c(124);
    bool all_equal_c = true;
    for (int i = 0; i < 1000; ++i) {
        double x = a.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == b.uniform());
        if (x != c.uniform()) all_equal_c = false;
    }
    CHECK_FALSE(all_equal_c);
}

TEST_CASE("normal moments are roughly standard") {
    Rng rng(7);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}
