#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mcpc/channel.hpp"
#include "mcpc/drop.hpp"
#include "mcpc/errors.hpp"

using namespace mcpc;

namespace {

NetworkConfig base_cfg(int L, int K) {
    NetworkConfig cfg;
    cfg.num_cells = L;
    cfg.users_per_cell = K;
    cfg.antennas = 4;
    cfg.area_side = 600.0;
    cfg.pilot_length = K;
    cfg.validate();
    return cfg;
}

}  // namespace

TEST_CASE("pathloss at reference distances") {
    auto cfg = base_cfg(1, 1);
    CHECK(pathloss_db(1.0, 0.0, cfg) == doctest::Approx(-35.0));
    CHECK(pathloss_db(100.0, 0.0, cfg) == doctest::Approx(-108.4));
    CHECK(pathloss_db(100.0, 8.0, cfg) == doctest::Approx(-100.4));
    CHECK_THROWS_AS(pathloss_db(0.0, 0.0, cfg), InputError);
    CHECK_THROWS_AS(pathloss_db(-3.0, 0.0, cfg), InputError);
}

TEST_CASE("pathloss strictly decreasing in distance") {
    auto cfg = base_cfg(1, 1);
    double prev = pathloss_db(1.0, 0.0, cfg);
    for (double d = 2.0; d < 2000.0; d *= 1.5) {
        double v = pathloss_db(d, 0.0, cfg);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("minimum distance clamp in linear gain") {
    auto cfg = base_cfg(1, 1);
    // min_distance = 10 m: anything closer behaves like 10 m.
    double at_clamp = beta_from_distance(10.0, 0.0, cfg);
    CHECK(beta_from_distance(0.001, 0.0, cfg) == doctest::Approx(at_clamp));
    CHECK(at_clamp == doctest::Approx(std::pow(10.0, (-35.0 - 36.7) / 10.0)));
}

TEST_CASE("drop with tiny area puts every user at the clamp distance") {
    auto cfg = base_cfg(1, 2);
    cfg.area_side = 1e-3;
    cfg.shadow_std = 0.0;
    cfg.validate();
    auto [drop, beta] = generate_drop(cfg, 11);
    double expected = std::pow(10.0, (-35.0 - 36.7) / 10.0);
    for (int k = 0; k < 2; ++k)
        CHECK(beta.beta(0, 0, k) == doctest::Approx(expected));
}

TEST_CASE("generate_drop is a pure function of (cfg, seed)") {
    auto cfg = base_cfg(4, 2);
    auto [d1, b1] = generate_drop(cfg, 77);
    auto [d2, b2] = generate_drop(cfg, 77);
    auto [d3, b3] = generate_drop(cfg, 78);
    CHECK(b1.beta.data() == b2.beta.data()); // bit-identical
    CHECK(d1.user_positions[0].x == d2.user_positions[0].x);
    CHECK(b1.beta.data() != b3.beta.data());
}

TEST_CASE("drop shapes and positivity at L=9, K=2") {
    auto cfg = base_cfg(9, 2);
    auto [drop, beta] = generate_drop(cfg, 5);
    CHECK(beta.beta.dim0() == 9);
    CHECK(beta.beta.dim1() == 9);
    CHECK(beta.beta.dim2() == 2);
    for (double v : beta.beta.data()) {
        CHECK(v > 0.0);
        CHECK(std::isfinite(v));
    }
    for (const auto& p : drop.user_positions) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < cfg.area_side);
        CHECK(p.y >= 0.0);
        CHECK(p.y < cfg.area_side);
    }
}

TEST_CASE("non-square cell count is a configuration error") {
    NetworkConfig cfg = base_cfg(4, 1);
    cfg.num_cells = 3;
    CHECK_THROWS_AS(generate_drop(cfg, 1), ConfigError);
}

TEST_CASE("drop CSV is stable and carries the documented columns") {
    auto cfg = base_cfg(4, 1);
    auto [drop, beta] = generate_drop(cfg, 3);
    auto gamma = compute_gamma(beta, cfg);
    std::ostringstream a, b;
    write_drop_csv(a, cfg, drop, beta, gamma);
    write_drop_csv(b, cfg, drop, beta, gamma);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 51) ==
          "l,l_prime,k,d_m,shadow_db,beta_linear,gamma_linear\n");
    // one row per (l, l', k) plus header
    int lines = 0;
    for (char c : a.str())
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 4 * 4 * 1);
}
