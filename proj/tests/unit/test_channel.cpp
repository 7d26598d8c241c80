#include <doctest.h>

#include "mcpc/channel.hpp"
#include "mcpc/drop.hpp"
#include "mcpc/errors.hpp"

using namespace mcpc;

namespace {

// Config with tau_p * rho_pilot == 1 for hand evaluation.
NetworkConfig unit_pilot_cfg(int L, int K) {
    NetworkConfig cfg;
    cfg.num_cells = L;
    cfg.users_per_cell = K;
    cfg.antennas = 2;
    cfg.noise_power = 0.0;   // 1 mW
    cfg.ul_max_power = 1.0;  // rho_ul = 1
    cfg.dl_max_power = 0.001;
    cfg.pilot_length = 1;
    cfg.coherence_block = 200;
    cfg.validate();
    return cfg;
}

}  // namespace

TEST_CASE("gamma hand values: single cell and two copilot cells") {
    {
        auto cfg = unit_pilot_cfg(1, 1);
        FadingTensor beta{Tensor3(1, 1, 1, 1.0)};
        auto g = compute_gamma(beta, cfg);
        CHECK(g.gamma(0, 0, 0) == doctest::Approx(0.5)); // 1/(1+1)
    }
    {
        auto cfg = unit_pilot_cfg(2, 1);
        FadingTensor beta{Tensor3(2, 2, 1, 1.0)};
        auto g = compute_gamma(beta, cfg);
        for (int l = 0; l < 2; ++l)
            for (int lp = 0; lp < 2; ++lp)
                CHECK(g.gamma(l, lp, 0) == doctest::Approx(1.0 / 3.0)); // 1/(1+2)
    }
}

TEST_CASE("zero fading gives zero estimate variance") {
    auto cfg = unit_pilot_cfg(1, 1);
    FadingTensor beta{Tensor3(1, 1, 1, 0.0)};
    auto g = compute_gamma(beta, cfg);
    CHECK(g.gamma(0, 0, 0) == 0.0);
}

TEST_CASE("gamma never exceeds beta on random drops") {
    NetworkConfig cfg;
    cfg.num_cells = 9;
    cfg.users_per_cell = 2;
    cfg.pilot_length = 2;
    cfg.validate();
    for (int seed = 1; seed <= 5; ++seed) {
        auto [drop, beta] = generate_drop(cfg, seed);
        auto g = compute_gamma(beta, cfg);
        for (int l = 0; l < 9; ++l)
            for (int lp = 0; lp < 9; ++lp)
                for (int k = 0; k < 2; ++k) {
                    CHECK(g.gamma(l, lp, k) >= 0.0);
                    CHECK(g.gamma(l, lp, k) <= beta.beta(l, lp, k) * (1 + 1e-12));
                }
    }
}

TEST_CASE("own-cell gamma is monotone in the pilot power ratio") {
    NetworkConfig cfg;
    cfg.num_cells = 1;
    cfg.users_per_cell = 1;
    cfg.pilot_length = 1;
    cfg.validate();
    auto [drop, beta] = generate_drop(cfg, 9);
    double prev = -1.0;
    for (double p = 1.0; p <= 1e4; p *= 10.0) {
        NetworkConfig c = cfg;
        c.ul_max_power = p;
        auto g = compute_gamma(beta, c);
        CHECK(g.gamma(0, 0, 0) >= prev);
        prev = g.gamma(0, 0, 0);
    }
}

TEST_CASE("gamma is zero outside the pilot-sharing set") {
    NetworkConfig cfg;
    cfg.num_cells = 4;
    cfg.users_per_cell = 1;
    cfg.pilot_length = 1;
    cfg.pilot_reuse_sets = {{0, 1}, {2, 3}};
    cfg.validate();
    auto [drop, beta] = generate_drop(cfg, 2);
    auto g = compute_gamma(beta, cfg);
    for (int l = 0; l < 4; ++l)
        for (int lp = 0; lp < 4; ++lp) {
            bool same_set = (l < 2) == (lp < 2);
            if (same_set)
                CHECK(g.gamma(l, lp, 0) > 0.0);
            else
                CHECK(g.gamma(l, lp, 0) == 0.0);
        }
}

TEST_CASE("shape mismatch is an input error") {
    auto cfg = unit_pilot_cfg(2, 1);
    FadingTensor beta{Tensor3(1, 1, 1, 1.0)};
    CHECK_THROWS_AS(compute_gamma(beta, cfg), InputError);
}
