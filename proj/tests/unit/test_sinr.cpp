#include <doctest.h>

#include <cmath>

#include "mcpc/channel.hpp"
#include "mcpc/drop.hpp"
#include "mcpc/errors.hpp"
#include "mcpc/rng.hpp"
#include "mcpc/sinr.hpp"

#include "oracles.hpp"

using namespace mcpc;

namespace {

NetworkConfig tiny_cfg(int L, int K, int M, double rho_ul, double rho_dl,
                       int tau_p) {
    NetworkConfig cfg;
    cfg.num_cells = L;
    cfg.users_per_cell = K;
    cfg.antennas = M;
    cfg.noise_power = 0.0; // 1 mW
    cfg.ul_max_power = rho_ul;
    cfg.dl_max_power = rho_dl / 1000.0;
    cfg.pilot_length = tau_p;
    cfg.coherence_block = 200;
    cfg.validate();
    return cfg;
}

}  // namespace

TEST_CASE("UL SINR hand values on the single-user instance") {
    auto cfg = tiny_cfg(1, 1, 2, 1.0, 1.0, 1);
    FadingTensor beta{Tensor3(1, 1, 1, 1.0)};
    auto gamma = compute_gamma(beta, cfg); // 0.5
    CHECK(gamma.gamma(0, 0, 0) == doctest::Approx(0.5));

    auto s1 = ul_sinr(beta, gamma, {{1.0}, Direction::UL}, cfg);
    CHECK(s1.sinr[0] == doctest::Approx(0.5));
    auto s2 = ul_sinr(beta, gamma, {{0.5}, Direction::UL}, cfg);
    CHECK(s2.sinr[0] == doctest::Approx(1.0 / 3.0));
    auto s0 = ul_sinr(beta, gamma, {{0.0}, Direction::UL}, cfg);
    CHECK(s0.sinr[0] == 0.0);
    CHECK(s0.se[0] == 0.0);
}

TEST_CASE("DL SINR hand values") {
    {
        auto cfg = tiny_cfg(1, 1, 2, 1.0, 1.0, 1);
        FadingTensor beta{Tensor3(1, 1, 1, 1.0)};
        auto gamma = compute_gamma(beta, cfg);
        auto s = dl_sinr(beta, gamma, {{1.0}, Direction::DL}, cfg);
        CHECK(s.sinr[0] == doctest::Approx(0.5));
    }
    {
        auto cfg = tiny_cfg(1, 2, 2, 1.0, 1.0, 2);
        FadingTensor beta{Tensor3(1, 1, 2, 1.0)};
        auto gamma = compute_gamma(beta, cfg);
        CHECK(gamma.gamma(0, 0, 0) == doctest::Approx(2.0 / 3.0));
        auto s = dl_sinr(beta, gamma, {{0.5, 0.5}, Direction::DL}, cfg);
        CHECK(s.sinr[0] == doctest::Approx(1.0 / 3.0));
        CHECK(s.sinr[1] == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("se_from_sinr values and validation") {
    NetworkConfig cfg;
    cfg.pilot_length = 2;
    cfg.coherence_block = 200;
    cfg.num_cells = 1;
    cfg.users_per_cell = 2;
    cfg.validate();
    CHECK(se_from_sinr(0.0, cfg) == 0.0);
    CHECK(se_from_sinr(1.0, cfg) == doctest::Approx(0.99));
    CHECK(se_from_sinr(3.0, cfg) == doctest::Approx(1.98));
    CHECK_THROWS_AS(se_from_sinr(-0.1, cfg), InputError);
}

TEST_CASE("se_from_sinr is increasing and concave (finite differences)") {
    NetworkConfig cfg;
    cfg.pilot_length = 1;
    cfg.users_per_cell = 1;
    cfg.validate();
    double h = 1e-3;
    for (double s = 0.1; s < 100.0; s *= 1.7) {
        double f0 = se_from_sinr(s - h, cfg);
        double f1 = se_from_sinr(s, cfg);
        double f2 = se_from_sinr(s + h, cfg);
        CHECK(f2 > f0);
        CHECK(f2 - 2 * f1 + f0 <= 1e-12);
    }
}

TEST_CASE("matches the two-sum oracle including partitioned pilot sets") {
    NetworkConfig cfg;
    cfg.num_cells = 4;
    cfg.users_per_cell = 2;
    cfg.antennas = 8;
    cfg.noise_power = 0.0;
    cfg.ul_max_power = 5.0;
    cfg.dl_max_power = 0.01;
    cfg.pilot_length = 2;
    cfg.pilot_reuse_sets = {{0, 2}, {1, 3}};
    cfg.validate();
    auto [drop, beta] = generate_drop(cfg, 31);
    auto gamma = compute_gamma(beta, cfg);

    Rng rng(99);
    std::vector<double> eta(8);
    for (auto& v : eta) v = rng.uniform(0.0, 0.4);

    auto ul = ul_sinr(beta, gamma, {eta, Direction::UL}, cfg);
    auto dl = dl_sinr(beta, gamma, {eta, Direction::DL}, cfg);
    for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 2; ++k) {
            CHECK(ul.sinr[l * 2 + k] ==
                  doctest::Approx(test::oracle_ul_sinr(beta, gamma, eta, cfg, l, k))
                      .epsilon(1e-12));
            CHECK(dl.sinr[l * 2 + k] ==
                  doctest::Approx(test::oracle_dl_sinr(beta, gamma, eta, cfg, l, k))
                      .epsilon(1e-12));
        }
}

TEST_CASE("UL SINR monotonicity in own and cross powers") {
    auto cfg = test::small_two_cell_config();
    auto beta = test::random_two_cell_fading(5);
    auto gamma = compute_gamma(beta, cfg);
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> eta{rng.uniform(0.05, 0.9), rng.uniform(0.05, 0.9)};
        auto base = ul_sinr(beta, gamma, {eta, Direction::UL}, cfg);
        auto up_own = eta;
        up_own[0] = std::min(1.0, eta[0] * 1.1);
        auto s_own = ul_sinr(beta, gamma, {up_own, Direction::UL}, cfg);
        CHECK(s_own.sinr[0] > base.sinr[0]);
        auto up_other = eta;
        up_other[1] = std::min(1.0, eta[1] * 1.1);
        auto s_other = ul_sinr(beta, gamma, {up_other, Direction::UL}, cfg);
        CHECK(s_other.sinr[0] <= base.sinr[0] + 1e-15);
    }
}

TEST_CASE("noise rescaling leaves UL SINR unchanged") {
    auto cfg = test::small_two_cell_config();
    auto beta = test::random_two_cell_fading(8);
    auto gamma = compute_gamma(beta, cfg);
    std::vector<double> eta{0.7, 0.4};
    auto base = ul_sinr(beta, gamma, {eta, Direction::UL}, cfg);

    const double c = 37.5; // scale gains by c, power ratio down by c
    NetworkConfig scaled = cfg;
    scaled.ul_max_power = cfg.ul_max_power / c;
    FadingTensor beta_c = beta;
    ChannelStats gamma_c = gamma;
    for (auto& v : beta_c.beta.data()) v *= c;
    for (auto& v : gamma_c.gamma.data()) v *= c;
    auto s = ul_sinr(beta_c, gamma_c, {eta, Direction::UL}, scaled);
    CHECK(s.sinr[0] == doctest::Approx(base.sinr[0]).epsilon(1e-12));
    CHECK(s.sinr[1] == doctest::Approx(base.sinr[1]).epsilon(1e-12));
}

TEST_CASE("allocation validation errors") {
    auto cfg = tiny_cfg(1, 2, 2, 1.0, 1.0, 2);
    FadingTensor beta{Tensor3(1, 1, 2, 1.0)};
    auto gamma = compute_gamma(beta, cfg);
    CHECK_THROWS_AS(ul_sinr(beta, gamma, {{0.5}, Direction::UL}, cfg), InputError);
    CHECK_THROWS_AS(ul_sinr(beta, gamma, {{0.5, 1.5}, Direction::UL}, cfg), InputError);
    CHECK_THROWS_AS(dl_sinr(beta, gamma, {{0.7, 0.7}, Direction::DL}, cfg), InputError);
    CHECK_THROWS_AS(ul_sinr(beta, gamma, {{0.5, 0.5}, Direction::DL}, cfg), InputError);
}
