#include "mcpc/drop.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "mcpc/rng.hpp"

namespace mcpc {

double pathloss_db(double d_m, double shadow_db, const NetworkConfig& cfg) {
    if (!std::isfinite(d_m) || !std::isfinite(shadow_db))
        throw InputError("pathloss_db: non-finite input");
    if (d_m <= 0.0)
        throw InputError("pathloss_db: distance must be > 0");
    return cfg.pathloss_intercept - cfg.pathloss_exponent_coeff * std::log10(d_m) +
           shadow_db;
}

double beta_from_distance(double d_m, double shadow_db, const NetworkConfig& cfg) {
    double d = std::max(d_m, cfg.min_distance);
    return db_to_linear(pathloss_db(d, shadow_db, cfg));
}

std::pair<UserDrop, FadingTensor> generate_drop(const NetworkConfig& cfg,
                                                std::uint64_t seed) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    const int n = perfect_square_root(L);
    if (n <= 0)
        throw ConfigError("generate_drop: num_cells must be a perfect square, got " +
                          std::to_string(L));

    UserDrop drop;
    drop.seed = seed;
    drop.bs_positions = grid_bs_positions(L, cfg.area_side);
    drop.user_positions.resize(static_cast<std::size_t>(L) * K);
    drop.shadow_db = Tensor3(L, L, K);

    Rng rng(seed);
    const double cell = cfg.area_side / n;
    // Draw order is part of the determinism contract: positions first
    // (cell-major), then shadow terms (BS-major).
    for (int lp = 0; lp < L; ++lp) {
        double x0 = (lp / n) * cell;
        double y0 = (lp % n) * cell;
        for (int k = 0; k < K; ++k) {
            drop.user_positions[static_cast<std::size_t>(lp) * K + k] = {
                x0 + rng.uniform() * cell, y0 + rng.uniform() * cell};
        }
    }
    if (cfg.shadow_std > 0.0) {
        for (int l = 0; l < L; ++l)
            for (int lp = 0; lp < L; ++lp)
                for (int k = 0; k < K; ++k)
                    drop.shadow_db(l, lp, k) = rng.normal(0.0, cfg.shadow_std);
    }

    FadingTensor fading{Tensor3(L, L, K)};
    for (int l = 0; l < L; ++l)
        for (int lp = 0; lp < L; ++lp)
            for (int k = 0; k < K; ++k) {
                double d = wraparound_distance(drop.bs_positions[l],
                                               drop.user(lp, k, K), cfg.area_side);
                fading.beta(l, lp, k) =
                    beta_from_distance(d, drop.shadow_db(l, lp, k), cfg);
            }
    return {std::move(drop), std::move(fading)};
}

void write_drop_csv(std::ostream& os, const NetworkConfig& cfg,
                    const UserDrop& drop, const FadingTensor& beta,
                    const ChannelStats& gamma) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    os << "l,l_prime,k,d_m,shadow_db,beta_linear,gamma_linear\n";
    char buf[256];
    for (int l = 0; l < L; ++l)
        for (int lp = 0; lp < L; ++lp)
            for (int k = 0; k < K; ++k) {
                double d = wraparound_distance(drop.bs_positions[l],
                                               drop.user(lp, k, K), cfg.area_side);
                std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.12g,%.12g,%.12g,%.12g\n",
                              l, lp, k, d, drop.shadow_db(l, lp, k),
                              beta.beta(l, lp, k), gamma.gamma(l, lp, k));
                os << buf;
            }
}

}  // namespace mcpc
