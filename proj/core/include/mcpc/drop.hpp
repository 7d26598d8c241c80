#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/geometry.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

// One realization of user positions and shadow fading. Immutable after
// generation; everything downstream is a deterministic function of it.
struct UserDrop {
    std::vector<Point> bs_positions;   // L entries
    std::vector<Point> user_positions; // L*K entries, index l*K + k
    Tensor3 shadow_db;                 // (L, L, K): F[l][l'][k], dB
    std::uint64_t seed = 0;

    const Point& user(int l, int k, int users_per_cell) const {
        return user_positions[static_cast<std::size_t>(l) * users_per_cell + k];
    }
};

// Large-scale fading in dB for a single link:
//   intercept - coeff * log10(d / 1 m) + shadow.
// Throws InputError when d <= 0 or any argument is non-finite.
double pathloss_db(double d_m, double shadow_db, const NetworkConfig& cfg);

// Linear gain with the minimum-distance clamp applied.
double beta_from_distance(double d_m, double shadow_db, const NetworkConfig& cfg);

// Draws one user drop: users uniform in their BS's square sub-area, shadow
// terms i.i.d. N(0, shadow_std^2) dB per (BS, user) link. Pure function of
// (cfg, seed). Requires num_cells to be a perfect square.
std::pair<UserDrop, FadingTensor> generate_drop(const NetworkConfig& cfg,
                                                std::uint64_t seed);

// CSV with columns (l, l_prime, k, d_m, shadow_db, beta_linear, gamma_linear),
// one row per (BS, user) link, 12 significant digits, LF line endings.
void write_drop_csv(std::ostream& os, const NetworkConfig& cfg,
                    const UserDrop& drop, const FadingTensor& beta,
                    const ChannelStats& gamma);

}  // namespace mcpc
