#include "mcpc/config.hpp"

#include <algorithm>
#include <cmath>

namespace mcpc {

std::vector<std::vector<int>> NetworkConfig::resolved_pilot_sets() const {
    if (!pilot_reuse_sets.empty()) return pilot_reuse_sets;
    std::vector<int> all(num_cells);
    for (int l = 0; l < num_cells; ++l) all[l] = l;
    return {all};
}

std::vector<int> NetworkConfig::pilot_set_of_cell() const {
    std::vector<int> set_of(num_cells, -1);
    auto sets = resolved_pilot_sets();
    for (std::size_t s = 0; s < sets.size(); ++s)
        for (int l : sets[s]) {
            if (l < 0 || l >= num_cells)
                throw ConfigError("pilot_reuse_sets: cell index " + std::to_string(l) +
                                  " out of range [0, " + std::to_string(num_cells) + ")");
            if (set_of[l] != -1)
                throw ConfigError("pilot_reuse_sets: cell " + std::to_string(l) +
                                  " appears in more than one set");
            set_of[l] = static_cast<int>(s);
        }
    for (int l = 0; l < num_cells; ++l)
        if (set_of[l] == -1)
            throw ConfigError("pilot_reuse_sets: cell " + std::to_string(l) +
                              " is missing from the partition");
    return set_of;
}

void NetworkConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(num_cells >= 1, "num_cells must be >= 1");
    require(users_per_cell >= 1, "users_per_cell must be >= 1");
    require(antennas >= 1, "antennas must be >= 1");
    require(area_side > 0.0 && std::isfinite(area_side), "area_side must be > 0");
    require(shadow_std >= 0.0, "shadow_std must be >= 0");
    require(min_distance > 0.0, "min_distance must be > 0");
    require(ul_max_power > 0.0, "ul_max_power must be > 0");
    require(dl_max_power > 0.0, "dl_max_power must be > 0");
    require(pilot_power >= 0.0, "pilot_power must be >= 0 (0 = ul_max_power)");
    require(std::isfinite(noise_power), "noise_power must be finite");
    require(coherence_block >= 1, "coherence_block must be >= 1");
    require(pilot_length >= 0, "pilot_length must be >= 0 (0 = users_per_cell)");
    require(tau_p() <= tau_c(), "pilot_length must not exceed coherence_block");
    require(epsilon > 0.0, "epsilon must be > 0");
    require(bandwidth > 0.0, "bandwidth must be > 0");
    require(rng == "mt19937_64", "rng: only 'mt19937_64' is supported");
    require(rho_ul() > 0.0 && std::isfinite(rho_ul()), "derived rho_ul must be positive and finite");
    require(rho_dl() > 0.0 && std::isfinite(rho_dl()), "derived rho_dl must be positive and finite");
    pilot_set_of_cell(); // throws when the partition is malformed
}

}  // namespace mcpc
