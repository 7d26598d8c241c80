#pragma once

// Single definition of the config schema: every scalar field name in
// declaration order. pilot_reuse_sets needs structured handling and is dealt
// with by each serializer directly.

#include "mcpc/config.hpp"

namespace mcpc::detail {

template <class Cfg, class Visitor>
void visit_config_fields(Cfg& c, Visitor&& v) {
    v("num_cells", c.num_cells);
    v("users_per_cell", c.users_per_cell);
    v("antennas", c.antennas);
    v("area_side", c.area_side);
    v("pathloss_intercept", c.pathloss_intercept);
    v("pathloss_exponent_coeff", c.pathloss_exponent_coeff);
    v("shadow_std", c.shadow_std);
    v("min_distance", c.min_distance);
    v("noise_power", c.noise_power);
    v("ul_max_power", c.ul_max_power);
    v("dl_max_power", c.dl_max_power);
    v("pilot_power", c.pilot_power);
    v("coherence_block", c.coherence_block);
    v("pilot_length", c.pilot_length);
    v("epsilon", c.epsilon);
    v("bandwidth", c.bandwidth);
    v("rng", c.rng);
}

}  // namespace mcpc::detail
