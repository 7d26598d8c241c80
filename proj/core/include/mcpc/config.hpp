#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mcpc/errors.hpp"

namespace mcpc {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// Scenario parameters. Powers are stored in the units they are quoted in
// (mW uplink, W downlink, dBm noise); the solvers only ever see the
// noise-normalized linear ratios rho_ul() / rho_dl().
struct NetworkConfig {
    int num_cells = 9;         // L
    int users_per_cell = 2;    // K
    int antennas = 100;        // M
    double area_side = 1000.0; // meters, square deployment area

    double pathloss_intercept = -35.0;      // dB at 1 m
    double pathloss_exponent_coeff = 36.7;  // dB per decade of distance
    double shadow_std = 8.0;                // dB
    double min_distance = 10.0;             // m, BS-user distance clamp

    double noise_power = -94.0;  // dBm
    double ul_max_power = 200.0; // mW per user
    double dl_max_power = 40.0;  // W per BS
    double pilot_power = 0.0;    // mW; 0 means "same as ul_max_power"

    int coherence_block = 200; // tau_c, samples
    int pilot_length = 0;      // tau_p, samples; 0 means "users_per_cell"
    double epsilon = 1e-3;     // GM utility control parameter

    double bandwidth = 20e6; // Hz, metadata for bits/s conversion only

    // Partition of {0..L-1} into pilot-sharing groups; empty means a single
    // group containing every cell (reuse factor one).
    std::vector<std::vector<int>> pilot_reuse_sets;

    std::string rng = "mt19937_64"; // the only supported generator

    int tau_p() const { return pilot_length > 0 ? pilot_length : users_per_cell; }
    int tau_c() const { return coherence_block; }
    double prelog() const {
        return 1.0 - static_cast<double>(tau_p()) / static_cast<double>(tau_c());
    }

    double noise_mw() const { return dbm_to_mw(noise_power); }
    double rho_ul() const { return ul_max_power / noise_mw(); }
    double rho_dl() const { return dl_max_power * 1000.0 / noise_mw(); }
    double rho_pilot() const {
        return (pilot_power > 0.0 ? pilot_power : ul_max_power) / noise_mw();
    }

    // Resolved partition: always non-empty, always a partition of {0..L-1}.
    std::vector<std::vector<int>> resolved_pilot_sets() const;
    // set_of[l] = index into resolved_pilot_sets() of the group holding l.
    std::vector<int> pilot_set_of_cell() const;

    // Throws ConfigError on any violated invariant.
    void validate() const;
};

}  // namespace mcpc
