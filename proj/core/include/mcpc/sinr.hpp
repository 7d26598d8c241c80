#pragma once

#include <string>
#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

enum class Direction { UL, DL };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// Power-control coefficients eta[l*K + k]. UL: each in [0,1].
// DL: nonnegative with sum over k at most 1 in every cell.
struct PowerAllocation {
    std::vector<double> eta; // L*K entries
    Direction direction = Direction::UL;

    double at(int l, int k, int users_per_cell) const {
        return eta[static_cast<std::size_t>(l) * users_per_cell + k];
    }
    // Throws InputError on shape or constraint violations (small tolerance
    // on the upper bounds for round-off).
    void validate(const NetworkConfig& cfg) const;
};

struct SinrSeVector {
    std::vector<double> sinr;              // L*K, linear
    std::vector<double> se;                // L*K, bits/s/Hz
    std::vector<double> per_cell_min_sinr; // L, linear

    double min_sinr() const;
    double sum_se() const;
};

// Effective UL SINR with maximum-ratio processing; closed form in the
// large-scale quantities. The two interference sums over copilot and
// non-copilot cells are structurally identical and evaluated as one sum
// over every cell.
SinrSeVector ul_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                     const PowerAllocation& eta, const NetworkConfig& cfg);

// DL counterpart; interference scales with each BS's total transmit power.
SinrSeVector dl_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                     const PowerAllocation& eta, const NetworkConfig& cfg);

// Dispatches on eta.direction.
SinrSeVector compute_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                          const PowerAllocation& eta, const NetworkConfig& cfg);

// (1 - tau_p/tau_c) * log2(1 + sinr). Throws InputError for sinr < 0.
double se_from_sinr(double sinr, const NetworkConfig& cfg);

}  // namespace mcpc
