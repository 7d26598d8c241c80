#pragma once

#include "mcpc/config.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc {

// MMSE estimate variances from large-scale fading:
//   gamma[l][l'][k] = tau_p*rho_p*beta[l][l'][k]^2
//                     / (1 + tau_p*rho_p * sum_{l'' copilot of l} beta[l][l''][k])
// for l' in the pilot set of l, zero otherwise. rho_p is the pilot-power
// ratio (defaults to the uplink data ratio).
ChannelStats compute_gamma(const FadingTensor& beta, const NetworkConfig& cfg);

}  // namespace mcpc
