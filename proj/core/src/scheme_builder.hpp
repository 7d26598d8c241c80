#pragma once

// Internal helpers shared by the GM-MMF and NW-PF solvers: both optimize in
// the exponential variables (eta_bar, t_bar) subject to the same family of
// log-sum-exp SINR constraints; they differ only in whether the SINR target
// is per cell or per user and in the objective.

#include <map>
#include <vector>

#include "mcpc/config.hpp"
#include "mcpc/convex.hpp"
#include "mcpc/sinr.hpp"
#include "mcpc/tensor.hpp"

namespace mcpc::detail {

constexpr double kEtaBarLower = -60.0; // eta below ~1e-26 is numerically zero

// The LogLog1pExp objective saturates exponentially fast for t_bar below
// log(eps) while the constraint slack keeps growing, so without a floor the
// barrier subproblem is unbounded along t_bar -> -inf. The floor sits far
// below any achievable SINR (e^-200 ~ 1e-87) and never binds at an optimum.
constexpr double kTBarLower = -200.0;

struct SinrProgram {
    ConvexProgram program;
    int L = 0;
    int K = 0;
    Direction dir = Direction::UL;
    std::vector<int> t_var; // per cell (size L) or per user (size L*K); -1 if absent

    int eta_var(int l, int k) const { return l * K + k; }
    int num_eta() const { return L * K; }
};

// Builds variables, box bounds, SINR constraints and (for DL) per-cell budget
// constraints. per_user_t selects the NW-PF shape; otherwise one target per
// enabled cell. Disabled cells keep their eta variables (they still
// interfere) but contribute no constraints or targets.
SinrProgram build_sinr_program(Direction dir, const FadingTensor& beta,
                               const ChannelStats& gamma, const NetworkConfig& cfg,
                               bool per_user_t,
                               const std::vector<char>& cell_enabled);

// Strictly feasible start: uniform power 1/(2LK) and targets at half the
// SINR that allocation achieves.
std::vector<double> heuristic_start(const SinrProgram& sp, const FadingTensor& beta,
                                    const ChannelStats& gamma,
                                    const NetworkConfig& cfg);

// Randomized strictly feasible start for the re-verification passes.
std::vector<double> randomized_start(const SinrProgram& sp, const FadingTensor& beta,
                                     const ChannelStats& gamma,
                                     const NetworkConfig& cfg, std::uint64_t seed);

// Power allocations worth evaluating exactly: the raw exponentiated solution
// plus a variant with near-active power limits snapped onto the boundary.
std::vector<PowerAllocation> candidate_allocations(const SinrProgram& sp,
                                                   const std::vector<double>& x);

void check_shapes(const FadingTensor& beta, const ChannelStats& gamma,
                  const NetworkConfig& cfg, const char* who);

}  // namespace mcpc::detail
