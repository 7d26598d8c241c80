#include "mcpc/channel.hpp"

#include "mcpc/errors.hpp"

namespace mcpc {

ChannelStats compute_gamma(const FadingTensor& beta, const NetworkConfig& cfg) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    if (beta.beta.dim0() != L || beta.beta.dim1() != L || beta.beta.dim2() != K)
        throw InputError("compute_gamma: fading tensor shape does not match config");

    const double tp_rho = static_cast<double>(cfg.tau_p()) * cfg.rho_pilot();
    if (!(tp_rho > 0.0))
        throw InputError("compute_gamma: tau_p * rho_pilot must be positive");

    auto sets = cfg.resolved_pilot_sets();
    auto set_of = cfg.pilot_set_of_cell();

    ChannelStats stats{Tensor3(L, L, K)};
    for (int l = 0; l < L; ++l) {
        const auto& copilots = sets[set_of[l]];
        for (int k = 0; k < K; ++k) {
            // Pilot-sharing cells reuse pilot k for their k-th user, so the
            // normalization sums beta over the copilot set at fixed k.
            double pilot_sum = 0.0;
            for (int lpp : copilots) pilot_sum += beta.beta(l, lpp, k);
            double denom = 1.0 + tp_rho * pilot_sum;
            for (int lp : copilots) {
                double b = beta.beta(l, lp, k);
                stats.gamma(l, lp, k) = tp_rho * b * b / denom;
            }
        }
    }
    return stats;
}

}  // namespace mcpc
