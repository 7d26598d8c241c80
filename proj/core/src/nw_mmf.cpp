#include "mcpc/nw_mmf.hpp"

#include <algorithm>
#include <cmath>

#include "mcpc/errors.hpp"

namespace mcpc {

namespace {

void check_shapes(const FadingTensor& beta, const ChannelStats& gamma,
                  const NetworkConfig& cfg) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    if (beta.beta.dim0() != L || beta.beta.dim1() != L || beta.beta.dim2() != K)
        throw InputError("nw_mmf: fading tensor shape does not match config");
    if (!gamma.gamma.same_shape(beta.beta))
        throw InputError("nw_mmf: gamma shape does not match beta");
}

// Evaluates one step of the interference map eta -> t * I(eta) / (M rho
// gamma_own) for every user; I is the SINR denominator of the respective
// direction. Affine and componentwise non-decreasing in eta.
struct InterferenceMap {
    const FadingTensor& beta;
    const ChannelStats& gamma;
    const NetworkConfig& cfg;
    Direction dir;
    double t;
    double rho;
    std::vector<std::vector<int>> sets;
    std::vector<int> set_of;

    InterferenceMap(double t_, const FadingTensor& b, const ChannelStats& g,
                    const NetworkConfig& c, Direction d)
        : beta(b), gamma(g), cfg(c), dir(d), t(t_),
          rho(d == Direction::UL ? c.rho_ul() : c.rho_dl()),
          sets(c.resolved_pilot_sets()), set_of(c.pilot_set_of_cell()) {}

    void apply(const std::vector<double>& eta, std::vector<double>& out) const {
        const int L = cfg.num_cells;
        const int K = cfg.users_per_cell;
        const int M = cfg.antennas;
        std::vector<double> cell_power;
        if (dir == Direction::DL) {
            cell_power.assign(L, 0.0);
            for (int lp = 0; lp < L; ++lp)
                for (int kp = 0; kp < K; ++kp) cell_power[lp] += eta[lp * K + kp];
        }
        for (int l = 0; l < L; ++l) {
            const auto& copilots = sets[set_of[l]];
            double beta_dot = 0.0;
            if (dir == Direction::UL) {
                for (int lp = 0; lp < L; ++lp)
                    for (int kp = 0; kp < K; ++kp)
                        beta_dot += beta.beta(l, lp, kp) * eta[lp * K + kp];
            }
            for (int k = 0; k < K; ++k) {
                double interf = 1.0;
                double contamination = 0.0;
                if (dir == Direction::UL) {
                    interf += rho * beta_dot;
                    for (int lp : copilots)
                        if (lp != l)
                            contamination += gamma.gamma(l, lp, k) * eta[lp * K + k];
                } else {
                    double received = 0.0;
                    for (int lp = 0; lp < L; ++lp)
                        received += beta.beta(lp, l, k) * cell_power[lp];
                    interf += rho * received;
                    for (int lp : copilots)
                        if (lp != l)
                            contamination += gamma.gamma(lp, l, k) * eta[lp * K + k];
                }
                interf += M * rho * contamination;
                out[l * K + k] = t * interf / (M * rho * gamma.gamma(l, l, k));
            }
        }
    }

    bool within_caps(const std::vector<double>& eta) const {
        const int L = cfg.num_cells;
        const int K = cfg.users_per_cell;
        if (dir == Direction::UL) {
            for (double v : eta)
                if (v > 1.0) return false;
            return true;
        }
        for (int l = 0; l < L; ++l) {
            double sum = 0.0;
            for (int k = 0; k < K; ++k) sum += eta[l * K + k];
            if (sum > 1.0) return false;
        }
        return true;
    }

    // eta >= T(eta) within caps proves feasibility and dominates the minimal
    // fixed point.
    bool certifies(const std::vector<double>& eta, std::vector<double>& scratch) const {
        if (!within_caps(eta)) return false;
        apply(eta, scratch);
        for (std::size_t i = 0; i < eta.size(); ++i)
            if (eta[i] < scratch[i]) return false;
        return true;
    }
};

FeasibilityResult run_fixed_point(double t, const FadingTensor& beta,
                                  const ChannelStats& gamma,
                                  const NetworkConfig& cfg, Direction dir,
                                  int max_iters) {
    if (!(t >= 0.0)) throw InputError("feasibility: t must be >= 0");
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;

    FeasibilityResult res;
    res.eta.assign(static_cast<std::size_t>(L) * K, 0.0);
    if (t == 0.0) {
        res.feasible = true;
        return res;
    }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            if (!(gamma.gamma(l, l, k) > 0.0)) return res; // SINR stuck at zero

    InterferenceMap map(t, beta, gamma, cfg, dir);
    std::vector<double> next(res.eta.size()), scratch(res.eta.size()),
        candidate(res.eta.size());
    double prev_delta = 0.0;
    for (res.iterations = 1; res.iterations <= max_iters; ++res.iterations) {
        map.apply(res.eta, next);

        // Iterates grow toward the minimal fixed point, so exceeding a power
        // limit on the way is an exact infeasibility certificate.
        if (!map.within_caps(next)) return res;

        double delta = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            delta = std::max(delta, std::abs(next[i] - res.eta[i]));

        if (delta <= 1e-12) {
            res.eta = next;
            res.feasible = true;
            return res;
        }

        // The map is affine, so the tail is geometric; jump to the predicted
        // limit once the contraction ratio has settled and accept it only if
        // it passes the exact dominance check. The slight inflation makes
        // the comparison robust to round-off.
        if (res.iterations >= 32 && res.iterations % 16 == 0 && prev_delta > 0.0) {
            double r = delta / prev_delta;
            if (r > 0.0 && r < 1.0 - 1e-12) {
                double tail = r / (1.0 - r);
                for (std::size_t i = 0; i < next.size(); ++i) {
                    double ext = next[i] + (next[i] - res.eta[i]) * tail;
                    candidate[i] = ext * (1.0 + 1e-9);
                }
                if (map.certifies(candidate, scratch)) {
                    res.eta = candidate;
                    res.feasible = true;
                    return res;
                }
            }
        }

        prev_delta = delta;
        res.eta.swap(next);
    }
    res.eta.assign(res.eta.size(), 0.0);
    return res; // no convergence below the caps within budget: treat as infeasible
}

}  // namespace

FeasibilityResult feasibility_ul(double t, const FadingTensor& beta,
                                 const ChannelStats& gamma,
                                 const NetworkConfig& cfg, int max_iters) {
    check_shapes(beta, gamma, cfg);
    return run_fixed_point(t, beta, gamma, cfg, Direction::UL, max_iters);
}

FeasibilityResult feasibility_dl(double t, const FadingTensor& beta,
                                 const ChannelStats& gamma,
                                 const NetworkConfig& cfg, int max_iters) {
    check_shapes(beta, gamma, cfg);
    return run_fixed_point(t, beta, gamma, cfg, Direction::DL, max_iters);
}

NwMmfResult solve_nw_mmf(Direction dir, const FadingTensor& beta,
                         const ChannelStats& gamma, const NetworkConfig& cfg,
                         const BisectionOptions& opts) {
    check_shapes(beta, gamma, cfg);
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    const double rho = dir == Direction::UL ? cfg.rho_ul() : cfg.rho_dl();

    NwMmfResult result;
    result.eta.direction = dir;
    result.eta.eta.assign(static_cast<std::size_t>(L) * K, 0.0);

    bool zero_gamma = false;
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            if (!(gamma.gamma(l, l, k) > 0.0)) zero_gamma = true;

    double t_high = opts.t_high;
    if (t_high <= 0.0) {
        // Interference-free bound: no SINR can exceed M rho gamma_own.
        t_high = 0.0;
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
                t_high = std::max(t_high, cfg.antennas * rho * gamma.gamma(l, l, k));
    }
    if (zero_gamma || t_high <= 0.0) {
        result.t_star = 0.0; // some user can never exceed zero SINR
        return result;
    }

    double lo = std::max(opts.t_low, 0.0);
    double hi = t_high;
    auto oracle = [&](double t) {
        return dir == Direction::UL
                   ? feasibility_ul(t, beta, gamma, cfg, opts.max_feasibility_iters)
                   : feasibility_dl(t, beta, gamma, cfg, opts.max_feasibility_iters);
    };

    std::vector<double> best_eta = result.eta.eta;
    for (int i = 0; i < opts.max_bisections; ++i) {
        double width = hi - lo;
        if (width <= opts.tolerance || width <= opts.rel_tolerance * lo) break;
        double mid = 0.5 * (lo + hi);
        auto fr = oracle(mid);
        result.feasibility_trace.emplace_back(mid, fr.feasible);
        ++result.bisection_iterations;
        if (fr.feasible) {
            lo = mid;
            best_eta = std::move(fr.eta);
        } else {
            hi = mid;
        }
    }

    result.t_star = lo;
    result.bracket_width = hi - lo;
    result.eta.eta = std::move(best_eta);
    return result;
}

}  // namespace mcpc
