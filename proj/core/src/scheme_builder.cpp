#include "scheme_builder.hpp"

#include <algorithm>
#include <cmath>

#include "mcpc/errors.hpp"
#include "mcpc/rng.hpp"

namespace mcpc::detail {

namespace {

LseConstraint::Term make_term(double coeff,
                              std::initializer_list<std::pair<int, double>> entries) {
    std::map<int, double> acc;
    for (const auto& [v, w] : entries) acc[v] += w;
    LseConstraint::Term term;
    term.coeff = coeff;
    for (const auto& [v, w] : acc)
        if (w != 0.0) term.lin.emplace_back(v, w);
    return term;
}

}  // namespace

void check_shapes(const FadingTensor& beta, const ChannelStats& gamma,
                  const NetworkConfig& cfg, const char* who) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    if (beta.beta.dim0() != L || beta.beta.dim1() != L || beta.beta.dim2() != K)
        throw InputError(std::string(who) + ": fading tensor shape does not match config");
    if (!gamma.gamma.same_shape(beta.beta))
        throw InputError(std::string(who) + ": gamma shape does not match beta");
}

SinrProgram build_sinr_program(Direction dir, const FadingTensor& beta,
                               const ChannelStats& gamma, const NetworkConfig& cfg,
                               bool per_user_t,
                               const std::vector<char>& cell_enabled) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    const int M = cfg.antennas;
    const double rho = dir == Direction::UL ? cfg.rho_ul() : cfg.rho_dl();
    auto sets = cfg.resolved_pilot_sets();
    auto set_of = cfg.pilot_set_of_cell();

    SinrProgram sp;
    sp.L = L;
    sp.K = K;
    sp.dir = dir;

    int next = L * K;
    sp.t_var.assign(per_user_t ? L * K : L, -1);
    for (int l = 0; l < L; ++l) {
        if (!cell_enabled[l]) continue;
        if (per_user_t) {
            for (int k = 0; k < K; ++k) sp.t_var[l * K + k] = next++;
        } else {
            sp.t_var[l] = next++;
        }
    }

    ConvexProgram& p = sp.program;
    p.num_vars = next;
    p.lower.assign(next, kTBarLower);
    p.upper.assign(next, std::numeric_limits<double>::infinity());
    for (int j = 0; j < L * K; ++j) {
        p.lower[j] = kEtaBarLower;
        if (dir == Direction::UL) p.upper[j] = 0.0; // eta <= 1
    }

    for (int l = 0; l < L; ++l) {
        if (!cell_enabled[l]) continue;
        const auto& copilots = sets[set_of[l]];
        for (int k = 0; k < K; ++k) {
            const int tv = per_user_t ? sp.t_var[l * K + k] : sp.t_var[l];
            const int me = sp.eta_var(l, k);
            const double own_gamma = gamma.gamma(l, l, k);

            LseConstraint con;
            con.bound = std::log(static_cast<double>(M) * rho * own_gamma);
            con.terms.push_back(make_term(1.0, {{tv, 1.0}, {me, -1.0}}));
            for (int lp = 0; lp < L; ++lp) {
                for (int kp = 0; kp < K; ++kp) {
                    double b = dir == Direction::UL ? beta.beta(l, lp, kp)
                                                    : beta.beta(lp, l, k);
                    if (b <= 0.0) continue;
                    con.terms.push_back(make_term(
                        rho * b, {{sp.eta_var(lp, kp), 1.0}, {tv, 1.0}, {me, -1.0}}));
                }
            }
            for (int lp : copilots) {
                if (lp == l) continue;
                double g = dir == Direction::UL ? gamma.gamma(l, lp, k)
                                                : gamma.gamma(lp, l, k);
                if (g <= 0.0) continue;
                con.terms.push_back(make_term(
                    M * rho * g, {{sp.eta_var(lp, k), 1.0}, {tv, 1.0}, {me, -1.0}}));
            }
            p.constraints.push_back(std::move(con));
        }
    }

    if (dir == Direction::DL) {
        // Per-cell power budgets sum_k eta_{lk} <= 1 in log-sum-exp form.
        for (int l = 0; l < L; ++l) {
            LseConstraint con;
            con.bound = 0.0;
            for (int k = 0; k < K; ++k)
                con.terms.push_back(make_term(1.0, {{sp.eta_var(l, k), 1.0}}));
            p.constraints.push_back(std::move(con));
        }
    }
    return sp;
}

namespace {

std::vector<double> start_from_eta(const SinrProgram& sp, const FadingTensor& beta,
                                   const ChannelStats& gamma, const NetworkConfig& cfg,
                                   const std::vector<double>& eta_lin) {
    PowerAllocation alloc{eta_lin, sp.dir};
    SinrSeVector s = compute_sinr(beta, gamma, alloc, cfg);

    std::vector<double> x(sp.program.num_vars, 0.0);
    for (int j = 0; j < sp.num_eta(); ++j) x[j] = std::log(eta_lin[j]);
    const bool per_user = static_cast<int>(sp.t_var.size()) == sp.L * sp.K;
    for (std::size_t i = 0; i < sp.t_var.size(); ++i) {
        if (sp.t_var[i] < 0) continue;
        double target = per_user ? s.sinr[i] : s.per_cell_min_sinr[i];
        double t_bar = std::log(std::max(target, 1e-280)) - std::log(2.0);
        x[sp.t_var[i]] = std::max(t_bar, kTBarLower + 1.0);
    }
    return x;
}

}  // namespace

std::vector<double> heuristic_start(const SinrProgram& sp, const FadingTensor& beta,
                                    const ChannelStats& gamma,
                                    const NetworkConfig& cfg) {
    std::vector<double> eta(static_cast<std::size_t>(sp.L) * sp.K,
                            1.0 / (2.0 * sp.L * sp.K));
    return start_from_eta(sp, beta, gamma, cfg, eta);
}

std::vector<double> randomized_start(const SinrProgram& sp, const FadingTensor& beta,
                                     const ChannelStats& gamma,
                                     const NetworkConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> eta(static_cast<std::size_t>(sp.L) * sp.K);
    // Per-user fractions below 0.9/K keep both the UL caps and the DL
    // budgets strictly slack.
    for (auto& v : eta) v = rng.uniform(0.05, 0.9) / sp.K;
    return start_from_eta(sp, beta, gamma, cfg, eta);
}

std::vector<PowerAllocation> candidate_allocations(const SinrProgram& sp,
                                                   const std::vector<double>& x) {
    const int L = sp.L, K = sp.K;
    std::vector<double> raw(static_cast<std::size_t>(L) * K);
    for (int j = 0; j < L * K; ++j) raw[j] = std::exp(x[j]);

    std::vector<PowerAllocation> out;
    out.push_back({raw, sp.dir});

    // Interior-point iterates stop just short of active power limits; snap
    // near-active limits onto the boundary and let the caller keep whichever
    // allocation scores better.
    std::vector<double> snapped = raw;
    bool changed = false;
    if (sp.dir == Direction::UL) {
        for (int j = 0; j < L * K; ++j)
            if (x[j] > -1e-7 && snapped[j] != 1.0) {
                snapped[j] = 1.0;
                changed = true;
            }
    } else {
        for (int l = 0; l < L; ++l) {
            double sum = 0.0;
            for (int k = 0; k < K; ++k) sum += snapped[l * K + k];
            if (sum >= 1.0 - 1e-6 && sum != 1.0) {
                for (int k = 0; k < K; ++k) snapped[l * K + k] /= sum;
                changed = true;
            }
        }
    }
    if (changed) out.push_back({snapped, sp.dir});
    return out;
}

}  // namespace mcpc::detail
