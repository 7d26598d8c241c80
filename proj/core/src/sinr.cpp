#include "mcpc/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcpc/errors.hpp"

namespace mcpc {

std::string to_string(Direction d) { return d == Direction::UL ? "ul" : "dl"; }

Direction direction_from_string(const std::string& s) {
    if (s == "ul" || s == "UL") return Direction::UL;
    if (s == "dl" || s == "DL") return Direction::DL;
    throw InputError("unknown direction '" + s + "' (expected ul or dl)");
}

void PowerAllocation::validate(const NetworkConfig& cfg) const {
    const std::size_t expected =
        static_cast<std::size_t>(cfg.num_cells) * cfg.users_per_cell;
    if (eta.size() != expected)
        throw InputError("PowerAllocation: expected " + std::to_string(expected) +
                         " coefficients, got " + std::to_string(eta.size()));
    constexpr double slack = 1e-9;
    for (double v : eta) {
        if (!std::isfinite(v) || v < 0.0)
            throw InputError("PowerAllocation: coefficients must be finite and >= 0");
        if (direction == Direction::UL && v > 1.0 + slack)
            throw InputError("PowerAllocation: UL coefficient exceeds 1");
    }
    if (direction == Direction::DL) {
        for (int l = 0; l < cfg.num_cells; ++l) {
            double sum = 0.0;
            for (int k = 0; k < cfg.users_per_cell; ++k)
                sum += at(l, k, cfg.users_per_cell);
            if (sum > 1.0 + slack)
                throw InputError("PowerAllocation: DL budget exceeded in cell " +
                                 std::to_string(l));
        }
    }
}

double SinrSeVector::min_sinr() const {
    return *std::min_element(sinr.begin(), sinr.end());
}

double SinrSeVector::sum_se() const {
    double s = 0.0;
    for (double v : se) s += v;
    return s;
}

double se_from_sinr(double sinr, const NetworkConfig& cfg) {
    if (!(sinr >= 0.0))
        throw InputError("se_from_sinr: sinr must be >= 0");
    return cfg.prelog() * std::log2(1.0 + sinr);
}

namespace {

void check_shapes(const FadingTensor& beta, const ChannelStats& gamma,
                  const PowerAllocation& eta, const NetworkConfig& cfg,
                  Direction dir) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    if (beta.beta.dim0() != L || beta.beta.dim1() != L || beta.beta.dim2() != K)
        throw InputError("sinr: fading tensor shape does not match config");
    if (!gamma.gamma.same_shape(beta.beta))
        throw InputError("sinr: gamma shape does not match beta");
    if (eta.direction != dir)
        throw InputError("sinr: power allocation direction mismatch");
    eta.validate(cfg);
}

SinrSeVector finish(std::vector<double> sinr, const NetworkConfig& cfg) {
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    SinrSeVector out;
    out.sinr = std::move(sinr);
    out.se.resize(out.sinr.size());
    for (std::size_t i = 0; i < out.sinr.size(); ++i)
        out.se[i] = se_from_sinr(out.sinr[i], cfg);
    out.per_cell_min_sinr.assign(L, std::numeric_limits<double>::infinity());
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            out.per_cell_min_sinr[l] =
                std::min(out.per_cell_min_sinr[l], out.sinr[static_cast<std::size_t>(l) * K + k]);
    return out;
}

}  // namespace

SinrSeVector ul_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                     const PowerAllocation& eta, const NetworkConfig& cfg) {
    check_shapes(beta, gamma, eta, cfg, Direction::UL);
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    const int M = cfg.antennas;
    const double rho = cfg.rho_ul();
    auto sets = cfg.resolved_pilot_sets();
    auto set_of = cfg.pilot_set_of_cell();

    std::vector<double> sinr(static_cast<std::size_t>(L) * K);
    for (int l = 0; l < L; ++l) {
        // The copilot and non-copilot interference sums have the same form,
        // so they collapse into one sum over every transmitting user.
        double beta_sum = 0.0;
        for (int lp = 0; lp < L; ++lp)
            for (int kp = 0; kp < K; ++kp)
                beta_sum += beta.beta(l, lp, kp) * eta.at(lp, kp, K);

        const auto& copilots = sets[set_of[l]];
        for (int k = 0; k < K; ++k) {
            double contamination = 0.0;
            for (int lp : copilots)
                if (lp != l) contamination += gamma.gamma(l, lp, k) * eta.at(lp, k, K);
            double num = M * rho * gamma.gamma(l, l, k) * eta.at(l, k, K);
            double den = 1.0 + rho * beta_sum + M * rho * contamination;
            sinr[static_cast<std::size_t>(l) * K + k] = num / den;
        }
    }
    return finish(std::move(sinr), cfg);
}

SinrSeVector dl_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                     const PowerAllocation& eta, const NetworkConfig& cfg) {
    check_shapes(beta, gamma, eta, cfg, Direction::DL);
    const int L = cfg.num_cells;
    const int K = cfg.users_per_cell;
    const int M = cfg.antennas;
    const double rho = cfg.rho_dl();
    auto sets = cfg.resolved_pilot_sets();
    auto set_of = cfg.pilot_set_of_cell();

    std::vector<double> cell_power(L, 0.0); // sum_k eta_{l'k'} per BS
    for (int lp = 0; lp < L; ++lp)
        for (int kp = 0; kp < K; ++kp) cell_power[lp] += eta.at(lp, kp, K);

    std::vector<double> sinr(static_cast<std::size_t>(L) * K);
    for (int l = 0; l < L; ++l) {
        const auto& copilots = sets[set_of[l]];
        for (int k = 0; k < K; ++k) {
            double beta_sum = 0.0; // interference received by user (l,k)
            for (int lp = 0; lp < L; ++lp)
                beta_sum += beta.beta(lp, l, k) * cell_power[lp];
            double contamination = 0.0;
            for (int lp : copilots)
                if (lp != l) contamination += gamma.gamma(lp, l, k) * eta.at(lp, k, K);
            double num = M * rho * gamma.gamma(l, l, k) * eta.at(l, k, K);
            double den = 1.0 + rho * beta_sum + M * rho * contamination;
            sinr[static_cast<std::size_t>(l) * K + k] = num / den;
        }
    }
    return finish(std::move(sinr), cfg);
}

SinrSeVector compute_sinr(const FadingTensor& beta, const ChannelStats& gamma,
                          const PowerAllocation& eta, const NetworkConfig& cfg) {
    return eta.direction == Direction::UL ? ul_sinr(beta, gamma, eta, cfg)
                                          : dl_sinr(beta, gamma, eta, cfg);
}

}  // namespace mcpc
