#include "abcem/fw.hpp"

#include "abcem/numeric.hpp"

#include <cmath>

namespace abcem {

std::pair<double, double> fw_demands(const FWState& state, const FWParams& params,
                                     RngStream& rng) {
    // The demand noise enters with standard deviation sigma^2. A plain-sigma
    // amplitude bounds the return kurtosis near 2 (the f/c variance ratio is
    // too small for heavier tails), losing the regime-switching volatility
    // this model is built around.
    const double eps_f =
        params.sigma_f > 0.0 ? rng.normal(0.0, params.sigma_f * params.sigma_f) : 0.0;
    const double eps_c =
        params.sigma_c > 0.0 ? rng.normal(0.0, params.sigma_c * params.sigma_c) : 0.0;
    const double d_f = params.phi * (params.P_f - state.P) + eps_f;
    const double d_c = params.chi * (state.P - state.P_prev) + eps_c;
    return {d_f, d_c};
}

double fw_excess_demand(const FWState& state, double d_f, double d_c) {
    return state.n_f * d_f + state.n_c * d_c;
}

double fw_price_update(double p_prev, double mu, double excess_demand_prev) {
    return p_prev + mu * excess_demand_prev;
}

double attractiveness(const FWState& state, const FWParams& params) {
    const double misalignment = state.P - params.P_f;
    return params.alpha_w * (state.w_f - state.w_c) + params.alpha_0 +
           params.alpha_h * (state.n_f - state.n_c) + params.alpha_m * misalignment * misalignment;
}

std::pair<double, double> dca_fractions(double a_prev, double beta) {
    const double n_f = logistic(beta * a_prev);
    return {n_f, 1.0 - n_f};
}

std::pair<double, double> tpa_fractions(const FWState& state, double a_prev, double nu) {
    // pi = min(1, nu e^{+-a}) computed without overflowing the exponential
    const double log_nu = std::log(nu);
    const double pi_cf = a_prev >= -log_nu ? 1.0 : nu * std::exp(a_prev);
    const double pi_fc = -a_prev >= -log_nu ? 1.0 : nu * std::exp(-a_prev);
    const double n_f = state.n_f + state.n_c * pi_cf - state.n_f * pi_fc;
    return {n_f, 1.0 - n_f};
}

std::pair<double, double> fw_wealth_update(const FWState& state, const FWParams& params,
                                           double p_now, double p_prev, double d_f_lag2,
                                           double d_c_lag2) {
    const double price_gain = std::exp(p_now) - std::exp(p_prev);
    const double m = params.eta_memory;
    const double w_f = m * state.w_f + (1.0 - m) * price_gain * d_f_lag2;
    const double w_c = m * state.w_c + (1.0 - m) * price_gain * d_c_lag2;
    return {w_f, w_c};
}

} // namespace abcem
