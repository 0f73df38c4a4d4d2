#pragma once

#include "abcem/config.hpp"
#include "abcem/rng.hpp"

#include <utility>

namespace abcem {

/// State of the two representative FW agents. P is the log market price;
/// demand lags keep the t_{k-2} values needed by the wealth recursion.
struct FWState {
    double P = 1.0;
    double P_prev = 1.0;
    double n_f = 0.5;
    double n_c = 0.5;
    double w_f = 0.0;
    double w_c = 0.0;
    double d_f_lag1 = 0.0;
    double d_f_lag2 = 0.0;
    double d_c_lag1 = 0.0;
    double d_c_lag2 = 0.0;
    double a = 0.0;
};

/// Fundamentalist and chartist demands
///   d_f = phi (P_f - P) + eps_f,  d_c = chi (P - P_prev) + eps_c
/// with independent N(0, sigma^2) noise drawn from `rng` (fundamentalist
/// draw first).
std::pair<double, double> fw_demands(const FWState& state, const FWParams& params, RngStream& rng);

/// Population-weighted excess demand n_f d_f + n_c d_c.
double fw_excess_demand(const FWState& state, double d_f, double d_c);

/// Linear log-price impact P(t_k) = P(t_{k-1}) + mu ED(t_{k-1}).
double fw_price_update(double p_prev, double mu, double excess_demand_prev);

/// Attractiveness of the fundamental strategy,
///   a = alpha_w (w_f - w_c) + alpha_0 + alpha_h (n_f - n_c) + alpha_m (P - P_f)^2.
double attractiveness(const FWState& state, const FWParams& params);

/// Discrete choice fractions n_f = 1/(1 + exp(-beta a)), n_c = 1 - n_f;
/// overflow-safe for extreme a.
std::pair<double, double> dca_fractions(double a_prev, double beta);

/// Transition-probability flows with pi^{cf} = min(1, nu e^a) and
/// pi^{fc} = min(1, nu e^{-a}).
std::pair<double, double> tpa_fractions(const FWState& state, double a_prev, double nu);

/// Hypothetical wealth recursion w = eta w_prev + (1 - eta) g with
/// g = (exp(P) - exp(P_prev)) d(t_{k-2}).
std::pair<double, double> fw_wealth_update(const FWState& state, const FWParams& params,
                                           double p_now, double p_prev, double d_f_lag2,
                                           double d_c_lag2);

} // namespace abcem
