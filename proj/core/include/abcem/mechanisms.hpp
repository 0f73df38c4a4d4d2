#pragma once

#include "abcem/config.hpp"
#include "abcem/rng.hpp"

namespace abcem {

/// Per-step noise amplitude (1 + theta * |ED|) * sqrt(dt).
double noise_amplitude(double theta, double excess_demand, double dt);

/// Cross exponential price rule with the normal draw supplied by the caller:
///   S' = S * exp((1 + theta |ED|) sqrt(dt) eta + kappa dED)
/// Output is positive for any finite input.
double cross_exp_price_step(double price, double excess_demand, double d_excess_demand,
                            const PriceRule& rule, double eta);

double cross_exp_price(double price, double excess_demand, double d_excess_demand,
                       const PriceRule& rule, RngStream& rng);

/// Euler-Maruyama step of dS = F dt + S (1 + theta |ED|) dW with drift
/// F1 = kappa * S * dED/dt or F2 = S * ED, selected by rule.kind. The
/// market depth kappa scales the F1 drift; kappa < 0.5 keeps the additive
/// step positive through the largest possible demand swings. With
/// rule.appendix_form, the alternative layout S (1 + kappa dED + sqrt(dt)
/// ED eta) is used instead. Throws NonPositivePrice when a step lands at
/// or below zero.
double sde_euler_price_step(double price, double excess_demand, double d_excess_demand,
                            const PriceRule& rule, double eta);

double sde_euler_price(double price, double excess_demand, double d_excess_demand,
                       const PriceRule& rule, RngStream& rng);

} // namespace abcem
