#include "abcem/mechanisms.hpp"

#include "abcem/errors.hpp"

#include <cmath>

namespace abcem {

double noise_amplitude(double theta, double excess_demand, double dt) {
    return (1.0 + theta * std::abs(excess_demand)) * std::sqrt(dt);
}

double cross_exp_price_step(double price, double excess_demand, double d_excess_demand,
                            const PriceRule& rule, double eta) {
    const double amp = noise_amplitude(rule.theta, excess_demand, rule.dt);
    return price * std::exp(amp * eta + rule.kappa * d_excess_demand);
}

double cross_exp_price(double price, double excess_demand, double d_excess_demand,
                       const PriceRule& rule, RngStream& rng) {
    return cross_exp_price_step(price, excess_demand, d_excess_demand, rule, rng.normal());
}

double sde_euler_price_step(double price, double excess_demand, double d_excess_demand,
                            const PriceRule& rule, double eta) {
    if (rule.appendix_form) {
        // Alternative layout with the excess demand itself as noise amplitude.
        const double next = price * (1.0 + rule.kappa * d_excess_demand +
                                     std::sqrt(rule.dt) * excess_demand * eta);
        if (!(next > 0.0)) {
            throw NonPositivePrice("sde_euler price step produced a non-positive price");
        }
        return next;
    }
    const double diffusion = price * noise_amplitude(rule.theta, excess_demand, rule.dt) * eta;
    double drift;
    if (rule.kind == PriceRuleKind::sde_euler_f1) {
        // F1 = kappa S dED/dt, so dt * F1 = kappa S dED. kappa < 0.5 keeps
        // the step positive for any dED in [-2, 2].
        drift = rule.kappa * price * d_excess_demand;
    } else {
        drift = rule.dt * price * excess_demand;
    }
    const double next = price + drift + diffusion;
    if (!(next > 0.0)) {
        throw NonPositivePrice("sde_euler price step produced a non-positive price");
    }
    return next;
}

double sde_euler_price(double price, double excess_demand, double d_excess_demand,
                       const PriceRule& rule, RngStream& rng) {
    return sde_euler_price_step(price, excess_demand, d_excess_demand, rule, rng.normal());
}

} // namespace abcem
