#pragma once

#include "abcem/config.hpp"
#include "abcem/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace abcem {

/// One binary investor: position sigma in {-1, +1}, inaction threshold
/// alpha, herding threshold beta (time units), accumulated herding pressure
/// c, and the price m at the last switch. After a switch c = 0 and m equals
/// the current price, so the new inaction interval always contains it.
/// lo/hi cache the interval [m/(1+alpha), m(1+alpha)] for the hot loop.
struct CrossAgent {
    int sigma = 1;
    double alpha = 0.2;
    double beta = 1.0;
    double c = 0.0;
    double m = 1.0;
    double lo = 1.0 / 1.2;
    double hi = 1.2;
    double wealth = 1.0; // used by the wealth extension only

    void anchor(double price) {
        m = price;
        lo = price / (1.0 + alpha);
        hi = price * (1.0 + alpha);
    }
};

/// Mean position (1/N) sum sigma_i, always in [-1, 1].
double cross_excess_demand(std::span<const CrossAgent> agents);

/// Herding pressure grows by dt * |ED| exactly when the agent holds a
/// position against the majority (sigma * ED < 0); sigma * ED = 0 counts as
/// aligned.
inline CrossAgent accumulate_herding(CrossAgent agent, double excess_demand, double dt) {
    if (static_cast<double>(agent.sigma) * excess_demand < 0.0) {
        agent.c += dt * (excess_demand < 0.0 ? -excess_demand : excess_demand);
    }
    return agent;
}

/// Switches position when c > beta or price leaves [m/(1+alpha), m(1+alpha)];
/// a switch flips sigma, resets c, and re-anchors m at the current price.
inline CrossAgent maybe_switch(CrossAgent agent, double price) {
    if (agent.c > agent.beta || price < agent.lo || price > agent.hi) {
        agent.sigma = -agent.sigma;
        agent.c = 0.0;
        agent.anchor(price);
    }
    return agent;
}

/// Draws alpha_i ~ U(A1, A2), beta_i and c_i(0) ~ U(b1 dt, b2 dt), sigma_i
/// uniform on {-1, +1}; m_i(0) = price0. One stream per agent, so the
/// population is identical regardless of iteration order.
std::vector<CrossAgent> init_cross_population(const CrossParams& params, std::int64_t n,
                                              double price0, double dt,
                                              const StreamFactory& streams);

/// Wealth recursion of the extension,
///   w' = w + dt [(1-gamma) r + gamma (S_now - S_prev) / (dt S_now)] w,
/// with the price increment divided by the current price S_now.
inline CrossAgent update_wealth(CrossAgent agent, double s_now, double s_prev,
                                const WealthExtension& wealth, double dt) {
    const double stock_return = (s_now - s_prev) / (dt * s_now);
    agent.wealth += dt * ((1.0 - wealth.gamma) * wealth.r + wealth.gamma * stock_return) * agent.wealth;
    return agent;
}

} // namespace abcem
