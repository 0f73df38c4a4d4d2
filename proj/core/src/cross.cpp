#include "abcem/cross.hpp"

#include "abcem/errors.hpp"

namespace abcem {

double cross_excess_demand(std::span<const CrossAgent> agents) {
    if (agents.empty()) throw EmptyPopulation("cross_excess_demand on empty population");
    std::int64_t sum = 0;
    for (const CrossAgent& a : agents) sum += a.sigma;
    return static_cast<double>(sum) / static_cast<double>(agents.size());
}

std::vector<CrossAgent> init_cross_population(const CrossParams& params, std::int64_t n,
                                              double price0, double dt,
                                              const StreamFactory& streams) {
    if (params.A2 < params.A1 || params.b2 < params.b1) {
        throw ConfigMismatch("init_cross_population: requires A1 <= A2 and b1 <= b2");
    }
    const double B1 = params.b1 * dt;
    const double B2 = params.b2 * dt;
    const double w0 = params.wealth ? params.wealth->w0 : 1.0;

    std::vector<CrossAgent> agents(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        RngStream rng = streams(StreamComponent::cross_agent_init, static_cast<std::uint64_t>(i));
        CrossAgent& a = agents[static_cast<std::size_t>(i)];
        a.alpha = rng.uniform(params.A1, params.A2);
        a.beta = rng.uniform(B1, B2);
        a.c = B1 + rng.uniform01() * (B2 - B1);
        a.sigma = rng.uniform01() < 0.5 ? 1 : -1;
        a.anchor(price0);
        a.wealth = w0;
    }
    return agents;
}

} // namespace abcem
