#include "abcem/lls.hpp"

#include "abcem/errors.hpp"
#include "abcem/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace abcem {

double dividend_step(double dividend, double z1, double z2, double dt, RngStream& rng) {
    if (z2 < z1) throw InvalidSupport("dividend_step: z2 < z1");
    const double z = rng.uniform(z1, z2);
    return (1.0 + dt * z) * dividend;
}

double per_step_return(double s_now, double s_prev, double d_now, double dt) {
    return ((s_now - s_prev) / dt + d_now) / s_now;
}

double per_step_return_prev(double s_now, double s_prev, double d_now, double dt) {
    return ((s_now - s_prev) / dt + d_now) / s_prev;
}

double foc_value(double gamma, std::span<const double> window, double r, double dt) {
    const double base = 1.0 + dt * r;
    double sum = 0.0;
    for (double x : window) {
        const double slope = dt * (x - r);
        const double den = slope * gamma + base;
        if (den == 0.0) throw SingularDenominator("foc_value: zero denominator");
        sum += slope / den;
    }
    return sum / static_cast<double>(window.size());
}

namespace {

constexpr double kGammaLo = 0.01;
constexpr double kGammaHi = 0.99;

/// Largest gamma keeping every per-entry wealth growth factor positive.
double feasible_gamma_cap(std::span<const double> window, double r, double dt) {
    const double base = 1.0 + dt * r;
    double cap = kGammaHi;
    for (double x : window) {
        const double slope = dt * (x - r);
        if (slope < 0.0) {
            // factor = base + slope * gamma crosses zero at -base/slope
            cap = std::min(cap, -base / slope * (1.0 - 1e-9));
        }
    }
    return cap;
}

} // namespace

double optimal_gamma(std::span<const double> window, double r, double dt) {
    const double hi = feasible_gamma_cap(window, r, dt);
    if (hi <= kGammaLo) return kGammaLo;
    const double f_lo = foc_value(kGammaLo, window, r, dt);
    if (f_lo <= 0.0) return kGammaLo;
    const double f_hi = foc_value(hi, window, r, dt);
    if (f_hi >= 0.0) return hi;

    // f is strictly decreasing, so the sign change brackets the unique root.
    double lo = kGammaLo;
    double up = hi;
    while (up - lo > 1e-10) {
        const double mid = 0.5 * (lo + up);
        if (foc_value(mid, window, r, dt) > 0.0) {
            lo = mid;
        } else {
            up = mid;
        }
    }
    return 0.5 * (lo + up);
}

std::span<const double> history_window(std::span<const double> history, int memory) {
    const std::size_t m = static_cast<std::size_t>(memory);
    if (history.size() < m) {
        throw ConfigMismatch("lls: return history shorter than an agent's memory span");
    }
    return history.subspan(history.size() - m);
}

double blur_gamma(double gamma_star, double sigma_gamma, RngStream& rng) {
    if (sigma_gamma <= 0.0) return gamma_star;
    double g;
    do {
        g = gamma_star + rng.normal(0.0, sigma_gamma);
    } while (g < kGammaLo || g > kGammaHi);
    return g;
}

std::vector<double> init_history(double mu_h, double sigma_h, int length, RngStream& rng) {
    std::vector<double> h(static_cast<std::size_t>(length));
    for (double& v : h) v = rng.normal(mu_h, sigma_h);
    return h;
}

LLSAgent lls_wealth_update(LLSAgent agent, double s_now, double s_prev, double d_now,
                           double r, double dt) {
    const double x = per_step_return(s_now, s_prev, d_now, dt);
    agent.wealth += dt * ((1.0 - agent.gamma) * r * agent.wealth + agent.gamma * agent.wealth * x);
    agent.shares = agent.gamma * agent.wealth / s_now;
    return agent;
}

ClearanceProblem::ClearanceProblem(std::span<const LLSAgent> agents,
                                   std::span<const double> new_gammas, double dividend,
                                   double s_prev, double dt, double r, double n_total)
    : dt_(dt), n_total_(n_total), dividend_(dividend), s_prev_(s_prev),
      new_gammas_(new_gammas.begin(), new_gammas.end()) {
    if (agents.empty()) throw EmptyPopulation("clearance on empty population");
    if (new_gammas.size() != agents.size()) {
        throw ConfigMismatch("clearance: one decided gamma per agent required");
    }

    const std::size_t n = agents.size();
    coeff_const_.resize(n);
    coeff_x_.resize(n);
    std::vector<double> gc(n), gx(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LLSAgent& a = agents[i];
        // wealth recursion with the pre-update gamma, linear in x(S)
        coeff_const_[i] = a.wealth * (1.0 + dt_ * (1.0 - a.gamma) * r);
        coeff_x_[i] = dt_ * a.gamma * a.wealth;
        gc[i] = new_gammas_[i] * coeff_const_[i];
        gx[i] = new_gammas_[i] * coeff_x_[i];
    }
    demand_const_ = pairwise_sum(gc);
    demand_x_ = pairwise_sum(gx);
}

double ClearanceProblem::residual(double price) const {
    const double x = per_step_return_prev(price, s_prev_, dividend_, dt_);
    last_residual_ = (demand_const_ + demand_x_ * x) / price - n_total_;
    return last_residual_;
}

double ClearanceProblem::solve() const {
    const double tol = 1e-8 * n_total_;

    constexpr int kMaxExp = 20;
    double cached[2 * kMaxExp + 1];
    bool have[2 * kMaxExp + 1] = {};
    auto eval = [&](int j) {
        const int slot = j + kMaxExp;
        if (!have[slot]) {
            cached[slot] = residual(s_prev_ * std::ldexp(1.0, j));
            have[slot] = true;
        }
        return cached[slot];
    };

    if (std::abs(eval(0)) <= tol) return s_prev_;
    double lo = 0.0, hi = 0.0, g_hi = 0.0;
    bool bracketed = false;
    for (int step = 1; step <= kMaxExp && !bracketed; ++step) {
        for (int sign : {+1, -1}) {
            const int ja = sign * (step - 1);
            const int jb = sign * step;
            const double ga = eval(ja);
            const double gb = eval(jb);
            if ((ga <= 0.0) != (gb <= 0.0)) {
                lo = s_prev_ * std::ldexp(1.0, std::min(ja, jb));
                hi = s_prev_ * std::ldexp(1.0, std::max(ja, jb));
                g_hi = ja < jb ? gb : ga;
                bracketed = true;
                break;
            }
        }
    }
    if (!bracketed) {
        throw SolverFailure("market clearance: no sign change in [S/2^20, S*2^20]");
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = residual(mid);
        if (std::abs(gm) <= tol) return mid;
        if ((gm <= 0.0) == (g_hi <= 0.0)) {
            hi = mid;
            g_hi = gm;
        } else {
            lo = mid;
        }
        if (hi - lo <= 1e-15 * hi) break;
    }
    throw SolverFailure("market clearance: residual tolerance not reached");
}

double ClearanceProblem::commit(std::span<LLSAgent> agents, double price) const {
    residual(price); // leaves last_residual_ at the committed price
    const double x = per_step_return_prev(price, s_prev_, dividend_, dt_);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        LLSAgent& a = agents[i];
        a.wealth = coeff_const_[i] + coeff_x_[i] * x;
        a.gamma = new_gammas_[i];
        a.shares = a.gamma * a.wealth / price;
    }
    return x;
}

double clear_market(std::span<const LLSAgent> agents, const LLSMarket& market, double s_prev,
                    double dt, RngStream& rng) {
    if (agents.empty()) throw EmptyPopulation("clear_market on empty population");

    // One optimum per distinct memory span; shared windows mean shared optima.
    std::map<int, double> mu_of;
    for (const LLSAgent& a : agents) {
        if (!mu_of.count(a.memory)) {
            mu_of[a.memory] =
                optimal_gamma(history_window(market.history, a.memory), market.r, dt);
        }
    }
    // Noise drawn once per agent, in agent order, before the solve.
    std::vector<double> gammas(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        gammas[i] = blur_gamma(mu_of[agents[i].memory], market.sigma_gamma, rng);
    }
    ClearanceProblem problem(agents, gammas, market.dividend, s_prev, dt, market.r,
                             market.n_total);
    return problem.solve();
}

} // namespace abcem
