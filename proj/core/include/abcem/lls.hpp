#pragma once

#include "abcem/config.hpp"
#include "abcem/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace abcem {

/// Utility-maximizing investor: investment fraction gamma in [0.01, 0.99],
/// wealth in currency, share count, and look-back span (steps).
struct LLSAgent {
    double gamma = 0.4;
    double wealth = 1000.0;
    double shares = 100.0;
    int memory = 15;
};

/// Market-wide quantities of the LLS economy.
struct LLSMarket {
    double dividend = 0.2;
    double z1 = 0.05;
    double z2 = 0.05;
    double r = 0.04;
    double n_total = 10000.0;
    double sigma_gamma = 0.0;
    std::vector<double> history; // committed per-step returns, newest last
};

/// Multiplicative dividend step D' = (1 + dt * z) D with z ~ U(z1, z2);
/// z1 == z2 is the deterministic case. Throws InvalidSupport if z2 < z1.
double dividend_step(double dividend, double z1, double z2, double dt, RngStream& rng);

/// Per-step return x = ((S_now - S_prev) / dt + D_now) / S_now.
double per_step_return(double s_now, double s_prev, double d_now, double dt);

/// Return with the previous price in the denominator,
///   x = ((S_now - S_prev) / dt + D_now) / S_prev,
/// the convention the market dynamics use: it keeps the hypothetical wealth
/// linear and increasing in the trial price, which guarantees the clearance
/// residual a unique positive root.
double per_step_return_prev(double s_now, double s_prev, double d_now, double dt);

/// First-order condition of the expected-log-utility maximization,
///   f(gamma) = (1/m) sum_j dt (x_j - r) / (dt (x_j - r) gamma + 1 + dt r),
/// strictly decreasing in gamma wherever defined.
double foc_value(double gamma, std::span<const double> window, double r, double dt);

/// Maximizer of the expected log utility over [0.01, 0.99]: boundary
/// shortcut on the FOC sign, interior root by bisection to 1e-10. Window
/// entries that would bankrupt the agent (non-positive wealth growth
/// factor) cap the feasible gamma below 0.99.
double optimal_gamma(std::span<const double> window, double r, double dt);

/// The agent's look-back window: the `memory` most recent committed
/// returns. Throws ConfigMismatch when the history is shorter.
std::span<const double> history_window(std::span<const double> history, int memory);

/// Truncation by rejection: resamples eps ~ N(0, sigma^2) until
/// gamma_star + eps lands in [0.01, 0.99]. sigma == 0 is the identity.
double blur_gamma(double gamma_star, double sigma_gamma, RngStream& rng);

/// Artificial i.i.d. N(mu_h, sigma_h^2) return history used to seed the
/// look-back windows.
std::vector<double> init_history(double mu_h, double sigma_h, int length, RngStream& rng);

/// Wealth recursion with the agent's pre-update gamma, then shares
/// rebalanced at the new price.
LLSAgent lls_wealth_update(LLSAgent agent, double s_now, double s_prev, double d_now,
                           double r, double dt);

/// Equilibrium price solve for one step. The investment fractions for the
/// step are decided (optimum + frozen noise) before the solve, so the
/// residual
///   g(S) = sum_i gamma_i w_i(S) / S - n_total,
/// with the hypothetical wealth w_i(S) from the wealth recursion at trial
/// price S, is deterministic and continuous during root finding.
class ClearanceProblem {
public:
    ClearanceProblem(std::span<const LLSAgent> agents, std::span<const double> new_gammas,
                     double dividend, double s_prev, double dt, double r, double n_total);

    double residual(double price) const;

    /// Root with |g| <= 1e-8 * n_total; brackets by scanning s_prev * 2^j,
    /// j in [-20, 20], nearest sign change first. Throws SolverFailure when
    /// no bracket exists.
    double solve() const;

    /// Applies the solved price: wealth update with pre-update gammas, the
    /// new gammas, share rebalancing. Returns the realized return x(S).
    double commit(std::span<LLSAgent> agents, double price) const;

    double last_residual() const { return last_residual_; }

private:
    double dt_;
    double n_total_;
    double dividend_;
    double s_prev_;
    std::vector<double> new_gammas_;
    std::vector<double> coeff_const_; // w_i(S) = coeff_const + coeff_x * x(S)
    std::vector<double> coeff_x_;
    double demand_const_ = 0.0; // sum gamma_i * coeff_const_i
    double demand_x_ = 0.0;     // sum gamma_i * coeff_x_i
    mutable double last_residual_ = 0.0;
};

/// One-call form: per-group optima from the market history, noise drawn
/// once per agent (in agent order) before the solve, then the price solve.
/// Does not mutate the agents.
double clear_market(std::span<const LLSAgent> agents, const LLSMarket& market, double s_prev,
                    double dt, RngStream& rng);

} // namespace abcem
