#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace abcem {

enum class ModelKind { cross, cross_wealth, cross_sde, lls, fw };

enum class PriceRuleKind { cross_exp, sde_euler_f1, sde_euler_f2, fw_linear, lls_clearance };

/// Price-adjustment process, decoupled from the agent population.
/// `kappa` is the market depth (exponential rule), `theta` couples noise
/// amplitude to |ED|. `appendix_form` selects the alternative SDE layout with
/// an explicit kappa drift term.
struct PriceRule {
    PriceRuleKind kind = PriceRuleKind::cross_exp;
    double kappa = 0.0;
    double theta = 0.0;
    double dt = 1.0;
    bool appendix_form = false;
};

/// Optional per-agent wealth tracking bolted onto the Cross population:
/// fixed bond rate r and fixed stock fraction gamma for all agents.
struct WealthExtension {
    double r = 0.0;
    double gamma = 0.5;
    double w0 = 1.0;
};

struct CrossParams {
    double A1 = 0.1;  // inaction threshold bounds, alpha_i ~ U(A1, A2)
    double A2 = 0.3;
    double b1 = 25.0; // herding threshold in time steps, beta_i ~ U(b1*dt, b2*dt)
    double b2 = 100.0;
    double S0 = 1.0;
    std::optional<WealthExtension> wealth;
};

struct LLSGroup {
    std::int64_t count = 0;
    int memory = 1; // look-back steps m_i
};

struct LLSParams {
    double r = 0.04;
    double z1 = 0.05; // dividend growth support [z1, z2]
    double z2 = 0.05;
    double sigma_gamma = 0.0;
    double mu_h = 0.0415; // artificial return history ~ N(mu_h, sigma_h^2)
    double sigma_h = 0.003;
    double n_total = 10000.0; // fixed share supply
    double gamma0 = 0.4;
    double w0 = 1000.0;
    double S0 = 4.0;
    double D0 = 0.2;
    std::vector<LLSGroup> groups; // empty: one group covering all agents
    int group_memory_default = 15;
};

enum class FWSwitching { dca, tpa };

struct FWParams {
    FWSwitching switching = FWSwitching::dca;
    double phi = 1.0;
    double chi = 1.2;
    double sigma_f = 0.681;
    double sigma_c = 1.724;
    double alpha_w = 0.0;
    double alpha_0 = 0.0;
    double alpha_h = 0.0;
    double alpha_m = 0.0;
    double beta = 1.0;  // DCA intensity of choice
    double nu = 0.05;   // TPA flexibility
    double eta_memory = 0.0; // EWMA wealth memory
    double mu = 0.01;   // price impact
    double P_f = 1.0;   // fundamental log-price
    double P0 = 1.0;
};

using ModelParams = std::variant<CrossParams, LLSParams, FWParams>;

/// Complete declarative description of one model assembly + run length + seed.
struct SimulationConfig {
    std::string name = "sim";
    std::int64_t num_agents = 1;
    std::int64_t num_steps = 1;
    double dt = 1.0;
    std::uint64_t seed = 1;
    bool seed_set = false;
    int monte_carlo_runs = 1;
    PriceRule mechanism;
    ModelParams model = CrossParams{};
    std::vector<std::string> recorder_columns; // empty: record everything

    ModelKind kind() const;
};

/// Validates cross-field invariants; throws ConfigMismatch with a field
/// diagnostic. Called by run_simulation and by the config parser.
void validate(const SimulationConfig& config);

const char* to_string(ModelKind kind);
const char* to_string(PriceRuleKind kind);

} // namespace abcem
