#include "abcem/config.hpp"

#include "abcem/errors.hpp"

#include <cmath>
#include <string>

namespace abcem {

ModelKind SimulationConfig::kind() const {
    if (std::holds_alternative<LLSParams>(model)) return ModelKind::lls;
    if (std::holds_alternative<FWParams>(model)) return ModelKind::fw;
    const auto& cross = std::get<CrossParams>(model);
    if (cross.wealth) return ModelKind::cross_wealth;
    if (mechanism.kind == PriceRuleKind::sde_euler_f1 ||
        mechanism.kind == PriceRuleKind::sde_euler_f2) {
        return ModelKind::cross_sde;
    }
    return ModelKind::cross;
}

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::cross: return "cross";
        case ModelKind::cross_wealth: return "cross_wealth";
        case ModelKind::cross_sde: return "cross_sde";
        case ModelKind::lls: return "lls";
        case ModelKind::fw: return "fw";
    }
    return "?";
}

const char* to_string(PriceRuleKind kind) {
    switch (kind) {
        case PriceRuleKind::cross_exp: return "cross_exp";
        case PriceRuleKind::sde_euler_f1: return "sde_euler_f1";
        case PriceRuleKind::sde_euler_f2: return "sde_euler_f2";
        case PriceRuleKind::fw_linear: return "fw_linear";
        case PriceRuleKind::lls_clearance: return "lls_clearance";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw ConfigMismatch("config: " + what);
}

void validate_cross(const SimulationConfig& c, const CrossParams& p) {
    if (p.A2 <= p.A1 || p.A1 <= 0.0) fail("cross requires 0 < A1 < A2");
    if (p.b2 <= p.b1 || p.b1 <= 0.0) fail("cross requires 0 < b1 < b2");
    if (p.S0 <= 0.0) fail("cross requires S0 > 0");
    if (p.wealth) {
        if (p.wealth->gamma <= 0.0 || p.wealth->gamma > 1.0)
            fail("wealth extension requires gamma in (0, 1]");
        if (p.wealth->r < 0.0) fail("wealth extension requires r >= 0");
        if (p.wealth->w0 <= 0.0) fail("wealth extension requires w0 > 0");
    }
    switch (c.mechanism.kind) {
        case PriceRuleKind::cross_exp:
        case PriceRuleKind::sde_euler_f1:
        case PriceRuleKind::sde_euler_f2:
            break;
        default:
            fail("cross agents require a cross_exp or sde_euler mechanism");
    }
    if (c.mechanism.theta < 0.0) fail("mechanism requires theta >= 0");
}

void validate_lls(const SimulationConfig& c, const LLSParams& p) {
    if (c.mechanism.kind != PriceRuleKind::lls_clearance)
        fail("lls agents require the lls_clearance mechanism");
    if (p.z2 < p.z1) fail("lls requires z1 <= z2");
    if (p.r <= 0.0) fail("lls requires r > 0");
    if (p.sigma_gamma < 0.0) fail("lls requires sigma_gamma >= 0");
    if (p.sigma_h < 0.0) fail("lls requires sigma_h >= 0");
    if (p.n_total <= 0.0) fail("lls requires n_total > 0");
    if (p.gamma0 < 0.0 || p.gamma0 > 1.0) fail("lls requires gamma0 in [0, 1]");
    if (p.w0 <= 0.0) fail("lls requires w0 > 0");
    if (p.S0 <= 0.0) fail("lls requires S0 > 0");
    if (p.D0 <= 0.0) fail("lls requires D0 > 0");
    std::int64_t total = 0;
    for (const auto& g : p.groups) {
        if (g.count <= 0) fail("lls group counts must be positive");
        if (g.memory < 1) fail("lls group memories must be >= 1");
        total += g.count;
    }
    if (!p.groups.empty() && total != c.num_agents)
        fail("lls group counts must sum to num_agents");
    if (p.groups.empty() && p.group_memory_default < 1)
        fail("lls memory must be >= 1");
}

void validate_fw(const SimulationConfig& c, const FWParams& p) {
    if (c.mechanism.kind != PriceRuleKind::fw_linear)
        fail("fw agents require the fw_linear mechanism");
    if (p.phi <= 0.0) fail("fw requires phi > 0");
    if (p.chi <= 0.0) fail("fw requires chi > 0");
    if (p.sigma_f <= 0.0 || p.sigma_c <= 0.0) fail("fw requires positive demand noise");
    if (p.alpha_w < 0.0 || p.alpha_h < 0.0 || p.alpha_m < 0.0)
        fail("fw requires alpha_w, alpha_h, alpha_m >= 0");
    if (p.eta_memory < 0.0 || p.eta_memory > 1.0) fail("fw requires eta_memory in [0, 1]");
    if (p.mu <= 0.0) fail("fw requires mu > 0");
    if (p.switching == FWSwitching::dca && p.beta <= 0.0) fail("fw DCA requires beta > 0");
    if (p.switching == FWSwitching::tpa && p.nu <= 0.0) fail("fw TPA requires nu > 0");
}

} // namespace

void validate(const SimulationConfig& config) {
    if (config.num_agents < 1) fail("num_agents must be >= 1");
    if (config.num_steps < 1) fail("num_steps must be >= 1");
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail("dt must be positive");
    if (config.monte_carlo_runs < 1) fail("monte_carlo_runs must be >= 1");

    if (const auto* p = std::get_if<CrossParams>(&config.model)) {
        validate_cross(config, *p);
    } else if (const auto* p = std::get_if<LLSParams>(&config.model)) {
        validate_lls(config, *p);
    } else {
        validate_fw(config, std::get<FWParams>(config.model));
    }
}

} // namespace abcem
