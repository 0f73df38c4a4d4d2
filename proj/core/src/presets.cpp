#include "abcem/presets.hpp"

#include "abcem/config_text.hpp"
#include "abcem/errors.hpp"

#include <algorithm>

namespace abcem {

namespace {

SimulationConfig cross_base() {
    SimulationConfig c;
    c.name = "cross-base";
    c.num_agents = 1000;
    c.num_steps = 10000;
    c.dt = 4e-5;
    c.seed = 1;
    c.seed_set = true;
    CrossParams p;
    p.A1 = 0.1;
    p.A2 = 0.3;
    p.b1 = 25;
    p.b2 = 100;
    p.S0 = 1.0;
    c.model = p;
    c.mechanism = {PriceRuleKind::cross_exp, 0.2, 0.0, c.dt, false};
    return c;
}

SimulationConfig cross_theta2() {
    SimulationConfig c = cross_base();
    c.name = "cross-theta2";
    c.mechanism.theta = 2.0;
    return c;
}

SimulationConfig cross_wealth() {
    SimulationConfig c = cross_base();
    c.name = "cross-wealth";
    auto p = std::get<CrossParams>(c.model);
    p.wealth = WealthExtension{0.01, 0.5, 1.0};
    c.model = p;
    return c;
}

SimulationConfig sde(PriceRuleKind kind, const std::string& name) {
    SimulationConfig c = cross_base();
    c.name = name;
    c.mechanism.kind = kind;
    return c;
}

SimulationConfig lls_basic(double sigma_gamma, const std::string& name) {
    SimulationConfig c;
    c.name = name;
    c.num_agents = 100;
    c.num_steps = 200;
    c.dt = 1.0;
    c.seed = 1;
    c.seed_set = true;
    LLSParams p;
    p.r = 0.04;
    p.z1 = 0.05;
    p.z2 = 0.05;
    p.sigma_gamma = sigma_gamma;
    p.mu_h = 0.0415;
    p.sigma_h = 0.003;
    p.n_total = 10000; // 100 shares per agent
    p.gamma0 = 0.4;
    p.w0 = 1000;
    p.S0 = 4;
    p.D0 = 0.2;
    p.group_memory_default = 15;
    c.model = p;
    c.mechanism = {PriceRuleKind::lls_clearance, 0.0, 0.0, c.dt, false};
    return c;
}

SimulationConfig lls_3groups() {
    SimulationConfig c;
    c.name = "lls-3groups";
    c.num_agents = 99;
    c.num_steps = 20000;
    c.dt = 1.0;
    c.seed = 1;
    c.seed_set = true;
    LLSParams p;
    p.r = 0.0001;
    p.z1 = 0.00015;
    p.z2 = 0.00015;
    p.sigma_gamma = 0.2;
    p.mu_h = 0.0415;
    p.sigma_h = 0.003;
    p.n_total = 9900;
    p.gamma0 = 0.4;
    p.w0 = 1000;
    p.S0 = 4;
    p.D0 = 0.004;
    p.groups = {{33, 10}, {33, 141}, {33, 256}};
    c.model = p;
    c.mechanism = {PriceRuleKind::lls_clearance, 0.0, 0.0, c.dt, false};
    return c;
}

SimulationConfig fw(const std::string& name, FWSwitching sw, double phi, double chi, double eta,
                    double alpha_w, double alpha_0, double alpha_h, double alpha_m, double sigma_f,
                    double sigma_c, std::uint64_t seed) {
    SimulationConfig c;
    c.name = name;
    c.num_agents = 2; // two representative agents
    c.num_steps = 7000;
    c.dt = 1.0;
    c.seed = seed;
    c.seed_set = true;
    FWParams p;
    p.switching = sw;
    p.phi = phi;
    p.chi = chi;
    p.eta_memory = eta;
    p.alpha_w = alpha_w;
    p.alpha_0 = alpha_0;
    p.alpha_h = alpha_h;
    p.alpha_m = alpha_m;
    p.sigma_f = sigma_f;
    p.sigma_c = sigma_c;
    p.beta = 1.0;
    p.nu = 0.05;
    p.mu = 0.01;
    p.P_f = 1.0;
    p.P0 = 1.0;
    c.model = p;
    c.mechanism = {PriceRuleKind::fw_linear, 0.0, 0.0, c.dt, false};
    return c;
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "cross-base", "cross-theta2", "cross-wealth", "sde-f1",  "sde-f2",
        "lls-basic",  "lls-noisy",    "lls-3groups",  "dca-w",   "dca-wp",
        "dca-whp",    "dca-hpm",      "tpa-w",        "tpa-wp",  "tpa-hpm",
    };
    return names;
}

bool is_preset(const std::string& name) {
    const auto& names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

SimulationConfig preset(const std::string& name) {
    if (name == "cross-base") return cross_base();
    if (name == "cross-theta2") return cross_theta2();
    if (name == "cross-wealth") return cross_wealth();
    if (name == "sde-f1") return sde(PriceRuleKind::sde_euler_f1, "sde-f1");
    if (name == "sde-f2") return sde(PriceRuleKind::sde_euler_f2, "sde-f2");
    if (name == "lls-basic") return lls_basic(0.0, "lls-basic");
    if (name == "lls-noisy") return lls_basic(0.2, "lls-noisy");
    if (name == "lls-3groups") return lls_3groups();
    // Franke-Westerhoff variants, one preset per parameterization.
    if (name == "dca-w")
        return fw("dca-w", FWSwitching::dca, 1.0, 1.2, 0.991, 1580, 0.0, 0.0, 0.0, 0.681, 1.724, 1);
    if (name == "dca-wp")
        return fw("dca-wp", FWSwitching::dca, 1.0, 0.9, 0.987, 2668, 2.1, 0.0, 0.0, 0.752, 1.726, 1);
    if (name == "dca-whp")
        return fw("dca-whp", FWSwitching::dca, 1.0, 0.9, 0.987, 2668, 2.1, 1.28, 0.0, 0.741, 2.087,
                  1);
    if (name == "dca-hpm")
        return fw("dca-hpm", FWSwitching::dca, 0.12, 1.5, 0.0, 0.0, -0.327, 1.79, 18.43, 0.758,
                  2.087, 2661);
    if (name == "tpa-w")
        return fw("tpa-w", FWSwitching::tpa, 1.15, 0.81, 0.987, 1041, 0.0, 0.0, 0.0, 0.715, 1.528,
                  1);
    if (name == "tpa-wp")
        return fw("tpa-wp", FWSwitching::tpa, 1.0, 0.83, 0.987, 2668, 0.376, 0.0, 0.0, 0.736, 1.636,
                  1);
    if (name == "tpa-hpm")
        return fw("tpa-hpm", FWSwitching::tpa, 0.18, 2.3, 0.987, 0.0, -0.161, 1.3, 12.5, 0.79, 1.9,
                  2661);
    throw ConfigMismatch("unknown preset '" + name + "'");
}

std::string preset_text(const std::string& name) {
    return serialize_config(preset(name));
}

} // namespace abcem
