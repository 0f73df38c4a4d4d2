#include "abcem/config_text.hpp"

#include "abcem/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace abcem {

std::string format_double(double value) {
    char buf[64];
    // Integral values within the exactly-representable range print as plain
    // integers; everything else takes the shortest round-tripping form.
    if (value == static_cast<double>(static_cast<long long>(value)) &&
        value > -1e15 && value < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
        return buf;
    }
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

namespace {

struct RawEntry {
    std::string key;
    std::string value;
    int line = 0;
    bool used = false;
};

struct RawBlock {
    std::string name;
    int line = 0;
    std::vector<RawEntry> entries;
    std::vector<RawBlock> children;
    bool used = false;
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw ParseError("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

RawBlock parse_tree(std::string_view text) {
    RawBlock root;
    std::vector<RawBlock*> stack = {&root};
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line == "}") {
            if (stack.size() == 1) parse_fail(line_no, "unmatched '}'");
            stack.pop_back();
            continue;
        }
        if (line.back() == '{') {
            const std::string_view name = trim(line.substr(0, line.size() - 1));
            if (!valid_name(name)) parse_fail(line_no, "invalid block name");
            stack.back()->children.push_back(RawBlock{std::string(name), line_no, {}, {}, false});
            stack.push_back(&stack.back()->children.back());
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            parse_fail(line_no, "expected 'key = value', 'name {', or '}'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!valid_name(key)) parse_fail(line_no, "invalid key name");
        if (value.empty()) parse_fail(line_no, "missing value for key '" + std::string(key) + "'");
        for (const RawEntry& e : stack.back()->entries) {
            if (e.key == key) parse_fail(line_no, "duplicate key '" + std::string(key) + "'");
        }
        stack.back()->entries.push_back(RawEntry{std::string(key), std::string(value), line_no});
    }
    if (stack.size() != 1) parse_fail(line_no, "unterminated block");
    return root;
}

/// Typed, strict accessor over one raw block: every key and child block must
/// be consumed, otherwise finish() reports it as unknown.
class Cursor {
public:
    Cursor(RawBlock& block, std::string path) : block_(block), path_(std::move(path)) {}

    RawEntry* find(const std::string& key) {
        for (RawEntry& e : block_.entries) {
            if (e.key == key) {
                e.used = true;
                return &e;
            }
        }
        return nullptr;
    }

    bool has(const std::string& key) {
        for (const RawEntry& e : block_.entries) {
            if (e.key == key) return true;
        }
        return false;
    }

    double require_double(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) missing(key);
        return to_double(*e);
    }

    double optional_double(const std::string& key, double fallback) {
        RawEntry* e = find(key);
        return e ? to_double(*e) : fallback;
    }

    std::int64_t require_int(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) missing(key);
        return to_int(*e);
    }

    std::int64_t optional_int(const std::string& key, std::int64_t fallback) {
        RawEntry* e = find(key);
        return e ? to_int(*e) : fallback;
    }

    std::uint64_t optional_uint(const std::string& key, std::uint64_t fallback, bool& present) {
        RawEntry* e = find(key);
        present = e != nullptr;
        if (!e) return fallback;
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (ec != std::errc{} || p != e->value.data() + e->value.size()) {
            parse_fail(e->line, "expected an unsigned integer for '" + key + "'");
        }
        return v;
    }

    std::string require_word(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) missing(key);
        return e->value;
    }

    bool optional_bool(const std::string& key, bool fallback) {
        RawEntry* e = find(key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        parse_fail(e->line, "expected true/false for '" + key + "'");
    }

    std::vector<std::string> optional_list(const std::string& key) {
        RawEntry* e = find(key);
        std::vector<std::string> out;
        if (!e) return out;
        std::string item;
        std::stringstream ss(e->value);
        while (std::getline(ss, item, ',')) {
            const std::string_view t = trim(item);
            if (!t.empty()) out.emplace_back(t);
        }
        if (out.empty()) parse_fail(e->line, "empty list for '" + key + "'");
        return out;
    }

    std::vector<std::int64_t> optional_int_list(const std::string& key) {
        const int line = line_of(key);
        std::vector<std::int64_t> out;
        for (const std::string& s : optional_list(key)) {
            std::int64_t v = 0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size()) {
                parse_fail(line, "expected integers in '" + key + "'");
            }
            out.push_back(v);
        }
        return out;
    }

    RawBlock* child(const std::string& name) {
        for (RawBlock& b : block_.children) {
            if (b.name == name) {
                b.used = true;
                return &b;
            }
        }
        return nullptr;
    }

    int line() const { return block_.line; }

    void finish() {
        for (const RawEntry& e : block_.entries) {
            if (!e.used) {
                parse_fail(e.line, "unknown key '" + e.key + "' in " + path_);
            }
        }
        for (const RawBlock& b : block_.children) {
            if (!b.used) {
                parse_fail(b.line, "unknown block '" + b.name + "' in " + path_);
            }
        }
    }

private:
    [[noreturn]] void missing(const std::string& key) {
        parse_fail(block_.line == 0 ? 1 : block_.line,
                   "missing required key '" + key + "' in " + path_);
    }

    int line_of(const std::string& key) const {
        for (const RawEntry& e : block_.entries) {
            if (e.key == key) return e.line;
        }
        return block_.line;
    }

    double to_double(const RawEntry& e) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc{} || p != e.value.data() + e.value.size()) {
            parse_fail(e.line, "expected a number for '" + e.key + "'");
        }
        return v;
    }

    std::int64_t to_int(const RawEntry& e) {
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc{} || p != e.value.data() + e.value.size()) {
            parse_fail(e.line, "expected an integer for '" + e.key + "'");
        }
        return v;
    }

    RawBlock& block_;
    std::string path_;
};

PriceRuleKind parse_rule_kind(const std::string& word, int line) {
    if (word == "cross_exp") return PriceRuleKind::cross_exp;
    if (word == "sde_euler_f1") return PriceRuleKind::sde_euler_f1;
    if (word == "sde_euler_f2") return PriceRuleKind::sde_euler_f2;
    if (word == "fw_linear") return PriceRuleKind::fw_linear;
    if (word == "lls_clearance") return PriceRuleKind::lls_clearance;
    parse_fail(line, "unknown mechanism kind '" + word + "'");
}

CrossParams parse_cross_block(RawBlock& raw) {
    Cursor c(raw, "block 'cross'");
    CrossParams p;
    p.A1 = c.require_double("A1");
    p.A2 = c.require_double("A2");
    p.b1 = c.require_double("b1");
    p.b2 = c.require_double("b2");
    p.S0 = c.optional_double("S0", 1.0);
    if (RawBlock* w = c.child("wealth")) {
        Cursor cw(*w, "block 'wealth'");
        WealthExtension we;
        we.r = cw.require_double("r");
        we.gamma = cw.require_double("gamma");
        we.w0 = cw.optional_double("w0", 1.0);
        cw.finish();
        p.wealth = we;
    }
    c.finish();
    return p;
}

LLSParams parse_lls_block(RawBlock& raw) {
    Cursor c(raw, "block 'lls'");
    LLSParams p;
    p.r = c.require_double("r");
    p.z1 = c.require_double("z1");
    p.z2 = c.require_double("z2");
    p.sigma_gamma = c.require_double("sigma_gamma");
    p.mu_h = c.require_double("mu_h");
    p.sigma_h = c.require_double("sigma_h");
    p.n_total = c.require_double("n_total");
    p.gamma0 = c.optional_double("gamma0", 0.4);
    p.w0 = c.optional_double("w0", 1000.0);
    p.S0 = c.optional_double("S0", 4.0);
    p.D0 = c.optional_double("D0", 0.2);

    const bool has_groups = c.has("group_counts") || c.has("group_memories");
    if (has_groups) {
        const auto counts = c.optional_int_list("group_counts");
        const auto memories = c.optional_int_list("group_memories");
        if (counts.size() != memories.size() || counts.empty()) {
            parse_fail(c.line(), "group_counts and group_memories must be equal-length lists");
        }
        for (std::size_t i = 0; i < counts.size(); ++i) {
            p.groups.push_back({counts[i], static_cast<int>(memories[i])});
        }
    } else {
        p.group_memory_default = static_cast<int>(c.require_int("memory"));
    }
    c.finish();
    return p;
}

FWParams parse_fw_block(RawBlock& raw, FWSwitching switching) {
    const std::string label =
        switching == FWSwitching::dca ? "block 'fw_dca'" : "block 'fw_tpa'";
    Cursor c(raw, label);
    FWParams p;
    p.switching = switching;
    p.phi = c.require_double("phi");
    p.chi = c.require_double("chi");
    p.sigma_f = c.require_double("sigma_f");
    p.sigma_c = c.require_double("sigma_c");
    p.alpha_w = c.require_double("alpha_w");
    p.alpha_0 = c.require_double("alpha_0");
    p.alpha_h = c.require_double("alpha_h");
    p.alpha_m = c.require_double("alpha_m");
    if (switching == FWSwitching::dca) {
        p.beta = c.require_double("beta");
    } else {
        p.nu = c.require_double("nu");
    }
    p.eta_memory = c.require_double("eta_memory");
    p.mu = c.require_double("mu");
    p.P_f = c.require_double("P_f");
    p.P0 = c.optional_double("P0", p.P_f);
    c.finish();
    return p;
}

} // namespace

SimulationConfig parse_config(std::string_view text, std::string_view name) {
    RawBlock root = parse_tree(text);
    Cursor c(root, "top level");

    SimulationConfig cfg;
    if (RawEntry* e = c.find("name")) cfg.name = e->value;
    if (!name.empty()) cfg.name = std::string(name);

    const std::string model = c.require_word("model");
    cfg.num_agents = c.require_int("num_agents");
    cfg.num_steps = c.require_int("num_steps");
    cfg.dt = c.require_double("dt");
    cfg.seed = c.optional_uint("seed", 1, cfg.seed_set);
    cfg.monte_carlo_runs = static_cast<int>(c.optional_int("monte_carlo_runs", 1));

    RawBlock* mech = c.child("mechanism");
    if (!mech) parse_fail(1, "missing 'mechanism' block");
    {
        Cursor cm(*mech, "block 'mechanism'");
        cfg.mechanism.kind = parse_rule_kind(cm.require_word("kind"), cm.line());
        cfg.mechanism.kappa = cm.optional_double("kappa", 0.0);
        cfg.mechanism.theta = cm.optional_double("theta", 0.0);
        cfg.mechanism.appendix_form = cm.optional_bool("appendix_form", false);
        cm.finish();
    }
    cfg.mechanism.dt = cfg.dt;

    if (model == "cross") {
        RawBlock* b = c.child("cross");
        if (!b) parse_fail(1, "model = cross requires a 'cross' block");
        cfg.model = parse_cross_block(*b);
    } else if (model == "lls") {
        RawBlock* b = c.child("lls");
        if (!b) parse_fail(1, "model = lls requires an 'lls' block");
        cfg.model = parse_lls_block(*b);
    } else if (model == "fw") {
        RawBlock* dca = c.child("fw_dca");
        RawBlock* tpa = c.child("fw_tpa");
        if (!!dca == !!tpa) {
            parse_fail(1, "model = fw requires exactly one of 'fw_dca' / 'fw_tpa'");
        }
        cfg.model = dca ? parse_fw_block(*dca, FWSwitching::dca)
                        : parse_fw_block(*tpa, FWSwitching::tpa);
    } else {
        parse_fail(1, "unknown model '" + model + "' (expected cross, lls, or fw)");
    }

    if (RawBlock* rec = c.child("recorder")) {
        Cursor cr(*rec, "block 'recorder'");
        cfg.recorder_columns = cr.optional_list("columns");
        cr.finish();
    }

    c.finish();
    validate(cfg);
    return cfg;
}

namespace {

void emit(std::string& out, int indent, const std::string& key, const std::string& value) {
    out.append(static_cast<std::size_t>(indent), ' ');
    out += key;
    out += " = ";
    out += value;
    out += '\n';
}

void emit(std::string& out, int indent, const std::string& key, double value) {
    emit(out, indent, key, format_double(value));
}

} // namespace

std::string serialize_config(const SimulationConfig& cfg) {
    std::string out;
    emit(out, 0, "name", cfg.name);
    const char* model = std::holds_alternative<LLSParams>(cfg.model)  ? "lls"
                        : std::holds_alternative<FWParams>(cfg.model) ? "fw"
                                                                      : "cross";
    emit(out, 0, "model", std::string(model));
    emit(out, 0, "num_agents", std::to_string(cfg.num_agents));
    emit(out, 0, "num_steps", std::to_string(cfg.num_steps));
    emit(out, 0, "dt", cfg.dt);
    if (cfg.seed_set) emit(out, 0, "seed", std::to_string(cfg.seed));
    if (cfg.monte_carlo_runs != 1) {
        emit(out, 0, "monte_carlo_runs", std::to_string(cfg.monte_carlo_runs));
    }

    if (const auto* p = std::get_if<CrossParams>(&cfg.model)) {
        out += "\ncross {\n";
        emit(out, 2, "A1", p->A1);
        emit(out, 2, "A2", p->A2);
        emit(out, 2, "b1", p->b1);
        emit(out, 2, "b2", p->b2);
        emit(out, 2, "S0", p->S0);
        if (p->wealth) {
            out += "  wealth {\n";
            emit(out, 4, "r", p->wealth->r);
            emit(out, 4, "gamma", p->wealth->gamma);
            emit(out, 4, "w0", p->wealth->w0);
            out += "  }\n";
        }
        out += "}\n";
    } else if (const auto* p = std::get_if<LLSParams>(&cfg.model)) {
        out += "\nlls {\n";
        emit(out, 2, "r", p->r);
        emit(out, 2, "z1", p->z1);
        emit(out, 2, "z2", p->z2);
        emit(out, 2, "sigma_gamma", p->sigma_gamma);
        emit(out, 2, "mu_h", p->mu_h);
        emit(out, 2, "sigma_h", p->sigma_h);
        emit(out, 2, "n_total", p->n_total);
        emit(out, 2, "gamma0", p->gamma0);
        emit(out, 2, "w0", p->w0);
        emit(out, 2, "S0", p->S0);
        emit(out, 2, "D0", p->D0);
        if (p->groups.empty()) {
            emit(out, 2, "memory", std::to_string(p->group_memory_default));
        } else {
            std::string counts, memories;
            for (const LLSGroup& g : p->groups) {
                if (!counts.empty()) {
                    counts += ", ";
                    memories += ", ";
                }
                counts += std::to_string(g.count);
                memories += std::to_string(g.memory);
            }
            emit(out, 2, "group_counts", counts);
            emit(out, 2, "group_memories", memories);
        }
        out += "}\n";
    } else {
        const auto& fw = std::get<FWParams>(cfg.model);
        out += fw.switching == FWSwitching::dca ? "\nfw_dca {\n" : "\nfw_tpa {\n";
        emit(out, 2, "phi", fw.phi);
        emit(out, 2, "chi", fw.chi);
        emit(out, 2, "sigma_f", fw.sigma_f);
        emit(out, 2, "sigma_c", fw.sigma_c);
        emit(out, 2, "alpha_w", fw.alpha_w);
        emit(out, 2, "alpha_0", fw.alpha_0);
        emit(out, 2, "alpha_h", fw.alpha_h);
        emit(out, 2, "alpha_m", fw.alpha_m);
        if (fw.switching == FWSwitching::dca) {
            emit(out, 2, "beta", fw.beta);
        } else {
            emit(out, 2, "nu", fw.nu);
        }
        emit(out, 2, "eta_memory", fw.eta_memory);
        emit(out, 2, "mu", fw.mu);
        emit(out, 2, "P_f", fw.P_f);
        emit(out, 2, "P0", fw.P0);
        out += "}\n";
    }

    out += "\nmechanism {\n";
    emit(out, 2, "kind", std::string(to_string(cfg.mechanism.kind)));
    if (cfg.mechanism.kind == PriceRuleKind::cross_exp ||
        cfg.mechanism.kind == PriceRuleKind::sde_euler_f1 ||
        cfg.mechanism.kind == PriceRuleKind::sde_euler_f2) {
        emit(out, 2, "kappa", cfg.mechanism.kappa);
        emit(out, 2, "theta", cfg.mechanism.theta);
        if (cfg.mechanism.appendix_form) emit(out, 2, "appendix_form", std::string("true"));
    }
    out += "}\n";

    if (!cfg.recorder_columns.empty()) {
        out += "\nrecorder {\n";
        std::string cols;
        for (const std::string& name : cfg.recorder_columns) {
            if (!cols.empty()) cols += ", ";
            cols += name;
        }
        emit(out, 2, "columns", cols);
        out += "}\n";
    }
    return out;
}

} // namespace abcem
