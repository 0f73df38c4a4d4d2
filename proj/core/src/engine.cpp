#include "abcem/engine.hpp"

#include "abcem/cross.hpp"
#include "abcem/errors.hpp"
#include "abcem/fw.hpp"
#include "abcem/lls.hpp"
#include "abcem/mechanisms.hpp"
#include "abcem/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace abcem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class CrossModel final : public Model {
public:
    CrossModel(const SimulationConfig& config, const StreamFactory& streams)
        : params_(std::get<CrossParams>(config.model)),
          rule_(config.mechanism),
          dt_(config.dt),
          num_agents_(config.num_agents),
          streams_(streams),
          price_noise_(streams(StreamComponent::price_noise, 0)) {
        rule_.dt = dt_;
        if (params_.wealth) {
            extra_columns_ = {"mean_wealth"};
        }
    }

    void init(MarketState& market) override {
        agents_ = init_cross_population(params_, num_agents_, params_.S0, dt_, streams_);
        market.price = params_.S0;
        market.price_prev = params_.S0;
        market.excess_demand = cross_excess_demand(agents_);
        market.excess_demand_prev = market.excess_demand; // dED := 0 at k = 0
        market.step_index = 0;
        update_mean_wealth();
    }

    void step(MarketState& market) override {
        const double ed = market.excess_demand;
        const double ded = ed - market.excess_demand_prev;
        const double s = market.price;
        const double s_prev = market.price_prev;

        double s_next;
        if (rule_.kind == PriceRuleKind::cross_exp) {
            s_next = cross_exp_price(s, ed, ded, rule_, price_noise_);
        } else {
            s_next = sde_euler_price(s, ed, ded, rule_, price_noise_);
        }

        if (params_.wealth) {
            for (CrossAgent& a : agents_) a = update_wealth(a, s, s_prev, *params_.wealth, dt_);
        }

        // Herding accumulates against ED(t_k); switching tests S(t_{k+1}).
        std::int64_t sum = 0;
        for (CrossAgent& a : agents_) {
            a = maybe_switch(accumulate_herding(a, ed, dt_), s_next);
            sum += a.sigma;
        }

        market.price_prev = s;
        market.price = s_next;
        market.excess_demand_prev = ed;
        market.excess_demand = static_cast<double>(sum) / static_cast<double>(agents_.size());
        market.step_index += 1;
        update_mean_wealth();
    }

    const std::vector<std::string>& extra_columns() const override { return extra_columns_; }

    void extras(std::vector<double>& out) const override {
        if (params_.wealth) out.push_back(mean_wealth_);
    }

private:
    void update_mean_wealth() {
        if (!params_.wealth) return;
        scratch_.resize(agents_.size());
        for (std::size_t i = 0; i < agents_.size(); ++i) scratch_[i] = agents_[i].wealth;
        mean_wealth_ = mean(scratch_);
    }

    CrossParams params_;
    PriceRule rule_;
    double dt_;
    std::int64_t num_agents_;
    StreamFactory streams_;
    RngStream price_noise_;
    std::vector<CrossAgent> agents_;
    std::vector<double> scratch_;
    double mean_wealth_ = 0.0;
    std::vector<std::string> extra_columns_;
};

class LLSModel final : public Model {
public:
    LLSModel(const SimulationConfig& config, const StreamFactory& streams)
        : params_(std::get<LLSParams>(config.model)), dt_(config.dt),
          num_agents_(config.num_agents),
          dividend_stream_(streams(StreamComponent::lls_dividend, 0)) {
        market_.z1 = params_.z1;
        market_.z2 = params_.z2;
        market_.r = params_.r;
        market_.n_total = params_.n_total;
        market_.sigma_gamma = params_.sigma_gamma;
        market_.dividend = params_.D0;

        groups_ = params_.groups;
        if (groups_.empty()) {
            groups_.push_back({num_agents_, params_.group_memory_default});
        }
        extra_columns_ = {"dividend", "mean_gamma", "boundary_frac"};
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            extra_columns_.push_back("group_wealth_" + std::to_string(g));
        }

        if (params_.sigma_gamma > 0.0) {
            noise_streams_.reserve(static_cast<std::size_t>(num_agents_));
            for (std::int64_t i = 0; i < num_agents_; ++i) {
                noise_streams_.push_back(
                    streams(StreamComponent::lls_gamma_noise, static_cast<std::uint64_t>(i)));
            }
        }
        history_stream_ = std::make_unique<RngStream>(streams(StreamComponent::lls_init_history, 0));
    }

    void init(MarketState& market) override {
        agents_.clear();
        int max_memory = 1;
        for (const LLSGroup& g : groups_) {
            max_memory = std::max(max_memory, g.memory);
            for (std::int64_t i = 0; i < g.count; ++i) {
                LLSAgent a;
                a.gamma = params_.gamma0;
                a.wealth = params_.w0;
                a.shares = params_.gamma0 * params_.w0 / params_.S0;
                a.memory = g.memory;
                agents_.push_back(a);
            }
        }
        market_.history = init_history(params_.mu_h, params_.sigma_h, max_memory, *history_stream_);
        market_.dividend = params_.D0;

        market.price = params_.S0;
        market.price_prev = params_.S0;
        // Initial clearance residual of the configured portfolio.
        market.excess_demand = static_cast<double>(num_agents_) * params_.gamma0 * params_.w0 /
                                   params_.S0 -
                               params_.n_total;
        market.excess_demand_prev = market.excess_demand;
        market.step_index = 0;
        boundary_frac_ = 0.0;
        refresh_aggregates();
    }

    void step(MarketState& market) override {
        market_.dividend =
            dividend_step(market_.dividend, market_.z1, market_.z2, dt_, dividend_stream_);

        // Pre-noise optimum per memory group from the committed history,
        // then noise drawn once per agent; both fixed before the solve.
        std::int64_t boundary_agents = 0;
        std::size_t offset = 0;
        new_gammas_.resize(agents_.size());
        for (const LLSGroup& g : groups_) {
            const double mu =
                optimal_gamma(history_window(market_.history, g.memory), market_.r, dt_);
            if (mu == 0.01 || mu == 0.99) boundary_agents += g.count;
            const std::size_t count = static_cast<std::size_t>(g.count);
            for (std::size_t i = 0; i < count; ++i) {
                new_gammas_[offset + i] =
                    market_.sigma_gamma > 0.0
                        ? blur_gamma(mu, market_.sigma_gamma, noise_streams_[offset + i])
                        : mu;
            }
            offset += count;
        }

        ClearanceProblem problem(agents_, new_gammas_, market_.dividend, market.price, dt_,
                                 market_.r, market_.n_total);
        const double s_new = problem.solve();
        problem.commit(agents_, s_new);
        // The history the agents extrapolate from records the x(S, t_k, D)
        // return with the new price in the denominator.
        market_.history.push_back(per_step_return(s_new, market.price, market_.dividend, dt_));

        boundary_frac_ =
            static_cast<double>(boundary_agents) / static_cast<double>(agents_.size());
        market.price_prev = market.price;
        market.price = s_new;
        market.excess_demand_prev = market.excess_demand;
        market.excess_demand = problem.last_residual();
        market.step_index += 1;
        refresh_aggregates();
    }

    const std::vector<std::string>& extra_columns() const override { return extra_columns_; }

    void extras(std::vector<double>& out) const override {
        out.push_back(market_.dividend);
        out.push_back(mean_gamma_);
        out.push_back(boundary_frac_);
        out.insert(out.end(), group_wealth_.begin(), group_wealth_.end());
    }

private:
    void refresh_aggregates() {
        scratch_.resize(agents_.size());
        for (std::size_t i = 0; i < agents_.size(); ++i) scratch_[i] = agents_[i].gamma;
        mean_gamma_ = mean(scratch_);

        group_wealth_.assign(groups_.size(), 0.0);
        std::size_t offset = 0;
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const std::size_t count = static_cast<std::size_t>(groups_[g].count);
            for (std::size_t i = 0; i < count; ++i) scratch_[i] = agents_[offset + i].wealth;
            group_wealth_[g] = pairwise_sum(std::span<const double>(scratch_.data(), count));
            offset += count;
        }
    }

    LLSParams params_;
    double dt_;
    std::int64_t num_agents_;
    std::vector<LLSGroup> groups_;
    LLSMarket market_;
    std::vector<LLSAgent> agents_;
    RngStream dividend_stream_;
    std::vector<RngStream> noise_streams_;
    std::unique_ptr<RngStream> history_stream_;
    std::vector<double> new_gammas_;
    std::vector<double> scratch_;
    std::vector<double> group_wealth_;
    double mean_gamma_ = 0.0;
    double boundary_frac_ = 0.0;
    std::vector<std::string> extra_columns_;
};

class FWModel final : public Model {
public:
    FWModel(const SimulationConfig& config, const StreamFactory& streams)
        : params_(std::get<FWParams>(config.model)),
          demand_stream_(streams(StreamComponent::fw_demand, 0)) {
        extra_columns_ = {"n_c", "a", "wealth_diff"};
    }

    void init(MarketState& market) override {
        state_ = FWState{};
        state_.P = params_.P0;
        state_.P_prev = params_.P0;
        state_.a = attractiveness(state_, params_);

        market.price = params_.P0; // log-price for FW
        market.price_prev = params_.P0;
        market.excess_demand = 0.0; // no demands drawn yet
        market.excess_demand_prev = 0.0;
        market.step_index = 0;
    }

    void step(MarketState& market) override {
        // Price moves on last step's excess demand, as printed.
        const double p_old = state_.P;
        const double p_new = fw_price_update(p_old, params_.mu, market.excess_demand);

        const double a_prev = state_.a;
        auto [n_f, n_c] = params_.switching == FWSwitching::dca
                              ? dca_fractions(a_prev, params_.beta)
                              : tpa_fractions(state_, a_prev, params_.nu);

        auto [w_f, w_c] =
            fw_wealth_update(state_, params_, p_new, p_old, state_.d_f_lag2, state_.d_c_lag2);

        state_.P_prev = p_old;
        state_.P = p_new;
        state_.n_f = n_f;
        state_.n_c = n_c;
        state_.w_f = w_f;
        state_.w_c = w_c;

        auto [d_f, d_c] = fw_demands(state_, params_, demand_stream_);
        const double ed = fw_excess_demand(state_, d_f, d_c);
        state_.d_f_lag2 = state_.d_f_lag1;
        state_.d_f_lag1 = d_f;
        state_.d_c_lag2 = state_.d_c_lag1;
        state_.d_c_lag1 = d_c;
        state_.a = attractiveness(state_, params_);

        market.price_prev = p_old;
        market.price = p_new;
        market.excess_demand_prev = market.excess_demand;
        market.excess_demand = ed;
        market.step_index += 1;
    }

    const std::vector<std::string>& extra_columns() const override { return extra_columns_; }

    void extras(std::vector<double>& out) const override {
        out.push_back(state_.n_c);
        out.push_back(state_.a);
        out.push_back(state_.w_f - state_.w_c);
    }

private:
    FWParams params_;
    RngStream demand_stream_;
    FWState state_;
    std::vector<std::string> extra_columns_;
};

std::vector<std::string> record_columns(const SimulationConfig& config, const Model& model) {
    std::vector<std::string> cols = {"step", "time", "price"};
    if (config.kind() == ModelKind::fw) cols.push_back("logprice");
    cols.push_back("excess_demand");
    const auto& extras = model.extra_columns();
    cols.insert(cols.end(), extras.begin(), extras.end());
    return cols;
}

} // namespace

std::unique_ptr<Model> make_model(const SimulationConfig& config, const StreamFactory& streams) {
    switch (config.kind()) {
        case ModelKind::lls:
            return std::make_unique<LLSModel>(config, streams);
        case ModelKind::fw:
            return std::make_unique<FWModel>(config, streams);
        default:
            return std::make_unique<CrossModel>(config, streams);
    }
}

TimeSeriesRecord run_simulation(const SimulationConfig& config, const StreamFactory& streams) {
    validate(config);
    auto model = make_model(config, streams);
    MarketState market;
    model->init(market);

    const bool fw = config.kind() == ModelKind::fw;
    const std::vector<std::string> full_columns = record_columns(config, *model);

    // Optional column filter from the recorder configuration.
    std::vector<std::size_t> selected;
    std::vector<std::string> columns = full_columns;
    if (!config.recorder_columns.empty()) {
        columns.clear();
        for (const std::string& name : config.recorder_columns) {
            const auto it = std::find(full_columns.begin(), full_columns.end(), name);
            if (it == full_columns.end()) {
                throw ConfigMismatch("recorder: unknown column '" + name + "'");
            }
            selected.push_back(static_cast<std::size_t>(it - full_columns.begin()));
            columns.push_back(name);
        }
    }

    TimeSeriesRecord record(columns);
    std::vector<double> row;
    std::vector<double> filtered;
    auto append = [&]() {
        row.clear();
        row.push_back(static_cast<double>(market.step_index));
        row.push_back(static_cast<double>(market.step_index) * config.dt);
        row.push_back(fw ? std::exp(market.price) : market.price);
        if (fw) row.push_back(market.price);
        row.push_back(market.excess_demand);
        model->extras(row);
        if (selected.empty()) {
            record.append_row(row);
        } else {
            filtered.clear();
            for (std::size_t idx : selected) filtered.push_back(row[idx]);
            record.append_row(filtered);
        }
    };

    append();
    for (std::int64_t k = 1; k <= config.num_steps; ++k) {
        model->step(market);
        if (fw) {
            if (!std::isfinite(market.price)) {
                throw NonPositivePrice("fw log-price became non-finite at step " +
                                       std::to_string(k));
            }
        } else if (!(market.price > 0.0)) {
            throw NonPositivePrice("price became non-positive at step " + std::to_string(k));
        }
        append();
    }
    return record;
}

TimeSeriesRecord run_simulation(const SimulationConfig& config) {
    return run_simulation(config, default_streams(config.seed));
}

ReturnSeries record_returns(const SimulationConfig& config, const TimeSeriesRecord& record) {
    if (config.kind() == ModelKind::fw) {
        return diff_series(record.column("logprice"));
    }
    return log_returns(record.column("price"));
}

RunStats run_stats(const SimulationConfig& config, const TimeSeriesRecord& record, int max_lag) {
    RunStats rs;
    rs.seed = config.seed;
    const ReturnSeries returns = record_returns(config, record);
    const int lag = std::min<int>(max_lag, static_cast<int>(returns.size()) - 1);

    try {
        rs.stats = compute_stats(returns, lag, std::min<int>(100, static_cast<int>(returns.size())));
    } catch (const std::runtime_error&) {
        rs.stats = StatsReport{};
        rs.stats.excess_kurtosis = kNaN;
        rs.stats.hill = kNaN;
        rs.stats.n = returns.size();
    }

    if (!rs.stats.acf_raw.empty()) {
        std::vector<double> abs_raw(rs.stats.acf_raw.size());
        for (std::size_t i = 0; i < abs_raw.size(); ++i) abs_raw[i] = std::abs(rs.stats.acf_raw[i]);
        rs.mean_abs_acf_raw = mean(abs_raw);
        rs.mean_acf_abs = mean(rs.stats.acf_abs);
    }

    const std::size_t last = record.rows() - 1;
    rs.final_price = record.at(last, static_cast<std::size_t>(record.column_index("price")));

    rs.chartist_share = kNaN;
    rs.boundary_fraction = kNaN;
    rs.max_rel_residual = kNaN;
    rs.final_wealth = kNaN;

    const auto mean_tail = [&](const std::string& name) {
        const auto col = record.column(name);
        return mean(std::span<const double>(col.data() + 1, col.size() - 1));
    };

    if (record.column_index("n_c") >= 0) rs.chartist_share = mean_tail("n_c");
    if (record.column_index("boundary_frac") >= 0) rs.boundary_fraction = mean_tail("boundary_frac");
    if (record.column_index("mean_wealth") >= 0) {
        rs.final_wealth = record.at(last, static_cast<std::size_t>(record.column_index("mean_wealth")));
    }
    if (config.kind() == ModelKind::lls) {
        const auto ed = record.column("excess_demand");
        double worst = 0.0;
        for (double v : ed) worst = std::max(worst, std::abs(v));
        rs.max_rel_residual = worst / std::get<LLSParams>(config.model).n_total;
    }
    return rs;
}

MonteCarloResult run_monte_carlo(const SimulationConfig& config, int runs, int jobs) {
    return run_monte_carlo(config, runs, jobs, {});
}

MonteCarloResult run_monte_carlo(
    const SimulationConfig& config, int runs, int jobs,
    const std::function<void(int, const TimeSeriesRecord&)>& sink) {
    if (runs < 1) throw ConfigMismatch("run_monte_carlo: runs must be >= 1");
    validate(config);

    MonteCarloResult result;
    result.runs.resize(static_cast<std::size_t>(runs));

    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    int first_error_run = -1;

    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= runs) return;
            try {
                SimulationConfig run_config = config;
                run_config.seed = derive_run_seed(config.seed, static_cast<std::uint64_t>(r));
                const TimeSeriesRecord record = run_simulation(run_config);
                result.runs[static_cast<std::size_t>(r)] = run_stats(run_config, record);
                if (sink) sink(r, record);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error || r < first_error_run) {
                    first_error = std::current_exception();
                    first_error_run = r;
                }
                return;
            }
        }
    };

    const int workers = std::max(1, std::min(jobs, runs));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("run " + std::to_string(first_error_run) + ": " + e.what());
        }
    }

    // Arithmetic means across runs; ACF vectors element-wise.
    RunStats& m = result.mean;
    m.seed = config.seed;
    const double inv = 1.0 / static_cast<double>(runs);
    std::size_t lag_count = result.runs.front().stats.acf_raw.size();
    m.stats.acf_raw.assign(lag_count, 0.0);
    m.stats.acf_abs.assign(lag_count, 0.0);
    for (const RunStats& rs : result.runs) {
        m.stats.excess_kurtosis += rs.stats.excess_kurtosis * inv;
        m.stats.hill += rs.stats.hill * inv;
        m.mean_abs_acf_raw += rs.mean_abs_acf_raw * inv;
        m.mean_acf_abs += rs.mean_acf_abs * inv;
        m.final_price += rs.final_price * inv;
        m.chartist_share += rs.chartist_share * inv;
        m.boundary_fraction += rs.boundary_fraction * inv;
        m.max_rel_residual += rs.max_rel_residual * inv;
        m.final_wealth += rs.final_wealth * inv;
        for (std::size_t l = 0; l < lag_count && l < rs.stats.acf_raw.size(); ++l) {
            m.stats.acf_raw[l] += rs.stats.acf_raw[l] * inv;
            m.stats.acf_abs[l] += rs.stats.acf_abs[l] * inv;
        }
    }
    m.stats.n = result.runs.front().stats.n;
    return result;
}

} // namespace abcem
