#pragma once

#include <cstdint>
#include <functional>

namespace abcem {

/// Stream labels for deterministic per-component random streams. Agent- or
/// entity-scoped components combine the label with an index, so two runs with
/// the same master seed replay the exact same draws regardless of how the
/// work is scheduled.
enum class StreamComponent : std::uint64_t {
    cross_agent_init = 1,
    price_noise = 2,
    lls_dividend = 3,
    lls_gamma_noise = 4,
    lls_init_history = 5,
    fw_demand = 6,
    test_oracle = 7,
};

/// Independent random stream: xoshiro256++ seeded through splitmix64 from
/// (master seed, component, index). Distinct ids give statistically
/// independent streams; identical ids replay identical sequences.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, StreamComponent component, std::uint64_t index = 0);
    RngStream(std::uint64_t master_seed, std::uint64_t component, std::uint64_t index = 0);

    /// Stub stream for tests: uniform01() = 0.5, normal() = 0.
    static RngStream degenerate();

    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    /// Uniform on [a, b]; a == b returns a without consuming entropy beyond
    /// the single underlying draw.
    double uniform(double a, double b);

    /// Standard normal via Marsaglia polar method (second value cached).
    double normal();
    double normal(double mean, double stddev);

    bool is_degenerate() const { return degenerate_; }

private:
    RngStream() = default;

    std::uint64_t state_[4] = {0, 0, 0, 0};
    double spare_ = 0.0;
    bool has_spare_ = false;
    bool degenerate_ = false;
};

/// Per-run seed for Monte-Carlo repetition `run_index` under `master_seed`.
/// Depends on nothing else, so all model variants sharing a master seed see
/// identical per-run seeds.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// Factory handing out streams for a single simulation run. The default
/// factory derives every stream from one run seed; tests may substitute
/// degenerate streams.
using StreamFactory = std::function<RngStream(StreamComponent, std::uint64_t)>;

StreamFactory default_streams(std::uint64_t run_seed);
StreamFactory degenerate_streams();

} // namespace abcem
