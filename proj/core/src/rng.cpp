#include "abcem/rng.hpp"

#include <cmath>

namespace abcem {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, StreamComponent component, std::uint64_t index)
    : RngStream(master_seed, static_cast<std::uint64_t>(component), index) {}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t component, std::uint64_t index) {
    // Fold (seed, component, index) into one word, then expand to the full
    // 256-bit state with splitmix64 as recommended for the xoshiro family.
    std::uint64_t x = master_seed;
    x = splitmix64(x) ^ (0x9e3779b97f4a7c15ULL * (component + 1));
    x = splitmix64(x) ^ (0xd1b54a32d192ed03ULL * (index + 1));
    (void)splitmix64(x);
    state_[0] = splitmix64(x);
    state_[1] = splitmix64(x);
    state_[2] = splitmix64(x);
    state_[3] = splitmix64(x);
}

RngStream RngStream::degenerate() {
    RngStream s;
    s.degenerate_ = true;
    return s;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() {
    if (degenerate_) return 0.5;
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
    return a + uniform01() * (b - a);
}

double RngStream::normal() {
    if (degenerate_) return 0.0;
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double RngStream::normal(double mean, double stddev) {
    return mean + stddev * normal();
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    std::uint64_t x = master_seed;
    std::uint64_t h = splitmix64(x) ^ (0xbf58476d1ce4e5b9ULL * (run_index + 1));
    return splitmix64(h);
}

StreamFactory default_streams(std::uint64_t run_seed) {
    return [run_seed](StreamComponent component, std::uint64_t index) {
        return RngStream(run_seed, component, index);
    };
}

StreamFactory degenerate_streams() {
    return [](StreamComponent, std::uint64_t) { return RngStream::degenerate(); };
}

} // namespace abcem
