#include "abcem/stats.hpp"

#include "abcem/errors.hpp"
#include "abcem/numeric.hpp"
#include "abcem/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace abcem;

namespace {

ReturnSeries series(std::vector<double> v) {
    return ReturnSeries{std::move(v)};
}

ReturnSeries normal_sample(int n, std::uint64_t seed) {
    RngStream rng(seed, StreamComponent::test_oracle);
    ReturnSeries s;
    s.values.resize(static_cast<std::size_t>(n));
    for (double& v : s.values) v = rng.normal();
    return s;
}

} // namespace

TEST_CASE("log returns") {
    CHECK(log_returns(std::vector<double>{2.0, 2.0, 2.0}).values ==
          std::vector<double>{0.0, 0.0});
    const double e = std::exp(1.0);
    const auto r = log_returns(std::vector<double>{1.0, e, e * e});
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(log_returns(std::vector<double>{4.0, 4.2}).values[0] ==
          doctest::Approx(0.048790164169432).epsilon(1e-12));
    CHECK_THROWS_AS(log_returns(std::vector<double>{1.0, -2.0}), NonPositivePrice);
    CHECK_THROWS_AS(log_returns(std::vector<double>{1.0}), InsufficientSample);
}

TEST_CASE("autocorrelation") {
    SUBCASE("lag zero is one exactly") {
        const auto acf = autocorrelation(normal_sample(500, 1), 5);
        CHECK(acf[0] == 1.0);
    }
    SUBCASE("alternating series is anti-correlated at lag 1") {
        ReturnSeries s;
        for (int i = 0; i < 10000; ++i) s.values.push_back(i % 2 == 0 ? 1.0 : -1.0);
        const auto acf = autocorrelation(s, 2);
        CHECK(std::abs(acf[1] - (-1.0)) < 1e-3);
        CHECK(acf[2] == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("iid noise stays inside the asymptotic null band") {
        const int n = 100000;
        const auto acf = autocorrelation(normal_sample(n, 2), 20);
        const double band = 3.0 / std::sqrt(static_cast<double>(n));
        int inside = 0;
        for (int l = 1; l <= 20; ++l) {
            if (std::abs(acf[static_cast<std::size_t>(l)]) < band) ++inside;
        }
        CHECK(inside >= 18);
    }
    SUBCASE("bounded by one on arbitrary series") {
        RngStream rng(3, StreamComponent::test_oracle);
        for (int trial = 0; trial < 30; ++trial) {
            ReturnSeries s;
            for (int i = 0; i < 200; ++i) {
                const double u = rng.uniform01();
                s.values.push_back(u < 0.05 ? rng.normal(0.0, 50.0) : rng.normal());
            }
            const auto acf = autocorrelation(s, 20);
            for (double c : acf) {
                CHECK(c <= 1.0 + 1e-12);
                CHECK(c >= -1.0 - 1e-12);
            }
        }
    }
    SUBCASE("degenerate input") {
        CHECK_THROWS_AS(autocorrelation(series({1.0, 1.0, 1.0, 1.0}), 2), ZeroVariance);
        CHECK_THROWS_AS(autocorrelation(series({1.0, 2.0}), 5), InsufficientSample);
    }
}

TEST_CASE("excess kurtosis") {
    SUBCASE("gaussian sample is mesokurtic") {
        CHECK(std::abs(excess_kurtosis(normal_sample(1000000, 4))) < 0.1);
    }
    SUBCASE("two-point series is exactly -2") {
        ReturnSeries s;
        for (int i = 0; i < 1000; ++i) s.values.push_back(i % 2 == 0 ? 1.0 : -1.0);
        CHECK(excess_kurtosis(s) == -2.0);
    }
    SUBCASE("sparse spikes: direct moment arithmetic gives 1") {
        ReturnSeries s;
        for (int block = 0; block < 125; ++block) {
            const double pattern[8] = {0, 0, 0, 1, 0, 0, 0, -1};
            for (double v : pattern) s.values.push_back(v);
        }
        CHECK(excess_kurtosis(s) == 1.0);
    }
    SUBCASE("affine invariance") {
        RngStream rng(5, StreamComponent::test_oracle);
        for (int trial = 0; trial < 1000; ++trial) {
            ReturnSeries s;
            for (int i = 0; i < 64; ++i) s.values.push_back(rng.normal(0.0, 2.0));
            const double k = excess_kurtosis(s);
            const double a = rng.uniform(-5.0, 5.0);
            if (a == 0.0) continue;
            const double b = rng.uniform(-10.0, 10.0);
            ReturnSeries t;
            for (double v : s.values) t.values.push_back(a * v + b);
            CHECK(excess_kurtosis(t) == doctest::Approx(k).epsilon(1e-9));
        }
    }
    SUBCASE("degenerate input") {
        CHECK_THROWS_AS(excess_kurtosis(series({3.0, 3.0, 3.0, 3.0})), ZeroVariance);
        CHECK_THROWS_AS(excess_kurtosis(series({1.0, 2.0, 3.0})), InsufficientSample);
    }
}

TEST_CASE("hill estimator") {
    SUBCASE("hand-computed top five") {
        // top-5 log values 5,4,3,2,1; 95 filler entries below
        std::vector<double> sample;
        for (int j = 5; j >= 1; --j) sample.push_back(std::exp(static_cast<double>(j)));
        for (int i = 0; i < 95; ++i) sample.push_back(0.5);
        CHECK(hill_estimator(sample) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("pareto tail index is recovered") {
        RngStream rng(6, StreamComponent::test_oracle);
        std::vector<double> sample(100000);
        for (double& x : sample) {
            x = std::pow(1.0 - rng.uniform01(), -1.0 / 3.0); // Pareto(alpha = 3)
        }
        const double h = hill_estimator(sample);
        CHECK(h > 2.8);
        CHECK(h < 3.2);
    }
    SUBCASE("scale invariance") {
        RngStream rng(7, StreamComponent::test_oracle);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> sample(40);
            for (double& x : sample) x = std::exp(rng.normal(0.0, 1.5));
            const double h = hill_estimator(sample);
            const double c = std::exp(rng.uniform(-3.0, 3.0));
            std::vector<double> scaled(sample);
            for (double& x : scaled) x *= c;
            CHECK(hill_estimator(scaled) == doctest::Approx(h).epsilon(1e-7));
        }
    }
    SUBCASE("degenerate tail yields the infinity sentinel") {
        std::vector<double> sample(100, 2.0);
        CHECK(std::isinf(hill_estimator(sample)));
    }
    SUBCASE("too small a sample") {
        std::vector<double> sample(10, 1.0);
        CHECK_THROWS_AS(hill_estimator(sample), InsufficientSample);
    }
    SUBCASE("non-positive tail entries") {
        std::vector<double> sample(100, -1.0);
        CHECK_THROWS_AS(hill_estimator(sample), NonPositiveEntry);
    }
    SUBCASE("absolute-return wrapper drops zeros") {
        ReturnSeries s;
        for (int i = 0; i < 50; ++i) {
            s.values.push_back(0.0);
            s.values.push_back(std::pow(1.0 - (i + 0.5) / 50.0, -1.0 / 3.0));
            s.values.push_back(-std::pow(1.0 - (i + 0.25) / 50.0, -1.0 / 3.0));
        }
        CHECK(std::isfinite(hill_tail_index(s)));
    }
}

TEST_CASE("qq pairs") {
    SUBCASE("exact normal quantile grid maps onto the diagonal") {
        // Input = the exact standard-normal quantile grid. Standardization
        // divides by the grid's own sample deviation, a finite-sample factor
        // computed independently here; modulo it, the plotting-position
        // interpolation must reproduce the grid to 1e-6.
        const int q = 512;
        ReturnSeries s;
        for (int i = 1; i <= q; ++i) {
            s.values.push_back(normal_quantile((i - 0.5) / q));
        }
        std::vector<double> sq(s.values.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = s.values[i] * s.values[i];
        const double sd = std::sqrt(pairwise_sum(sq) / q);

        const auto pairs = qq_pairs(s, q);
        REQUIRE(pairs.size() == static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) {
            CHECK(pairs[static_cast<std::size_t>(i)].second * sd ==
                  doctest::Approx(pairs[static_cast<std::size_t>(i)].first).epsilon(1e-6));
        }
        // and the raw diagonal holds to the finite-sample factor itself
        for (const auto& [x, y] : pairs) {
            CHECK(std::abs(y - x) <= std::abs(x) * std::abs(1.0 / sd - 1.0) + 1e-9);
        }
    }
    SUBCASE("antisymmetric for symmetric input") {
        RngStream rng(8, StreamComponent::test_oracle);
        ReturnSeries s;
        for (int i = 0; i < 5000; ++i) {
            const double v = rng.normal();
            s.values.push_back(v);
            s.values.push_back(-v);
        }
        const auto pairs = qq_pairs(s, 100);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [x1, y1] = pairs[i];
            const auto& [x2, y2] = pairs[pairs.size() - 1 - i];
            CHECK(x1 == doctest::Approx(-x2).epsilon(1e-9));
            CHECK(y1 == doctest::Approx(-y2).epsilon(1e-9));
        }
    }
    SUBCASE("student-t(3) exceeds the normal in both tails") {
        RngStream rng(9, StreamComponent::test_oracle);
        ReturnSeries s;
        for (int i = 0; i < 100000; ++i) {
            const double z = rng.normal();
            double chi = 0.0;
            for (int j = 0; j < 3; ++j) {
                const double w = rng.normal();
                chi += w * w;
            }
            s.values.push_back(z / std::sqrt(chi / 3.0));
        }
        const auto pairs = qq_pairs(s, 1000); // positions 0.0005 .. 0.9995
        const auto& low = pairs.front();
        const auto& high = pairs.back();
        CHECK(std::abs(low.second) > std::abs(low.first));
        CHECK(std::abs(high.second) > std::abs(high.first));
    }
    SUBCASE("degenerate input") {
        CHECK_THROWS_AS(qq_pairs(series(std::vector<double>(50, 1.0)), 10), ZeroVariance);
        CHECK_THROWS_AS(qq_pairs(series({1.0, 2.0}), 10), InsufficientSample);
    }
}

TEST_CASE("compute_stats wires the estimators together") {
    const auto s = normal_sample(20000, 10);
    const StatsReport report = compute_stats(s, 20, 100);
    CHECK(report.n == 20000);
    CHECK(report.acf_raw.size() == 20);
    CHECK(report.acf_abs.size() == 20);
    CHECK(report.qq.size() == 100);
    CHECK(std::abs(report.excess_kurtosis) < 0.2);
    CHECK(std::isfinite(report.hill));
}
