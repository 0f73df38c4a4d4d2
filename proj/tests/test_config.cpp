#include "abcem/config_text.hpp"

#include "abcem/csv.hpp"
#include "abcem/engine.hpp"
#include "abcem/errors.hpp"
#include "abcem/presets.hpp"
#include "abcem/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace abcem;

TEST_CASE("cross-base preset carries the table values") {
    const SimulationConfig c = parse_config(preset_text("cross-base"));
    CHECK(c.num_agents == 1000);
    CHECK(c.num_steps == 10000);
    CHECK(c.dt == 4e-5);
    CHECK(c.mechanism.kappa == 0.2);
    CHECK(c.mechanism.theta == 0.0);
    const auto& p = std::get<CrossParams>(c.model);
    CHECK(p.A1 == 0.1);
    CHECK(p.A2 == 0.3);
    CHECK(p.b1 == 25.0);
    CHECK(p.b2 == 100.0);
    CHECK(p.S0 == 1.0);
}

TEST_CASE("hpm presets keep the provenance seed and table entries") {
    const SimulationConfig c = preset("dca-hpm");
    CHECK(c.seed == 2661);
    const auto& p = std::get<FWParams>(c.model);
    CHECK(p.alpha_0 == -0.327);
    CHECK(p.alpha_h == 1.79);
    CHECK(p.alpha_m == 18.43);
    CHECK(p.eta_memory == 0.0);
    const SimulationConfig t = preset("tpa-hpm");
    CHECK(t.seed == 2661);
    CHECK(std::get<FWParams>(t.model).nu == 0.05);
}

TEST_CASE("misspelled keys are hard errors naming the key") {
    std::string text = preset_text("cross-base");
    const auto pos = text.find("kappa");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "kapa ");
    try {
        parse_config(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("kapa") != std::string::npos);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("random key mutations never parse silently") {
    RngStream rng(64, StreamComponent::test_oracle);
    for (const std::string& name : preset_names()) {
        const std::string text = preset_text(name);
        for (int trial = 0; trial < 20; ++trial) {
            // pick a random "key = value" line and damage the key
            std::vector<std::pair<std::size_t, std::size_t>> keys;
            std::size_t start = 0;
            while (start < text.size()) {
                std::size_t eol = text.find('\n', start);
                if (eol == std::string::npos) eol = text.size();
                const std::size_t eq = text.find('=', start);
                if (eq != std::string::npos && eq < eol) {
                    std::size_t key_end = eq;
                    while (key_end > start && text[key_end - 1] == ' ') --key_end;
                    keys.emplace_back(start, key_end - start);
                }
                start = eol + 1;
            }
            REQUIRE(!keys.empty());
            auto [off, len] = keys[static_cast<std::size_t>(rng.uniform01() * keys.size())];
            std::string damaged = text;
            damaged.insert(off + len, "x");
            CHECK_THROWS(parse_config(damaged));
        }
    }
}

TEST_CASE("duplicate keys are rejected") {
    std::string text = preset_text("cross-base");
    text += "num_agents = 5\n";
    CHECK_THROWS_AS(parse_config(text), ParseError);
}

TEST_CASE("every preset round-trips bit-exactly") {
    for (const std::string& name : preset_names()) {
        const std::string text = preset_text(name);
        const SimulationConfig c = parse_config(text);
        CHECK(serialize_config(c) == text);
    }
}

TEST_CASE("serialization is idempotent on hand-written input") {
    const std::string messy =
        "# comment line\n"
        "name=demo\n"
        "model   =  cross\n"
        "num_agents=7   # trailing comment\n"
        "num_steps = 3\n"
        "dt = 0.5\n"
        "\n"
        "cross {\n"
        "A2 = 0.3\n"
        "  A1 = 0.1\n"
        "  b1 = 25\n"
        "  b2 = 100\n"
        "}\n"
        "mechanism {\n"
        "  kind = cross_exp\n"
        "  kappa = 0.25\n"
        "}\n";
    const std::string once = serialize_config(parse_config(messy));
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
    const SimulationConfig c = parse_config(messy);
    CHECK(c.name == "demo");
    CHECK(c.num_agents == 7);
    CHECK(std::get<CrossParams>(c.model).S0 == 1.0); // default applied
    CHECK_FALSE(c.seed_set);
}

TEST_CASE("recorder block round-trips") {
    SimulationConfig c = preset("cross-base");
    c.recorder_columns = {"price", "excess_demand"};
    const std::string text = serialize_config(c);
    CHECK(text.find("recorder {") != std::string::npos);
    const SimulationConfig back = parse_config(text);
    CHECK(back.recorder_columns == c.recorder_columns);
    CHECK(serialize_config(back) == text);
}

TEST_CASE("structural parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_config("model = cross\nnum_agents\n"), ParseError);
    CHECK_THROWS_AS(parse_config("}\n"), ParseError);
    CHECK_THROWS_AS(parse_config("cross {\n"), ParseError);
    CHECK_THROWS_AS(parse_config("model = nosuch\nnum_agents = 1\nnum_steps = 1\ndt = 1\n"
                                 "mechanism {\n  kind = cross_exp\n}\n"),
                    ParseError);
}

TEST_CASE("format_double is lossless") {
    for (double v : {1.020201340026756, 0.1 + 0.2, 1.0 / 3.0, 4e-5, 1e300, -7.25,
                     123456789.123456789, 2.2250738585072014e-308}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-3.0) == "-3");
}

TEST_CASE("csv round trip") {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "abcem_test_csv";
    std::filesystem::create_directories(dir);

    SUBCASE("two-row record gives a three-line file and identical values") {
        TimeSeriesRecord record({"step", "price"});
        record.append_row(std::vector<double>{0.0, 1.020201340026756});
        record.append_row(std::vector<double>{1.0, 0.1 + 0.2});
        const auto file = dir / "tiny.csv";
        write_csv(record, file);

        std::ifstream in(file);
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) ++lines;
        CHECK(lines == 3);

        const TimeSeriesRecord back = read_csv(file);
        CHECK(back.columns() == record.columns());
        REQUIRE(back.rows() == 2);
        CHECK(back.at(0, 1) == 1.020201340026756);
        CHECK(back.at(1, 1) == 0.1 + 0.2);
    }

    SUBCASE("simulation records survive exactly") {
        SimulationConfig c = preset("cross-base");
        c.num_agents = 20;
        c.num_steps = 50;
        const TimeSeriesRecord record = run_simulation(c);
        const auto file = dir / "run.csv";
        write_csv(record, file);
        const TimeSeriesRecord back = read_csv(file);
        REQUIRE(back.rows() == record.rows());
        for (std::size_t r = 0; r < record.rows(); ++r) {
            for (std::size_t col = 0; col < record.cols(); ++col) {
                CHECK(back.at(r, col) == record.at(r, col));
            }
        }
    }

    SUBCASE("unwritable path raises IoError") {
        TimeSeriesRecord record({"a"});
        CHECK_THROWS_AS(write_csv(record, "/dev/null/x/y.csv"), IoError);
        CHECK_THROWS_AS(read_csv(dir / "missing.csv"), IoError);
    }
}

TEST_CASE("smoke matrix: every preset runs ten steps and records") {
    for (const std::string& name : preset_names()) {
        SimulationConfig c = preset(name);
        c.num_steps = 10;
        const TimeSeriesRecord record = run_simulation(c);
        CHECK(record.rows() == 11);
        for (double v : record.data()) CHECK(std::isfinite(v));
    }
}

TEST_CASE("preset list") {
    CHECK(preset_names().size() >= 12);
    CHECK(is_preset("cross-base"));
    CHECK_FALSE(is_preset("no-such"));
    CHECK_THROWS_AS(preset("no-such"), ConfigMismatch);
}
