#include "doctest.h"

#include <string>

#include "gedanken/config.hpp"
#include "gedanken/errors.hpp"

using namespace gedanken;

TEST_CASE("a scenario-only config is complete") {
  const std::string text =
      "scenario.field_kind = em\n"
      "scenario.q_A = 1.0\n"
      "scenario.d = 1.0\n"
      "scenario.D = 200.0   # Alice-Bob distance\n"
      "scenario.T_A = 20.0\n"
      "scenario.T_B = 20.0\n";
  const RunConfig c = parse_config_text(text);
  CHECK(c.scenario.D == 200.0);
  CHECK(c.scenario.T_A == 20.0);
  CHECK(c.scenario.m_A == 1.0);          // default
  CHECK(c.basis.mode_count == 4096);     // default
  CHECK(c.audit.trials == 10000);        // default
  CHECK(c.output.format == OutputFormat::Csv);
  CHECK_FALSE(c.sweep.has_value());
  CHECK_NOTHROW(c.scenario.validate());
}

TEST_CASE("unknown keys are rejected with line and column") {
  const std::string text =
      "scenario.q_A = 1.0\n"
      "   scenario.bogus = 2.0\n";
  try {
    parse_config_text(text, "test.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    CHECK(std::string(e.what()).find("test.cfg:2:4") != std::string::npos);
  }
}

TEST_CASE("malformed lines and values carry locations") {
  try {
    parse_config_text("scenario.q_A 1.0\n", "c");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
  }

  try {
    parse_config_text("scenario.q_A = abc\n", "c");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 16);
    CHECK(std::string(e.what()).find("invalid number") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("scenario.q_A =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("scenario.ramp = triangle\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("scenario.q_A = 1\nscenario.q_A = 2\n"),
      ConfigError);  // duplicate
}

TEST_CASE("sweep section and output parsing") {
  const std::string text =
      "scenario.D = 100\n"
      "sweep.axis1 = T_A\n"
      "sweep.scale1 = log\n"
      "sweep.min1 = 1\n"
      "sweep.max1 = 50\n"
      "sweep.count1 = 13\n"
      "sweep.outputs = n_entangling, snr, regime\n"
      "output.format = json\n"
      "output.path = out.jsonl\n";
  const RunConfig c = parse_config_text(text);
  REQUIRE(c.sweep.has_value());
  REQUIRE(c.sweep->axes.size() == 1);
  CHECK(c.sweep->axes[0].field == "T_A");
  CHECK(c.sweep->axes[0].count == 13);
  REQUIRE(c.sweep->outputs.size() == 3);
  CHECK(c.sweep->outputs[0] == SweepOutput::NEntangling);
  CHECK(c.output.format == OutputFormat::Json);
  CHECK(c.output.path == "out.jsonl");
}

TEST_CASE("overrides replace file values through the same validation") {
  RunConfig c = parse_config_text("scenario.q_A = 1.0\n");
  apply_override(c, "scenario.q_A=3.5");
  CHECK(c.scenario.q_A == 3.5);
  apply_override(c, "audit.trials = 50");
  CHECK(c.audit.trials == 50);
  CHECK_THROWS_AS(apply_override(c, "scenario.q_A"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nope.q=1"), ConfigError);
}

TEST_CASE("resolved config echoes every effective value") {
  RunConfig c = parse_config_text("scenario.q_A = 2.0\n");
  const auto j = c.resolved();
  CHECK(j["scenario"]["q_A"] == 2.0);
  CHECK(j["scenario"]["m_A"] == 1.0);
  CHECK(j["basis"]["mode_count"] == 4096);
  CHECK(j["audit"]["seed"] == 1);
  CHECK(j["sweep"].is_null());
  CHECK(j["output"]["format"] == "csv");
  // Round-trip: the flattened form parses back to the same scenario.
  CHECK(j["scenario"]["ramp"] == "smoothstep");
}

TEST_CASE("threshold and coefficient overrides reach their modules") {
  const std::string text =
      "scenario.threshold_bob = 2.0\n"
      "basis.dipole_coefficient = 0.25\n"
      "audit.squeeze_bound = 1.5\n";
  const RunConfig c = parse_config_text(text);
  CHECK(c.scenario.thresholds.bob_snr == 2.0);
  CHECK(c.coefficients.dipole == 0.25);
  CHECK(c.audit.squeeze_bound == 1.5);
}
