#include <doctest.h>

#include "cli_config.hpp"

#include "hqc/units.hpp"

#include <sstream>

using namespace hqc;
using namespace hqc::cli;

TEST_CASE("frequency strings") {
  CHECK(parse_frequency("10MHz", false, "f") == doctest::Approx(2 * kPi * 1e-2));
  CHECK(parse_frequency("3 kHz", false, "f") == doctest::Approx(units::khz(3)));
  CHECK(parse_frequency("0.5GHz", false, "f") == doctest::Approx(units::mhz(500)));
  CHECK(parse_frequency("0.1rad/ns", false, "f") == 0.1);
  CHECK(parse_frequency("0.1", true, "f") == 0.1);
  CHECK_THROWS_AS(parse_frequency("0.1", false, "f"), ConfigError);
  CHECK_THROWS_AS(parse_frequency("10 furlongs", false, "f"), ConfigError);
  CHECK_THROWS_AS(parse_frequency("MHz", false, "f"), ConfigError);
}

TEST_CASE("angle strings") {
  CHECK(parse_angle("pi/4", "a") == doctest::Approx(kPi / 4));
  CHECK(parse_angle("3pi/2", "a") == doctest::Approx(1.5 * kPi));
  CHECK(parse_angle("-pi", "a") == doctest::Approx(-kPi));
  CHECK(parse_angle("0.76pi", "a") == doctest::Approx(0.76 * kPi));
  CHECK(parse_angle("1.25", "a") == 1.25);
  CHECK_THROWS_AS(parse_angle("pi*2", "a"), ConfigError);
}

TEST_CASE("lists and ranges") {
  CHECK(parse_list("2,10,20", "l") == std::vector<double>{2, 10, 20});
  CHECK(parse_list("1:4", "l") == std::vector<double>{1, 2, 3, 4});
  CHECK(parse_list("0:1:0.25", "l").size() == 5);
  CHECK_THROWS_AS(parse_list("3:1", "l"), ConfigError);
  CHECK_THROWS_AS(parse_list("1,,2", "l"), ConfigError);
}

TEST_CASE("config files report the offending line") {
  std::istringstream ok("# comment\nscheme = csnhqc\n\nomega-max = 10MHz  # inline\n");
  const auto e = read_config(ok, "run.cfg");
  REQUIRE(e.size() == 2);
  CHECK(e[1].line == 4);
  CHECK(e[1].value == "10MHz");
  std::istringstream bad("scheme = snhqc\nthis line is wrong\n");
  try {
    read_config(bad, "run.cfg");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("run.cfg:2") != std::string::npos);
  }
}

TEST_CASE("named gates") {
  CHECK(named_gate("sqrth").theta == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(named_gate("cz"), ConfigError);
}
