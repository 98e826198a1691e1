#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qdirac/scan.hpp"

using namespace qdirac;
using namespace qdirac::scan;

TEST_CASE("parallel kernel matches the serial reference bit for bit") {
  for (const Quantity q : {Quantity::tunneling_range, Quantity::v_plus_sq,
                           Quantity::v_minus_sq, Quantity::zone}) {
    ScanSpec spec;
    spec.nx = 41;
    spec.ny = 37;
    spec.quantity = q;
    const auto parallel = run(spec);
    const auto serial = run_serial(spec);
    REQUIRE(parallel.size() == serial.size());
    CHECK(parallel == serial);
  }
}

TEST_CASE("csv output is deterministic and locale independent") {
  ScanSpec spec;
  spec.nx = spec.ny = 11;
  spec.quantity = Quantity::v_minus_sq;

  std::ostringstream a, b;
  write_csv(a, run(spec));
  write_csv(b, run(spec));
  CHECK(a.str() == b.str());

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "v0_over_m,w0_over_m,value,zone");

  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(line.find(';') == std::string::npos);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    REQUIRE(c3 != std::string::npos);
    // every numeric field round-trips through stod with '.' decimals
    CHECK_NOTHROW(std::stod(line.substr(0, c1)));
    CHECK_NOTHROW(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    CHECK_NOTHROW(std::stod(line.substr(c2 + 1, c3 - c2 - 1)));
  }
  CHECK(rows == 121);
}

TEST_CASE("default tunneling grid reproduces the table points") {
  ScanSpec spec;
  spec.quantity = Quantity::tunneling_range;
  const auto cells = run(spec);
  REQUIRE(cells.size() == 201u * 201u);

  const auto at = [&](int i, int j) -> const Cell& {
    return cells[static_cast<std::size_t>(i) * spec.ny + j];
  };

  // (V0, |W0|) = (0.05, 0.32) lies on the default 0.01-spaced grid
  const Cell& c = at(5, 32);
  CHECK(c.v0 == doctest::Approx(0.05));
  CHECK(c.w0 == doctest::Approx(0.32));
  CHECK(std::abs(c.value - 0.10) < 0.005);

  // the |W0| = 0 row is min(V0, 2m)
  for (const int i : {10, 50, 150, 200}) {
    CHECK(at(i, 0).value ==
          doctest::Approx(std::min(at(i, 0).v0, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("v_minus_sq scan: free-space value and evanescent sentinel") {
  ScanSpec spec;
  spec.quantity = Quantity::v_minus_sq;
  spec.nx = spec.ny = 41;  // 0.05 spacing over [0, 2]
  const auto cells = run(spec);
  const auto at = [&](int i, int j) -> const Cell& {
    return cells[static_cast<std::size_t>(i) * spec.ny + j];
  };

  // V0 = 0 column below p = sqrt(3): v_minus^2 = 3/4 at E = 2m
  for (int j = 1; j <= 34; ++j) {
    CHECK(std::abs(at(0, j).value - 0.75) <= 1e-12);
  }

  // (V0, |W0|) = (1, 1) is evanescent: sentinel value plus zone column
  const Cell& ev = at(20, 20);
  CHECK(ev.value == kUndefinedCell);
  CHECK(ev.zone == Zone::evanescent);
}

TEST_CASE("zone quantity encodes the zone code") {
  ScanSpec spec;
  spec.quantity = Quantity::zone;
  spec.nx = spec.ny = 21;
  for (const Cell& c : run(spec)) {
    CHECK(c.value == zone_code(c.zone));
  }
}

TEST_CASE("json payload carries metadata and rows") {
  ScanSpec spec;
  spec.nx = 5;
  spec.ny = 4;
  spec.quantity = Quantity::tunneling_range;
  const auto cells = run(spec);
  const nlohmann::json j = to_json(spec, cells);

  CHECK(j["metadata"]["quantity"] == "tunneling_range");
  CHECK(j["metadata"]["grid"]["nx"] == 5);
  CHECK(j["metadata"]["energy_over_m"] == 2.0);
  REQUIRE(j["rows"].size() == 20);
  CHECK(j["rows"][0].contains("v0"));
  CHECK(j["rows"][0].contains("w0"));
  CHECK(j["rows"][0].contains("value"));
  CHECK(j["rows"][0].contains("zone"));
}

TEST_CASE("spec validation") {
  ScanSpec spec;
  spec.nx = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.nx = 201;
  spec.energy = 0.9;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.energy = 2.0;
  spec.x_max = spec.x_min;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
