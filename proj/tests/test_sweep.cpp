#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinpair/dense_coding.hpp"
#include "spinpair/linalg.hpp"
#include "spinpair/sweep.hpp"
#include "spinpair/thermal.hpp"

#include <cmath>
#include <sstream>

using namespace spinpair;

namespace {

std::string csv_of(const SweepConfig& cfg, int threads = 1) {
  std::ostringstream out;
  write_csv(run_sweep(cfg, threads), cfg.precision, out);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# capacity surface\n"
      "quantity = chi\n"
      "output = surface.csv\n"
      "precision = 10\n"
      "fixed.T = 0.05\n"
      "fixed.beta0 = 0.01\n"
      "axis.name = J\n"
      "axis.start = -2\n"
      "axis.stop = 2\n"
      "axis.count = 101\n"
      "axis.spacing = linear\n"
      "axis.name = dBzeff\n"
      "axis.start = -2\n"
      "axis.stop = 2\n"
      "axis.count = 101\n");
  const SweepConfig cfg = parse_sweep_config(in);
  CHECK(cfg.quantity == Quantity::chi);
  CHECK(cfg.output_path == "surface.csv");
  CHECK(cfg.precision == 10);
  CHECK(cfg.fixed.at("T") == 0.05);
  REQUIRE(cfg.axes.size() == 2);
  CHECK(cfg.axes[0].name == "J");
  CHECK(cfg.axes[1].count == 101);
}

TEST_CASE("config errors") {
  const auto reject = [](const char* text) {
    std::istringstream in(text);
    CHECK_THROWS_AS((void)parse_sweep_config(in), DomainError);
  };
  reject("axis.start = 1\n");                                             // name must come first
  reject("quantity = chi\naxis.name = J\naxis.start = 0\naxis.stop = 1\naxis.count = 3\naxis.spacing = cubic\n");
  reject("quantity = nope\naxis.name = J\naxis.start = 0\naxis.stop = 1\naxis.count = 3\n");
  reject("quantity = chi\nwhat = 1\naxis.name = J\naxis.start = 0\naxis.stop = 1\naxis.count = 3\n");
  reject("quantity = chi\naxis.name = J\naxis.start = 1\naxis.stop = 0\naxis.count = 3\n");
  reject("quantity = chi\naxis.name = J\naxis.start = -1\naxis.stop = 1\naxis.count = 3\naxis.spacing = log\n");
  reject("quantity = chi\naxis.name = Q\naxis.start = 0\naxis.stop = 1\naxis.count = 3\n");
  reject("quantity = chi\nfixed.bogus = 1\naxis.name = J\naxis.start = 0\naxis.stop = 1\naxis.count = 3\n");
}

TEST_CASE("axis points hit both endpoints exactly") {
  SweepAxis lin{"T", 0.01, 2.0, 7, Spacing::linear};
  const auto lp = axis_points(lin);
  CHECK(lp.front() == 0.01);
  CHECK(lp.back() == 2.0);
  CHECK(int(lp.size()) == 7);
  SweepAxis lg{"T", 0.01, 10.0, 5, Spacing::log};
  const auto gp = axis_points(lg);
  CHECK(gp.front() == 0.01);
  CHECK(gp.back() == 10.0);
  CHECK(gp[1] / gp[0] == doctest::Approx(gp[2] / gp[1]).epsilon(1e-12));
}

TEST_CASE("single-point sweep equals the direct call") {
  SweepConfig cfg;
  cfg.quantity = Quantity::chi;
  cfg.fixed = {{"T", 0.05}, {"beta0", 0.8}, {"dBzeff", 0.5}};
  cfg.axes.push_back({"J", -1.0, -1.0, 1, Spacing::linear});
  const SweepResult res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 1);
  REQUIRE(res.rows[0].value.has_value());
  const double direct = capacity(params_with_dbz_eff(-1.0, 0.8, 0.5, 0.0, 0.05)).chi;
  CHECK(*res.rows[0].value == direct);
  const std::string text = csv_of(cfg);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);  // header + one row
}

TEST_CASE("csv shape and formatting") {
  SweepConfig cfg;
  cfg.quantity = Quantity::chi;
  cfg.precision = 6;
  cfg.fixed = {{"T", 0.05}, {"beta0", 0.01}};
  cfg.axes.push_back({"J", -1.0, 1.0, 3, Spacing::linear});
  const std::string text = csv_of(cfg);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "J,chi,error");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(!line.empty());
    CHECK(line.back() != ',');
    CHECK(line.find('\r') == std::string::npos);
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
  }
  CHECK(rows == 3);
  CHECK(text.back() == '\n');
}

TEST_CASE("float formatting is shortest-first and precision-limited") {
  CHECK(detail::format_double(0.1, 12) == "0.1");
  CHECK(detail::format_double(-2.0, 12) == "-2");
  CHECK(detail::format_double(1.0 / 3.0, 6) == "0.333333");
  CHECK(detail::format_double(123456789.0, 4) == "1.235e+08");
  CHECK(detail::format_double(0.0, 12) == "0");
}

TEST_CASE("grid order is axis-major with axis 0 outer") {
  SweepConfig cfg;
  cfg.quantity = Quantity::partition;
  cfg.fixed = {{"T", 1.0}};
  cfg.axes.push_back({"J", 0.5, 1.0, 2, Spacing::linear});
  cfg.axes.push_back({"dBzeff", 0.0, 1.0, 3, Spacing::linear});
  const SweepResult res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 6);
  CHECK(res.rows[0].axis_values[0] == 0.5);
  CHECK(res.rows[2].axis_values[0] == 0.5);
  CHECK(res.rows[3].axis_values[0] == 1.0);
  CHECK(res.rows[1].axis_values[1] == 0.5);
}

TEST_CASE("error rows do not disturb their neighbours") {
  SweepConfig cfg;
  cfg.quantity = Quantity::chi;
  cfg.fixed = {{"beta0", 0.1}, {"J", 1.0}};
  cfg.axes.push_back({"T", -0.5, 0.5, 5, Spacing::linear});  // includes T <= 0
  const SweepResult res = run_sweep(cfg);
  int bad = 0, good = 0;
  for (const auto& row : res.rows) {
    if (row.value) {
      ++good;
      CHECK(row.error.empty());
    } else {
      ++bad;
      CHECK(row.error == "T_NOT_POSITIVE");
    }
  }
  CHECK(bad == 3);  // T in {-0.5, -0.25, 0}
  CHECK(good == 2);
  // value cells are empty but the rows are still present in order
  const std::string text = csv_of(cfg);
  CHECK(text.find(",,T_NOT_POSITIVE") != std::string::npos);
}

TEST_CASE("validity sweep requires a balanced axial field") {
  SweepConfig cfg;
  cfg.quantity = Quantity::validity;
  cfg.fixed = {{"T", 0.05}, {"Bz", 0.3}, {"J", -1.0}};
  cfg.axes.push_back({"dBzeff", 0.0, 1.0, 3, Spacing::linear});
  for (const auto& row : run_sweep(cfg).rows) CHECK(row.error == "BZ_NOT_ZERO");
  cfg.fixed["Bz"] = 0.0;
  for (const auto& row : run_sweep(cfg).rows) {
    REQUIRE(row.value.has_value());
    CHECK((*row.value == 0.0 || *row.value == 1.0));
  }
}

TEST_CASE("witness sweep evolves the reference probe at a fixed time") {
  SweepConfig cfg;
  cfg.quantity = Quantity::witness;
  cfg.fixed = {{"t", 1.3}};
  cfg.axes.push_back({"J", 0.5, 1.5, 3, Spacing::linear});
  for (const auto& row : run_sweep(cfg).rows) {
    REQUIRE(row.value.has_value());
    CHECK(*row.value >= 0.0);
    CHECK(*row.value <= 0.25 + 1e-12);  // |ad-bc|^2 of a unit state
  }
  cfg.fixed.clear();
  for (const auto& row : run_sweep(cfg).rows) CHECK(row.error == "MISSING_T");
}

TEST_CASE("partition and entropy sweeps match the library") {
  SweepConfig cfg;
  cfg.quantity = Quantity::partition;
  cfg.fixed = {{"T", 0.7}, {"beta0", 0.2}, {"dBzeff", 0.4}};
  cfg.axes.push_back({"J", -1.0, 1.0, 3, Spacing::linear});
  const SweepResult res = run_sweep(cfg);
  for (const auto& row : res.rows) {
    const ModelParams p = params_with_dbz_eff(row.axis_values[0], 0.2, 0.4, 0.0, 0.7);
    CHECK(*row.value == thermal_state(p).Z);
  }
  cfg.quantity = Quantity::entropy_rho;
  for (const auto& row : run_sweep(cfg).rows) {
    const ModelParams p = params_with_dbz_eff(row.axis_values[0], 0.2, 0.4, 0.0, 0.7);
    CHECK(*row.value == von_neumann_entropy(thermal_state(p).rho));
  }
}

TEST_CASE("sweep output is byte-deterministic across runs and thread counts") {
  SweepConfig cfg;
  cfg.quantity = Quantity::chi;
  cfg.fixed = {{"T", 0.05}, {"beta0", 0.01}};
  cfg.axes.push_back({"J", -2.0, 2.0, 13, Spacing::linear});
  cfg.axes.push_back({"dBzeff", -2.0, 2.0, 13, Spacing::linear});
  const std::string a = csv_of(cfg, 1);
  const std::string b = csv_of(cfg, 1);
  const std::string c = csv_of(cfg, 4);
  const std::string d = csv_of(cfg, 3);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a == d);
}

TEST_CASE("capacity surface is mirror symmetric in the field splitting") {
  SweepConfig cfg;
  cfg.quantity = Quantity::chi;
  cfg.fixed = {{"T", 0.05}, {"beta0", 0.01}};
  cfg.axes.push_back({"J", -2.0, 2.0, 11, Spacing::linear});
  cfg.axes.push_back({"dBzeff", -2.0, 2.0, 11, Spacing::linear});
  const SweepResult res = run_sweep(cfg);
  const int n = 11;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& a = res.rows[std::size_t(i) * n + j];
      const auto& b = res.rows[std::size_t(i) * n + (n - 1 - j)];
      REQUIRE(a.value.has_value());
      REQUIRE(b.value.has_value());
      CHECK(std::abs(*a.value - *b.value) <= 1e-12);
    }
}
