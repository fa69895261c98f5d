#pragma once

// Deterministic parameter-sweep engine with CSV output. Grid points are pure
// evaluations and may run on any number of threads; rows are assembled by grid
// index so the output bytes never depend on scheduling.

#include "spinpair/model.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinpair {

enum class Spacing { linear, log };
enum class Quantity { chi, entropy_rho, validity, witness, partition };

const char* to_string(Quantity q);
Quantity quantity_from_string(const std::string& name);  // chi, S_rho, validity, witness, Z

struct SweepAxis {
  std::string name;  // one of J, beta0, dBzeff, Bz, T, gamma_e
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  Spacing spacing = Spacing::linear;
};

struct SweepConfig {
  std::map<std::string, double> fixed;  // model parameters, plus `t` for witness
  std::vector<SweepAxis> axes;          // 1 or 2 entries; axis 0 is the outer loop
  Quantity quantity = Quantity::chi;
  std::string output_path;
  int precision = 12;
};

/// Flat key=value format, `#` comments, repeated `axis.` blocks started by
/// `axis.name`. See the shipped configs/ examples for the exact grammar.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

void validate_config(const SweepConfig& cfg);

std::vector<double> axis_points(const SweepAxis& axis);

struct SweepRow {
  std::vector<double> axis_values;
  std::optional<double> value;  // empty on a per-point domain error
  std::string error;            // short error code, empty on success
};

struct SweepResult {
  std::vector<std::string> header;  // axis names, quantity, "error"
  std::vector<SweepRow> rows;       // axis-major order, axis 0 outer
};

SweepResult run_sweep(const SweepConfig& cfg, int threads = 1);

/// One header line, comma separators, LF endings, no trailing comma; floats
/// rendered via the shortest round-trip form truncated to `precision`
/// significant digits (locale independent).
void write_csv(const SweepResult& result, int precision, std::ostream& out);
void write_csv_file(const SweepResult& result, const SweepConfig& cfg);

/// Evaluate the configured quantity at explicit parameter values (exposed for
/// tests and the CLI).
double evaluate_quantity(Quantity q, const std::map<std::string, double>& values);

}  // namespace spinpair
