#include "spinpair/sweep.hpp"

#include "spinpair/dense_coding.hpp"
#include "spinpair/linalg.hpp"
#include "spinpair/swap.hpp"
#include "spinpair/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace spinpair {

namespace {

const std::set<std::string> kParameterNames = {"J", "beta0", "dBzeff", "Bz", "T", "gamma_e"};

ModelParams params_from_values(const std::map<std::string, double>& v) {
  ModelParams p;
  p.J = v.count("J") ? v.at("J") : 0.0;
  p.beta0 = v.count("beta0") ? v.at("beta0") : 0.0;
  p.gamma_e = v.count("gamma_e") ? v.at("gamma_e") : 1.0;
  p.Bz = v.count("Bz") ? v.at("Bz") : 0.0;
  p.T = v.count("T") ? v.at("T") : 0.0;
  p.dBz = v.count("dBzeff") ? v.at("dBzeff") / (2.0 * p.gamma_e) : 0.0;
  return p;
}

// Fixed generic probe for the witness quantity; spread over all four basis
// amplitudes so no entangling direction is missed.
ProductState witness_probe() {
  return make_product(std::cos(0.5), std::sin(0.5), std::polar(std::cos(0.9), 0.0),
                      std::polar(std::sin(0.9), M_PI / 4.0));
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::chi: return "chi";
    case Quantity::entropy_rho: return "S_rho";
    case Quantity::validity: return "validity";
    case Quantity::witness: return "witness";
    case Quantity::partition: return "Z";
  }
  return "?";
}

Quantity quantity_from_string(const std::string& name) {
  if (name == "chi") return Quantity::chi;
  if (name == "S_rho") return Quantity::entropy_rho;
  if (name == "validity") return Quantity::validity;
  if (name == "witness") return Quantity::witness;
  if (name == "Z") return Quantity::partition;
  throw DomainError("UNKNOWN_QUANTITY", "unknown quantity: " + name);
}

double evaluate_quantity(Quantity q, const std::map<std::string, double>& values) {
  const ModelParams p = params_from_values(values);
  switch (q) {
    case Quantity::chi:
      return capacity(p).chi;
    case Quantity::entropy_rho:
      return von_neumann_entropy(thermal_state(p).rho);
    case Quantity::validity:
      return validity(p) ? 1.0 : 0.0;
    case Quantity::witness: {
      if (!values.count("t")) throw DomainError("MISSING_T", "witness needs a fixed time `t`");
      const PurityWitness w = purity_witness(p, witness_probe(), values.at("t"));
      return std::norm(w.value);  // |ad - bc|^2
    }
    case Quantity::partition:
      return thermal_state(p).Z;
  }
  throw DomainError("UNKNOWN_QUANTITY", "unhandled quantity");
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("CONFIG_SYNTAX", "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [&](std::string& s) {
      s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
      s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    };
    trim(key);
    trim(value);

    const auto as_double = [&](const std::string& s) {
      try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return d;
      } catch (const std::exception&) {
        throw DomainError("CONFIG_SYNTAX",
                          "line " + std::to_string(lineno) + ": bad number `" + s + "`");
      }
    };

    if (key == "quantity") {
      cfg.quantity = quantity_from_string(value);
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "precision") {
      cfg.precision = int(as_double(value));
    } else if (key.rfind("fixed.", 0) == 0) {
      cfg.fixed[key.substr(6)] = as_double(value);
    } else if (key == "axis.name") {
      SweepAxis axis;
      axis.name = value;
      cfg.axes.push_back(axis);
    } else if (key.rfind("axis.", 0) == 0) {
      if (cfg.axes.empty())
        throw DomainError("CONFIG_SYNTAX",
                          "line " + std::to_string(lineno) + ": axis.name must come first");
      SweepAxis& axis = cfg.axes.back();
      const std::string sub = key.substr(5);
      if (sub == "start")
        axis.start = as_double(value);
      else if (sub == "stop")
        axis.stop = as_double(value);
      else if (sub == "count")
        axis.count = int(as_double(value));
      else if (sub == "spacing") {
        if (value == "linear")
          axis.spacing = Spacing::linear;
        else if (value == "log")
          axis.spacing = Spacing::log;
        else
          throw DomainError("CONFIG_SYNTAX",
                            "line " + std::to_string(lineno) + ": spacing must be linear or log");
      } else
        throw DomainError("CONFIG_SYNTAX",
                          "line " + std::to_string(lineno) + ": unknown axis key `" + sub + "`");
    } else {
      throw DomainError("CONFIG_SYNTAX",
                        "line " + std::to_string(lineno) + ": unknown key `" + key + "`");
    }
  }
  validate_config(cfg);
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("CONFIG_IO", "cannot open config file: " + path);
  return parse_sweep_config(in);
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.axes.empty() || cfg.axes.size() > 2)
    throw DomainError("CONFIG_INVALID", "need 1 or 2 axes");
  for (const SweepAxis& a : cfg.axes) {
    if (!kParameterNames.count(a.name))
      throw DomainError("CONFIG_INVALID", "unknown axis parameter: " + a.name);
    // count = 1 degenerates the axis to the single point `start`
    if (a.count < 1) throw DomainError("CONFIG_INVALID", "axis count must be >= 1");
    if (a.count > 1 && !(a.start < a.stop))
      throw DomainError("CONFIG_INVALID", "axis start must be < stop");
    if (a.count == 1 && !(a.start <= a.stop))
      throw DomainError("CONFIG_INVALID", "axis start must be <= stop");
    if (a.spacing == Spacing::log && !(a.start > 0.0))
      throw DomainError("CONFIG_INVALID", "log spacing needs start > 0");
  }
  for (const auto& [key, value] : cfg.fixed) {
    (void)value;
    if (!kParameterNames.count(key) && key != "t")
      throw DomainError("CONFIG_INVALID", "unknown fixed parameter: " + key);
  }
  if (cfg.precision < 1 || cfg.precision > 17)
    throw DomainError("CONFIG_INVALID", "precision must be in [1, 17]");
}

std::vector<double> axis_points(const SweepAxis& axis) {
  std::vector<double> pts(axis.count);
  if (axis.count == 1) {
    pts[0] = axis.start;
    return pts;
  }
  if (axis.spacing == Spacing::linear) {
    for (int i = 0; i < axis.count; ++i)
      pts[i] = axis.start + (axis.stop - axis.start) * double(i) / double(axis.count - 1);
  } else {
    const double la = std::log(axis.start), lb = std::log(axis.stop);
    for (int i = 0; i < axis.count; ++i)
      pts[i] = std::exp(la + (lb - la) * double(i) / double(axis.count - 1));
  }
  pts.front() = axis.start;
  pts.back() = axis.stop;
  return pts;
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
  validate_config(cfg);
  SweepResult result;
  for (const SweepAxis& a : cfg.axes) result.header.push_back(a.name);
  result.header.push_back(to_string(cfg.quantity));
  result.header.push_back("error");

  std::vector<std::vector<double>> pts;
  for (const SweepAxis& a : cfg.axes) pts.push_back(axis_points(a));
  const std::size_t n0 = pts[0].size();
  const std::size_t n1 = pts.size() > 1 ? pts[1].size() : 1;
  result.rows.resize(n0 * n1);

  const auto eval_row = [&](std::size_t idx) {
    SweepRow row;
    std::map<std::string, double> values = cfg.fixed;
    const std::size_t i = idx / n1, j = idx % n1;
    values[cfg.axes[0].name] = pts[0][i];
    row.axis_values.push_back(pts[0][i]);
    if (pts.size() > 1) {
      values[cfg.axes[1].name] = pts[1][j];
      row.axis_values.push_back(pts[1][j]);
    }
    try {
      row.value = evaluate_quantity(cfg.quantity, values);
    } catch (const DomainError& err) {
      row.error = err.code();
    }
    return row;
  };

  const std::size_t total = result.rows.size();
  if (threads <= 1) {
    for (std::size_t idx = 0; idx < total; ++idx) result.rows[idx] = eval_row(idx);
  } else {
    std::vector<std::future<void>> work;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::size_t lo = std::min(total, std::size_t(w) * chunk);
      const std::size_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      work.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t idx = lo; idx < hi; ++idx) result.rows[idx] = eval_row(idx);
      }));
    }
    for (auto& f : work) f.get();
  }
  return result;
}

void write_csv(const SweepResult& result, int precision, std::ostream& out) {
  for (std::size_t i = 0; i < result.header.size(); ++i) {
    if (i) out << ',';
    out << result.header[i];
  }
  out << '\n';
  // The error column always carries a token so no row ends with a comma;
  // failed points leave the value cell empty instead.
  for (const SweepRow& row : result.rows) {
    for (double v : row.axis_values) out << detail::format_double(v, precision) << ',';
    if (row.value) out << detail::format_double(*row.value, precision);
    out << ',' << (row.error.empty() ? "ok" : row.error) << '\n';
  }
}

void write_csv_file(const SweepResult& result, const SweepConfig& cfg) {
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw DomainError("CONFIG_IO", "cannot open output file: " + cfg.output_path);
  write_csv(result, cfg.precision, out);
}

}  // namespace spinpair
