#include "spinpair/thermal.hpp"

#include "spinpair/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace spinpair {

namespace {
void require_positive_temperature(const ModelParams& p) {
  if (!(p.T > 0.0)) throw DomainError("T_NOT_POSITIVE", "temperature must be positive");
}
}  // namespace

ThermalState thermal_state(const ModelParams& p) {
  validate(p);
  require_positive_temperature(p);
  ThermalState ts;
  ts.T = p.T;
  ts.eigensystem = analytic_eigensystem(p);

  const auto& es = ts.eigensystem;
  const double emin = *std::min_element(es.energy.begin(), es.energy.end());
  double zshift = 0.0;
  for (int i = 0; i < 4; ++i) {
    ts.weight[i] = std::exp(-(es.energy[i] - emin) / p.T);
    zshift += ts.weight[i];
  }
  for (double& w : ts.weight) w /= zshift;
  ts.log_Z = -emin / p.T + std::log(zshift);
  ts.Z = std::exp(ts.log_Z);

  ts.rho = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i)
    ts.rho += ts.weight[i] * (es.state[i] * es.state[i].adjoint());
  return ts;
}

double log_partition_function_closed(const ModelParams& p) {
  validate(p);
  require_positive_temperature(p);
  const DerivedParams d = derive(p);
  // Z as the explicit four-exponential sum with a common shift.
  const double x = std::abs(p.gamma_e * p.Bz / p.T);
  const double y = std::abs(d.sqrt_j_eff / (2.0 * p.T));
  const double w = p.J / (4.0 * p.T);
  const double e1 = -w + x, e2 = -w - x, e3 = w + y, e4 = w - y;
  const double m = std::max({e1, e2, e3, e4});
  return m + std::log(std::exp(e1 - m) + std::exp(e2 - m) + std::exp(e3 - m) + std::exp(e4 - m));
}

double partition_function_closed(const ModelParams& p) {
  validate(p);
  require_positive_temperature(p);
  const DerivedParams d = derive(p);
  return 2.0 * std::exp(-p.J / (4.0 * p.T)) * std::cosh(p.gamma_e * p.Bz / p.T) +
         2.0 * std::exp(p.J / (4.0 * p.T)) * std::cosh(d.sqrt_j_eff / (2.0 * p.T));
}

Matrix4c thermal_state_no_dm(const ModelParams& p) {
  validate(p);
  require_positive_temperature(p);
  if (p.beta0 != 0.0) throw DomainError("BETA0_NOT_ZERO", "closed form requires beta0 = 0");
  if (p.Bz != 0.0) throw DomainError("BZ_NOT_ZERO", "closed form requires Bz = 0");

  const DerivedParams d = derive(p);
  const double s = d.sqrt_j_eff;
  // Z0 = 2 + 2 e^{J/2T} cosh(theta) expanded into exponentials and shifted.
  const double w = p.J / (2.0 * p.T);
  const double th = s / (2.0 * p.T);
  const double m = std::max({0.0, w + th, w - th});
  const double corner = std::exp(0.0 - m);
  const double ep = std::exp(w + th - m), en = std::exp(w - th - m);
  const double z0s = 2.0 * corner + ep + en;

  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = rho(3, 3) = corner / z0s;
  if (s == 0.0) {
    // j_eff = 0 forces J = 0 here; the central block is maximally mixed.
    rho(1, 1) = rho(2, 2) = std::exp(w - m) / z0s;
  } else {
    rho(1, 1) = ((s + d.dbz_eff) * ep + (s - d.dbz_eff) * en) / (2.0 * s * z0s);
    rho(2, 2) = ((s - d.dbz_eff) * ep + (s + d.dbz_eff) * en) / (2.0 * s * z0s);
    rho(1, 2) = rho(2, 1) = -p.J * (ep - en) / (2.0 * s * z0s);
  }
  return rho;
}

GroundState zero_temperature_state(const ModelParams& p) {
  validate(p);
  const EigenSystem es = analytic_eigensystem(p);
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.energy[a] < es.energy[b]; });
  GroundState g;
  g.state = es.state[order[0]];
  g.energy = es.energy[order[0]];
  g.gap = es.energy[order[1]] - es.energy[order[0]];
  if (g.gap <= 1e-12) {
    g.degenerate = true;
    g.partner = es.state[order[1]];
  }
  return g;
}

}  // namespace spinpair
