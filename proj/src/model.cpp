#include "spinpair/model.hpp"

#include "spinpair/linalg.hpp"

#include <cmath>

namespace spinpair {

ModelParams params_with_dbz_eff(double J, double beta0, double dbz_eff, double Bz, double T,
                                double gamma_e) {
  ModelParams p;
  p.J = J;
  p.beta0 = beta0;
  p.gamma_e = gamma_e;
  p.Bz = Bz;
  p.dBz = dbz_eff / (2.0 * gamma_e);
  p.T = T;
  return p;
}

void validate(const ModelParams& p) {
  if (!(p.gamma_e > 0.0)) throw DomainError("INVALID_GAMMA", "gamma_e must be positive");
  for (double v : {p.J, p.beta0, p.gamma_e, p.Bz, p.dBz, p.T})
    if (!std::isfinite(v)) throw DomainError("NOT_FINITE", "model parameter is not finite");
}

DerivedParams derive(const ModelParams& p) {
  DerivedParams d;
  d.dbz_eff = 2.0 * p.gamma_e * p.dBz;
  d.j_eff = p.J * p.J * (1.0 + p.beta0 * p.beta0) + d.dbz_eff * d.dbz_eff;
  d.sqrt_j_eff = std::sqrt(d.j_eff);
  return d;
}

Matrix4c hamiltonian(const ModelParams& p) {
  validate(p);
  const double g = p.gamma_e;
  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = p.J / 4.0 - g * p.Bz;
  h(1, 1) = -p.J / 4.0 - g * p.dBz;
  h(2, 2) = -p.J / 4.0 + g * p.dBz;
  h(3, 3) = p.J / 4.0 + g * p.Bz;
  h(1, 2) = 0.5 * p.J * complexd(1.0, p.beta0);
  h(2, 1) = std::conj(h(1, 2));
  return h;
}

namespace {

// Spin-1/2 operators in the single-spin basis (|1>, |0>) = (up, down).
Matrix2c spin_x() {
  Matrix2c m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}
Matrix2c spin_y() {
  Matrix2c m;
  m << complexd(0, 0), complexd(0, -0.5), complexd(0, 0.5), complexd(0, 0);
  return m;
}
Matrix2c spin_z() {
  Matrix2c m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

}  // namespace

Matrix4c full_hamiltonian(const ModelParams& p, const FullFieldParams& f) {
  validate(p);
  for (double v : {f.Bx, f.By, f.dBx, f.dBy})
    if (!std::isfinite(v)) throw DomainError("NOT_FINITE", "field parameter is not finite");

  const Matrix2c sx = spin_x(), sy = spin_y(), sz = spin_z();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c s1x = kron(sx, id), s2x = kron(id, sx);
  const Matrix4c s1y = kron(sy, id), s2y = kron(id, sy);
  const Matrix4c s1z = kron(sz, id), s2z = kron(id, sz);

  // Exchange + DM part; identical to the central structure of hamiltonian().
  Matrix4c h = p.J * (s1x * s2x + s1y * s2y + s1z * s2z +
                      p.beta0 * (s1x * s2y - s1y * s2x));

  // Zeeman part. The sign is pinned by the secular limit: with transverse
  // components off this must coincide with hamiltonian() entry for entry.
  const double g = p.gamma_e;
  const double b1x = f.Bx + f.dBx, b1y = f.By + f.dBy, b1z = p.Bz + p.dBz;
  const double b2x = f.Bx - f.dBx, b2y = f.By - f.dBy, b2z = p.Bz - p.dBz;
  h -= g * (b1x * s1x + b1y * s1y + b1z * s1z + b2x * s2x + b2y * s2y + b2z * s2z);
  return h;
}

EigenSystem analytic_eigensystem(const ModelParams& p) {
  validate(p);
  const DerivedParams d = derive(p);
  EigenSystem es;
  es.energy[0] = p.J / 4.0 - p.gamma_e * p.Bz;
  es.energy[1] = -p.J / 4.0 - d.sqrt_j_eff / 2.0;
  es.energy[2] = -p.J / 4.0 + d.sqrt_j_eff / 2.0;
  es.energy[3] = p.J / 4.0 + p.gamma_e * p.Bz;
  es.state[0] = Vector4c::Unit(0);
  es.state[3] = Vector4c::Unit(3);

  const double abs_d2 = p.J * p.J * (1.0 + p.beta0 * p.beta0);

  if (p.J == 0.0) {
    // Central closed form is singular; classify numeric eigenpairs instead.
    es.numeric_branch = true;
    es.eta_plus = -d.dbz_eff + d.sqrt_j_eff;
    es.eta_minus = -d.dbz_eff - d.sqrt_j_eff;
    es.xi_plus = es.xi_minus = std::numeric_limits<double>::infinity();
    const auto num = eig_hermitian(hamiltonian(p));
    // Pick the two eigenvectors living in the central block, lower energy first.
    int found = 0;
    for (int i = 0; i < 4 && found < 2; ++i) {
      const Vector4c v = num.vectors.col(i);
      if (std::norm(v(1)) + std::norm(v(2)) > 0.5) es.state[1 + found++] = v;
    }
    return es;
  }

  // Cancellation-free eta: eta+ * eta- = -J^2 (1+beta0^2).
  if (d.dbz_eff >= 0.0) {
    es.eta_minus = -(d.sqrt_j_eff + d.dbz_eff);
    es.eta_plus = abs_d2 / (d.sqrt_j_eff + d.dbz_eff);
  } else {
    es.eta_plus = d.sqrt_j_eff - d.dbz_eff;
    es.eta_minus = -abs_d2 / (d.sqrt_j_eff - d.dbz_eff);
  }
  es.xi_plus = 1.0 + (d.sqrt_j_eff + d.dbz_eff) * (d.sqrt_j_eff + d.dbz_eff) / abs_d2;
  es.xi_minus = 1.0 + (d.sqrt_j_eff - d.dbz_eff) * (d.sqrt_j_eff - d.dbz_eff) / abs_d2;

  const complexd dm = p.J * complexd(1.0, p.beta0);
  const auto central = [&dm](double eta) {
    Vector4c v = Vector4c::Zero();
    v(1) = -dm;
    v(2) = eta;
    v /= std::sqrt(std::norm(dm) + eta * eta);
    return v;
  };
  es.state[1] = central(es.eta_plus);
  es.state[2] = central(es.eta_minus);
  return es;
}

}  // namespace spinpair
