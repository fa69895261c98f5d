#pragma once

// Two exchange-coupled electronic spins with a z-axis DM (spin-orbit) term and
// static effective nuclear fields. The working Hamiltonian keeps only the
// secular part that survives a large axial external field; the full transverse
// structure is available separately as a validation reference.

#include "spinpair/types.hpp"

#include <array>

namespace spinpair {

/// Physical inputs. J > 0 is antiferromagnetic, J < 0 ferromagnetic; beta0 is
/// the z-component of the DM vector; Bz and dBz are the mean and half
/// difference of the axial fields on the two spins; gamma_e converts field to
/// energy and defaults to 1 so that dbz_eff = 2*dBz numerically.
struct ModelParams {
  double J = 1.0;
  double beta0 = 0.0;
  double gamma_e = 1.0;
  double Bz = 0.0;
  double dBz = 0.0;
  double T = 1.0;
};

/// Convenience constructor taking the effective field splitting directly.
ModelParams params_with_dbz_eff(double J, double beta0, double dbz_eff, double Bz, double T,
                                double gamma_e = 1.0);

struct DerivedParams {
  double dbz_eff = 0.0;     // 2 * gamma_e * dBz
  double j_eff = 0.0;       // J^2 (1 + beta0^2) + dbz_eff^2
  double sqrt_j_eff = 0.0;
};

DerivedParams derive(const ModelParams& p);

void validate(const ModelParams& p);  // finite values, gamma_e > 0

/// Transverse field components (mean and half difference per axis).
struct FullFieldParams {
  double Bx = 0.0;
  double By = 0.0;
  double dBx = 0.0;
  double dBy = 0.0;
  complexd theta() const { return {Bx, By}; }
  complexd dtheta() const { return {dBx, dBy}; }
};

/// Secular Hamiltonian in the basis {|11>,|10>,|01>,|00>}: diagonal
/// (J/4 - g Bz, -J/4 - g dBz, -J/4 + g dBz, J/4 + g Bz) with central-block
/// coupling (J/2)(1 +- i beta0), g = gamma_e.
Matrix4c hamiltonian(const ModelParams& p);

/// Full Hamiltonian including transverse fields,
///   J [S1.S2 + beta0 (S1 x S2)_z] - gamma_e [B.(S1+S2) + dB.(S1-S2)],
/// with spin-1/2 operators. The axial sign convention is fixed by requiring
/// that zero transverse field reproduces hamiltonian() exactly.
Matrix4c full_hamiltonian(const ModelParams& p, const FullFieldParams& f);

/// Closed-form eigensystem of the secular Hamiltonian, stored in label order:
///   [0] |11>, E = J/4 - g Bz        [3] |00>, E = J/4 + g Bz
///   [1] central, E = -J/4 - sqrt(j_eff)/2
///   [2] central, E = -J/4 + sqrt(j_eff)/2
/// For J = 0 the central closed form degenerates and the numeric eigensolver
/// is used instead (numeric_branch is set; xi becomes infinite).
struct EigenSystem {
  std::array<double, 4> energy{};
  std::array<Vector4c, 4> state{};
  double eta_plus = 0.0;   // -dbz_eff + sqrt(j_eff)
  double eta_minus = 0.0;  // -dbz_eff - sqrt(j_eff)
  double xi_plus = 0.0;    // 1 + (sqrt(j_eff) + dbz_eff)^2 / (J^2 (1+beta0^2))
  double xi_minus = 0.0;
  bool numeric_branch = false;
};

EigenSystem analytic_eigensystem(const ModelParams& p);

}  // namespace spinpair
