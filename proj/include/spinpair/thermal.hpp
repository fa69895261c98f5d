#pragma once

// Gibbs states of the secular Hamiltonian. All Boltzmann factors are computed
// with shifted exponents so temperatures down to 1e-4 (and far below) are safe.

#include "spinpair/model.hpp"

#include <array>

namespace spinpair {

struct ThermalState {
  Matrix4c rho;
  double Z = 0.0;      // partition function; overflows to inf at extreme T
  double log_Z = 0.0;  // always finite
  double T = 0.0;
  std::array<double, 4> weight{};  // Boltzmann populations, label order
  EigenSystem eigensystem;
};

ThermalState thermal_state(const ModelParams& p);

/// Closed-form partition function
///   Z = 2 e^{-J/4T} cosh(g Bz / T) + 2 e^{J/4T} cosh(sqrt(j_eff)/2T)
/// evaluated literally (may overflow) and in log form (never overflows).
double partition_function_closed(const ModelParams& p);
double log_partition_function_closed(const ModelParams& p);

/// Closed-form thermal state for beta0 = 0, Bz = 0 (rejected otherwise):
/// corners 1/Z0 and a real symmetric central block, Z0 = 2 + 2 e^{J/2T} cosh(theta),
/// theta = sqrt(j_eff)/2T.
Matrix4c thermal_state_no_dm(const ModelParams& p);

/// Ground state of the secular Hamiltonian (the T -> 0 thermal state when the
/// ground level is unique). A gap below 1e-12 flags degeneragy and the partner
/// state is returned as well.
struct GroundState {
  Vector4c state;
  double energy = 0.0;
  double gap = 0.0;  // to the second-lowest level
  bool degenerate = false;
  Vector4c partner;  // valid when degenerate
};

GroundState zero_temperature_state(const ModelParams& p);

}  // namespace spinpair
