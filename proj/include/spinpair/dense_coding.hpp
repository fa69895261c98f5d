#pragma once

// Optimal dense coding over the two-spin thermal channel: encoding unitaries
// on spin 1, the averaged signal state, and the capacity chi = 2 - S(rho)
// cross-checked against its closed hyperbolic form.

#include "spinpair/model.hpp"

#include <array>

namespace spinpair {

/// Reading of the encoding phase. `orthogonal` is the Pauli frame
/// {I, Z, X, XZ} whose members are mutually orthogonal under the trace inner
/// product, as the optimality argument requires. `quarter_pi` keeps a pi/4
/// phase instead of pi for comparison experiments; that set is not orthogonal.
enum class EncodingPhase { orthogonal, quarter_pi };

struct EncodingSet {
  std::array<Matrix2c, 4> unitary;  // U00, U01, U10, U11 acting on spin 1
  EncodingPhase phase = EncodingPhase::orthogonal;
  bool orthogonal = true;  // tr(Ui^dag Uj) = 2 delta_ij holds
};

EncodingSet encoding_unitaries(EncodingPhase phase = EncodingPhase::orthogonal);

/// Literal uniform average (1/4) sum_i (U_i x I) rho (U_i^dag x I). For any
/// orthogonal encoding set this equals I2/2 (x) tr_1(rho): the twirl
/// depolarizes spin 1 and leaves the spin-2 marginal untouched.
Matrix4c average_signal_state(const Matrix4c& rho, const EncodingSet& set = encoding_unitaries());

struct CapacityReport {
  double chi = 0.0;          // 2 - S(rho), bits
  double entropy_rho = 0.0;  // S(rho), bits, from the numeric eigensolver
  double entropy_avg = 2.0;  // entropy assigned to the averaged signal state
  double chi_closed = 0.0;   // closed hyperbolic form, shift-evaluated
  double term_a = 0.0;       // A = e^{J/4T}(J cosh y + 2 sqrt(j_eff) sinh y)/2T
  double term_b = 0.0;       // B = e^{-J/4T}(-J cosh x + 4 g Bz sinh x)/2T
  double zeta = 0.0;         // 1 + e^{J/2T} cosh y
  double delta = 0.0;        // -J + e^{J/2T} sqrt(j_eff) sinh y
  bool valid = false;        // chi > 1
};

/// Capacity computed two ways: definitionally as 2 - S(rho) with the entropy
/// taken by the numeric eigensolver, and through the closed form (general-Bz
/// variant, or the zeta/delta variant when Bz = 0). A disagreement beyond 1e-6
/// is treated as an internal transcription bug and raises logic_error.
CapacityReport capacity(const ModelParams& p);

/// Closed-form threshold test for chi > 1. Only defined for Bz = 0
/// (rejected otherwise); evaluated in scaled form so small T is safe.
bool validity(const ModelParams& p);

}  // namespace spinpair
