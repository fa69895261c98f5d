#pragma once

// Analytic time evolution of product states under the secular Hamiltonian,
// the product-state (purity) witness, the commensurability solver for swap
// times, and the swap / sqrt-swap / CNOT gate algebra.

#include "spinpair/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spinpair {

struct ProductState {
  Vector2c spin1;  // (alpha1, beta1) in the (|1>,|0>) basis
  Vector2c spin2;  // (alpha2, beta2)
  Vector4c vec() const { return kron(spin1, spin2); }
};

ProductState make_product(complexd a1, complexd b1, complexd a2, complexd b2);

/// Uniformly random product state; amplitudes are kept at least `min_amp`
/// away from zero so relative phases stay well conditioned.
ProductState random_product_state(std::uint64_t seed, double min_amp = 0.0);

struct EvolvedState {
  complexd a, b, c, d;  // coefficients of |11>,|10>,|01>,|00>
  complexd p_plus, p_minus, q_plus, q_minus;
  bool oracle_path = false;  // J = 0 evolves through the numeric exponential
  Vector4c vec() const {
    Vector4c v;
    v << a, b, c, d;
    return v;
  }
};

/// Closed-form evolution e^{-iHt} of a product state:
///   a = alpha1 alpha2 e^{-i E1 t},  d = beta1 beta2 e^{-i E4 t},
///   b = e^{iJt/4} (P+ e^{i t sqrt(j_eff)/2} + P- e^{-i t sqrt(j_eff)/2}) / 2,
///   c = e^{iJt/4} (Q- e^{i t sqrt(j_eff)/2} + Q+ e^{-i t sqrt(j_eff)/2}) / 2,
/// with P+- = (1 +- dbz_eff/s) a1 b2 -+ (J(1+i beta0)/s) b1 a2 and
///      Q+- = (1 +- dbz_eff/s) b1 a2 +- (J(1-i beta0)/s) a1 b2, s = sqrt(j_eff).
/// Matches the numeric matrix exponential to solver accuracy.
EvolvedState evolve(const ModelParams& p, const ProductState& s0, double t);

/// Reduced state of spin 1 straight from the coefficients.
Matrix2c reduced_density_spin1(const EvolvedState& e);

/// ad - bc together with its closed form. The state stays a product state
/// exactly when the witness vanishes (|ad-bc|^2 = det of either reduced state).
struct PurityWitness {
  complexd value;        // ad - bc from the evolved coefficients
  complexd mu, nu, x, y; // closed-form ingredients
  complexd closed_form;  // -e^{-iJt/2} (mu + i nu) / (2 j_eff)
  double identity_residual = 0.0;  // |value - closed_form|
};

PurityWitness purity_witness(const ModelParams& p, const ProductState& s0, double t);

enum class SwapCase { case1_1, case1_2_even, case1_2_odd, case2_1, case2_2_even, case2_2_odd };

const char* to_string(SwapCase c);

/// A time where the evolution maps every product state to a product state.
/// Case 1 (both block phase windings even): the spins return to themselves.
/// Case 2 (both windings odd, requires dbz_eff = 0): the spins swap, up to
/// one phase correction per spin. Phases are measured from an actual
/// evolution; the arccos[(2n+1)/(2k+1)] tabulation is recorded for comparison
/// but never trusted.
struct SwapSolution {
  double t = 0.0;
  long k = 0;  // winding of the central-block precession, >= 0
  long n = 0;  // winding of the exchange phase, signed (t >= 0 fixes the sign)
  SwapCase case_label = SwapCase::case1_1;
  bool swaps = false;             // true for case-2 solutions
  double residual_sqrt = 0.0;     // |sqrt(j_eff) t - (winding) pi|
  double dbz_eff_residual = 0.0;  // |dbz_eff| for case-2 candidates
  double phase_spin1 = 0.0;       // measured beta-amplitude phase correction
  double phase_spin2 = 0.0;
  double arccos_ratio = 0.0;          // arccos(|2n+1| / (2k+1)), case 2
  double reference_phase_spin1 = 0.0; // tabulated prediction for spin 1
  double phase_spin1_deviation = 0.0; // angular distance measured vs tabulated
  double phase_spin2_deviation = 0.0;
  double alt_time_residual = 0.0;  // |t - 2 pi sqrt((k+n+1)(k+n)) / (J beta0)|, case 2.2
};

/// Enumerates commensurate windings k in [0, k_max], |n| bounded by n_max,
/// keeps candidates whose secondary condition holds within tol, and returns
/// them sorted by (t, k, n). An empty result is a normal "none in range".
std::vector<SwapSolution> find_swap_times(const ModelParams& p, int k_max = 32, int n_max = 32,
                                          double tol = 1e-9);

struct SwapVerification {
  bool ok = false;
  bool swapped_pattern = false;  // factors are the swapped inputs (vs. returned inputs)
  double phase_spin1 = 0.0;      // circular mean over the batch
  double phase_spin2 = 0.0;
  double spread_spin1 = 0.0;  // max pairwise angular spread over the batch
  double spread_spin2 = 0.0;
  double max_witness = 0.0;
  double max_factor_residual = 0.0;
  int states = 0;
  std::string failure;
};

/// Evolves each state to sol.t, factors it, and checks that the factors match
/// the expected pattern with phases that do not depend on the input state.
SwapVerification verify_swap(const ModelParams& p, const SwapSolution& sol,
                             std::span<const ProductState> states, double tol);
SwapVerification verify_swap(const ModelParams& p, const SwapSolution& sol, std::uint64_t seed,
                             int batch = 32, double tol = 1e-8);

// Gate algebra -------------------------------------------------------------

Matrix4c swap_gate();
Matrix4c sqrt_swap();  // principal branch: eigenvalue -1 maps to +i
Matrix4c cnot_gate();  // control spin 1, target spin 2
Matrix4c cz_gate();    // -1 on |11>

/// Max-norm distance between two operators minimized over a global phase.
double phase_invariant_distance(const Matrix4c& u, const Matrix4c& v);

/// The single-spin-rotation + sqrt-swap composition
///   e^{i pi/4 sz_1} e^{-i pi/4 sz_2} sqrt_swap e^{i pi/2 sz_1} sqrt_swap.
/// The composed gate is reported against both CNOT and CZ; it lands on CZ
/// exactly, which is CNOT up to Hadamards on the target spin.
struct GateCompositionReport {
  Matrix4c composed;
  double sqrt_swap_squared_deviation = 0.0;  // ||sqrt_swap^2 - swap||max
  double deviation_from_cnot = 0.0;
  double deviation_from_cz = 0.0;
};

GateCompositionReport cnot_from_sqrt_swap();

}  // namespace spinpair
