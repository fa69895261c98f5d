#pragma once

// Brute-force numerical kernel: complex Hermitian eigensolver (cyclic Jacobi),
// spectral matrix functions, entropies, partial trace and Schmidt analysis.
// Everything here is derived from first principles of linear algebra so it can
// serve as an independent cross-check for the closed-form model expressions.

#include "spinpair/types.hpp"

#include <array>
#include <optional>

namespace spinpair {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Eigenvector columns are orthonormal and phase-normalized so that the first
/// component above 1e-12 in magnitude is real and non-negative; equal
/// eigenvalues are ordered by lexicographic comparison of the normalized
/// eigenvector components.
template <int N>
struct EigenDecompositionN {
  Eigen::Matrix<double, N, 1> values;
  Eigen::Matrix<complexd, N, N> vectors;  // columns
};

using EigenDecomposition4 = EigenDecompositionN<4>;
using EigenDecomposition2 = EigenDecompositionN<2>;

/// Cyclic Jacobi on the complex Hermitian matrix itself; converged when the
/// off-diagonal Frobenius norm drops below 1e-14 (at most 100 sweeps).
/// Throws DomainError("NOT_HERMITIAN") when max |M - M^dag| > herm_tol.
EigenDecomposition4 eig_hermitian(const Matrix4c& m, double herm_tol = 1e-10);
EigenDecomposition2 eig_hermitian(const Matrix2c& m, double herm_tol = 1e-10);

/// e^{-i H t} by spectral decomposition; unitary to solver accuracy.
Matrix4c expm_i(const Matrix4c& h, double t);

/// Gibbs state e^{-H/T} / tr e^{-H/T}, evaluated with shifted exponents so it
/// cannot overflow for any T > 0.
Matrix4c gibbs(const Matrix4c& h, double temperature);

/// Von Neumann entropy in bits. Rejects matrices whose trace deviates from 1
/// by more than 1e-9 or with an eigenvalue below -1e-8; small negative
/// eigenvalues are clamped to zero and 0 log 0 := 0.
double von_neumann_entropy(const Matrix4c& rho);
double von_neumann_entropy(const Matrix2c& rho);

/// Reduced state of spin 1 (spin 2 traced out).
Matrix2c reduced_spin1(const Matrix4c& rho);
Matrix2c reduced_spin1(const Vector4c& psi);

/// Reduced state of spin 2 (spin 1 traced out).
Matrix2c reduced_spin2(const Matrix4c& rho);

struct SchmidtFactors {
  Vector2c spin1;
  Vector2c spin2;
  double global_phase = 0.0;  // psi = e^{i global_phase} spin1 (x) spin2
};

struct SchmidtResult {
  bool product = false;
  double residual = 0.0;  // |ad - bc| of the coefficient matrix
  std::optional<SchmidtFactors> factors;
};

/// Try to factor a unit two-spin vector as a product state. The coefficient
/// matrix [[a,b],[c,d]] factors exactly when its determinant vanishes; the
/// factors come from the dominant singular pair. Both factors carry the
/// first-nonzero-amplitude-real-nonnegative phase convention and the leftover
/// phase is reported separately.
SchmidtResult schmidt_factor(const Vector4c& psi, double tol);

namespace detail {
/// Significant decimal digits needed; shared by the CSV writer and CLI.
std::string format_double(double x, int precision);
}  // namespace detail

}  // namespace spinpair
