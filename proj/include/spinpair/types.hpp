#pragma once

// Core dense types for the two-spin library.
//
// Conventions used throughout:
//   - single-spin basis is ordered (|1>, |0>) = (spin up, spin down)
//   - two-spin basis is { |11>, |10>, |01>, |00> } in that order,
//     |ab> = |a> on spin 1 (x) |b> on spin 2
//   - natural units k_B = hbar = 1; energies, temperatures and gamma_e*B
//     share one energy unit.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace spinpair {

using complexd = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

/// Error with a short stable machine-readable code (used for CSV error cells).
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string code, const std::string& what)
      : std::invalid_argument(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline Vector4c kron(const Vector2c& a, const Vector2c& b) {
  Vector4c out;
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

template <typename M>
double hermiticity_defect(const M& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename M>
double unitarity_defect(const M& m) {
  M id = M::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff();
}

template <typename M>
void require_hermitian(const M& m, double tol, const char* who) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol))
    throw DomainError("NOT_HERMITIAN", std::string(who) + ": matrix is not Hermitian, max |M - M^dag| = " +
                                            std::to_string(defect));
}

}  // namespace spinpair
