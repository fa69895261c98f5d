#include "spinpair/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>

namespace spinpair {

namespace {

constexpr double kOffDiagTarget = 1e-14;
constexpr int kMaxSweeps = 100;
constexpr double kPhaseEps = 1e-12;

template <int N>
double off_diagonal_norm(const Eigen::Matrix<complexd, N, N>& a) {
  double s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

template <int N>
void phase_normalize(Eigen::Matrix<complexd, N, 1>& v) {
  for (int i = 0; i < N; ++i) {
    const double mag = std::abs(v(i));
    if (mag > kPhaseEps) {
      v *= std::conj(v(i)) / mag;
      v(i) = complexd(mag, 0.0);  // kill rounding in the pivot component
      return;
    }
  }
}

template <int N>
bool lex_less(const Eigen::Matrix<complexd, N, 1>& a, const Eigen::Matrix<complexd, N, 1>& b) {
  for (int i = 0; i < N; ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

template <int N>
EigenDecompositionN<N> jacobi_hermitian(Eigen::Matrix<complexd, N, N> a, double herm_tol) {
  require_hermitian(a, herm_tol, "eig_hermitian");
  // Work on the exactly Hermitian part so rounding in the input cannot leak
  // imaginary parts into the diagonal.
  a = ((a + a.adjoint()) / 2.0).eval();

  Eigen::Matrix<complexd, N, N> vecs = Eigen::Matrix<complexd, N, N>::Identity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm<N>(a) <= kOffDiagTarget) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const complexd apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Phase factor turning the pivot real, then a real Jacobi rotation.
        const complexd u = apq / g;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double tn = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + tn * tn);
        const complexd s = tn * c * u;

        // Columns: [p q] <- [p q] * [[c, s],[-conj(s), c]]
        for (int r = 0; r < N; ++r) {
          const complexd arp = a(r, p);
          const complexd arq = a(r, q);
          a(r, p) = c * arp - std::conj(s) * arq;
          a(r, q) = s * arp + c * arq;
          const complexd vrp = vecs(r, p);
          const complexd vrq = vecs(r, q);
          vecs(r, p) = c * vrp - std::conj(s) * vrq;
          vecs(r, q) = s * vrp + c * vrq;
        }
        // Rows (the adjoint rotation from the left).
        for (int r = 0; r < N; ++r) {
          const complexd apr = a(p, r);
          const complexd aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = std::conj(s) * apr + c * aqr;
        }
        a(p, q) = complexd(0.0, 0.0);
        a(q, p) = complexd(0.0, 0.0);
        a(p, p) = complexd(a(p, p).real(), 0.0);
        a(q, q) = complexd(a(q, q).real(), 0.0);
      }
    }
  }

  EigenDecompositionN<N> out;
  std::array<int, N> order;
  for (int i = 0; i < N; ++i) order[i] = i;
  std::array<Eigen::Matrix<complexd, N, 1>, N> cols;
  for (int i = 0; i < N; ++i) {
    cols[i] = vecs.col(i);
    phase_normalize<N>(cols[i]);
  }
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (a(i, i).real() != a(j, j).real()) return a(i, i).real() < a(j, j).real();
    return lex_less<N>(cols[i], cols[j]);
  });
  for (int i = 0; i < N; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = cols[order[i]];
  }
  return out;
}

void validate_density(const EigenDecomposition4& es, double trace, const char* who) {
  if (!(std::abs(trace - 1.0) <= 1e-9))
    throw DomainError("INVALID_DENSITY",
                      std::string(who) + ": trace deviates from 1 by " + std::to_string(trace - 1.0));
  if (!(es.values.minCoeff() >= -1e-8))
    throw DomainError("INVALID_DENSITY", std::string(who) + ": eigenvalue " +
                                             std::to_string(es.values.minCoeff()) + " below -1e-8");
}

double entropy_bits_from_eigenvalues(const double* p, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = p[i];
    if (v < 0.0) v = 0.0;  // clamp small negatives (validated above)
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace

EigenDecomposition4 eig_hermitian(const Matrix4c& m, double herm_tol) {
  return jacobi_hermitian<4>(m, herm_tol);
}

EigenDecomposition2 eig_hermitian(const Matrix2c& m, double herm_tol) {
  return jacobi_hermitian<2>(m, herm_tol);
}

Matrix4c expm_i(const Matrix4c& h, double t) {
  if (!std::isfinite(t)) throw DomainError("INVALID_TIME", "expm_i: time must be finite");
  const auto es = eig_hermitian(h);
  Vector4c phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -es.values(i) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Matrix4c gibbs(const Matrix4c& h, double temperature) {
  if (!(temperature > 0.0))
    throw DomainError("T_NOT_POSITIVE", "gibbs: temperature must be positive");
  const auto es = eig_hermitian(h);
  const double emin = es.values.minCoeff();
  Eigen::Vector4d w;
  for (int i = 0; i < 4; ++i) w(i) = std::exp(-(es.values(i) - emin) / temperature);
  w /= w.sum();
  return es.vectors * w.cast<complexd>().asDiagonal() * es.vectors.adjoint();
}

double von_neumann_entropy(const Matrix4c& rho) {
  const auto es = eig_hermitian(rho);
  validate_density(es, rho.trace().real(), "von_neumann_entropy");
  return entropy_bits_from_eigenvalues(es.values.data(), 4);
}

double von_neumann_entropy(const Matrix2c& rho) {
  const auto es = eig_hermitian(rho);
  if (!(std::abs(rho.trace().real() - 1.0) <= 1e-9))
    throw DomainError("INVALID_DENSITY", "von_neumann_entropy: trace deviates from 1");
  if (!(es.values.minCoeff() >= -1e-8))
    throw DomainError("INVALID_DENSITY", "von_neumann_entropy: eigenvalue below -1e-8");
  return entropy_bits_from_eigenvalues(es.values.data(), 2);
}

Matrix2c reduced_spin1(const Matrix4c& rho) {
  // basis {|11>,|10>,|01>,|00>}: spin-1 block index a together with spin-2
  // index x maps to row 2*(1-a) + (1-x); summing over the spin-2 index.
  Matrix2c out;
  out(0, 0) = rho(0, 0) + rho(1, 1);
  out(0, 1) = rho(0, 2) + rho(1, 3);
  out(1, 0) = rho(2, 0) + rho(3, 1);
  out(1, 1) = rho(2, 2) + rho(3, 3);
  return out;
}

Matrix2c reduced_spin2(const Matrix4c& rho) {
  Matrix2c out;
  out(0, 0) = rho(0, 0) + rho(2, 2);
  out(0, 1) = rho(0, 1) + rho(2, 3);
  out(1, 0) = rho(1, 0) + rho(3, 2);
  out(1, 1) = rho(1, 1) + rho(3, 3);
  return out;
}

Matrix2c reduced_spin1(const Vector4c& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw DomainError("INVALID_STATE", "reduced_spin1: vector is not normalized");
  Matrix2c out;
  out(0, 0) = std::norm(psi(0)) + std::norm(psi(1));
  out(0, 1) = psi(0) * std::conj(psi(2)) + psi(1) * std::conj(psi(3));
  out(1, 0) = std::conj(out(0, 1));
  out(1, 1) = std::norm(psi(2)) + std::norm(psi(3));
  return out;
}

SchmidtResult schmidt_factor(const Vector4c& psi, double tol) {
  if (!(tol > 0.0)) throw DomainError("INVALID_TOLERANCE", "schmidt_factor: tol must be positive");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw DomainError("INVALID_STATE", "schmidt_factor: vector is not normalized");

  Matrix2c m;
  m << psi(0), psi(1), psi(2), psi(3);  // rows: spin 1, columns: spin 2
  SchmidtResult res;
  res.residual = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  if (res.residual > tol) return res;
  res.product = true;

  // Dominant left singular vector from m m^dag, then the matching right factor.
  const Matrix2c mm = m * m.adjoint();
  const auto es = eig_hermitian(mm);
  Vector2c u = es.vectors.col(1);  // largest eigenvalue
  Vector2c w = (u.adjoint() * m).transpose();
  double phase2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(w(i)) > kPhaseEps) {
      phase2 = std::arg(w(i));
      break;
    }
  }
  const double wnorm = w.norm();
  if (wnorm == 0.0) return SchmidtResult{};  // cannot happen for unit psi
  Vector2c v = w * std::polar(1.0, -phase2) / wnorm;

  SchmidtFactors f;
  f.spin1 = u;
  f.spin2 = v;
  f.global_phase = phase2;
  res.factors = f;
  return res;
}

namespace detail {

namespace {
int significant_digits(const char* s, int len) {
  int digits = 0;
  bool seen_nonzero = false;
  for (int i = 0; i < len; ++i) {
    const char c = s[i];
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (c == '0' && !seen_nonzero) continue;
    seen_nonzero = true;
    ++digits;
  }
  // trailing zeros before the exponent count as significant in the shortest form
  return digits == 0 ? 1 : digits;
}
}  // namespace

std::string format_double(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  if (r.ec == std::errc() && significant_digits(buf, int(r.ptr - buf)) <= precision)
    return std::string(buf, r.ptr);
  r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, precision);
  return std::string(buf, r.ptr);
}

}  // namespace detail

}  // namespace spinpair
