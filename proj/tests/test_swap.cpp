#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinpair/linalg.hpp"
#include "spinpair/swap.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace spinpair;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uj(-2.0, 2.0), ub(0.0, 2.0), uf(-1.0, 1.0);
  ModelParams p;
  do {
    p.J = uj(rng);
  } while (std::abs(p.J) < 1e-6);
  p.beta0 = ub(rng);
  p.dBz = uf(rng);
  p.Bz = uf(rng);
  return p;
}

double wrap(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

// True when psi factors into the swapped inputs (one phase per spin allowed).
bool is_swapped_product(const Vector4c& psi, const ProductState& s0, double tol) {
  const auto res = schmidt_factor(psi, tol);
  if (!res.product) return false;
  const Vector2c& u = res.factors->spin1;
  const Vector2c& v = res.factors->spin2;
  for (int i = 0; i < 2; ++i)
    if (std::abs(std::abs(u(i)) - std::abs(s0.spin2(i))) > 1e-6 ||
        std::abs(std::abs(v(i)) - std::abs(s0.spin1(i))) > 1e-6)
      return false;
  return true;
}

}  // namespace

TEST_CASE("zero time returns the input coefficients") {
  std::mt19937_64 rng(41);
  const ProductState s0 = random_product_state(rng());
  ModelParams p = random_params(rng);
  const EvolvedState e = evolve(p, s0, 0.0);
  const Vector4c want = s0.vec();
  CHECK((e.vec() - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("polarized states only acquire a phase") {
  ModelParams p = params_with_dbz_eff(1.0, 0.3, 0.4, 0.2, 1.0);
  const ProductState s0 = make_product(1.0, 0.0, 1.0, 0.0);  // |11>
  const double e1 = p.J / 4.0 - p.gamma_e * p.Bz;
  for (double t : {0.3, 1.9, 14.0}) {
    const EvolvedState e = evolve(p, s0, t);
    CHECK(std::abs(e.a - std::polar(1.0, -e1 * t)) <= 1e-12);
    CHECK(std::abs(e.b) <= 1e-15);
    CHECK(std::abs(e.c) <= 1e-15);
    CHECK(std::abs(e.d) <= 1e-15);
  }
}

TEST_CASE("closed-form evolution matches the matrix exponential") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = random_params(rng);
    const ProductState s0 = random_product_state(rng());
    const double t = ut(rng);
    const Vector4c closed = evolve(p, s0, t).vec();
    const Vector4c oracle = expm_i(hamiltonian(p), t) * s0.vec();
    worst = std::max(worst, (closed - oracle).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("norm is conserved over long evolutions") {
  std::mt19937_64 rng(43);
  const ModelParams p = params_with_dbz_eff(1.3, 0.8, 0.6, 0.4, 1.0);
  const ProductState s0 = random_product_state(rng());
  for (int i = 0; i <= 100; ++i) {
    const double t = double(i);
    CHECK(std::abs(evolve(p, s0, t).vec().norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("decoupled spins take the oracle path") {
  ModelParams p;
  p.J = 0.0;
  p.dBz = 0.4;
  p.Bz = 0.2;
  std::mt19937_64 rng(44);
  const ProductState s0 = random_product_state(rng());
  const EvolvedState e = evolve(p, s0, 2.2);
  CHECK(e.oracle_path);
  const Vector4c oracle = expm_i(hamiltonian(p), 2.2) * s0.vec();
  CHECK((e.vec() - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  // no exchange, no entanglement
  CHECK(std::abs(e.a * e.d - e.b * e.c) <= 1e-12);
}

TEST_CASE("reduced density matrix from coefficients") {
  EvolvedState e{};
  e.a = 1.0;  // |11>
  Matrix2c r = reduced_density_spin1(e);
  CHECK(std::abs(r(0, 0).real() - 1.0) <= 1e-15);
  CHECK(std::abs(r(1, 1)) <= 1e-15);

  e = EvolvedState{};
  e.b = 1.0 / std::sqrt(2.0);
  e.c = 1.0 / std::sqrt(2.0);
  r = reduced_density_spin1(e);
  CHECK((r - Matrix2c::Identity() / 2.0).cwiseAbs().maxCoeff() <= 1e-14);

  std::mt19937_64 rng(45);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = random_params(rng);
    const EvolvedState ev = evolve(p, random_product_state(rng()), 1.7);
    CHECK((reduced_density_spin1(ev) - reduced_spin1(ev.vec())).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("characteristic polynomial of the reduced state") {
  std::mt19937_64 rng(46);
  const ModelParams p = random_params(rng);
  const EvolvedState e = evolve(p, random_product_state(rng()), 0.9);
  const Matrix2c r = reduced_density_spin1(e);
  const auto es = eig_hermitian(r);
  const double tr = (r(0, 0) + r(1, 1)).real();
  const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
  for (int i = 0; i < 2; ++i) {
    const double tau = es.values(i);
    CHECK(std::abs(tau * tau - tr * tau + det) <= 1e-12);
  }
  // det rho_1 = |ad - bc|^2
  CHECK(std::abs(det - std::norm(e.a * e.d - e.b * e.c)) <= 1e-12);
}

TEST_CASE("witness vanishes at t = 0 and detects entanglement later") {
  std::mt19937_64 rng(47);
  const ModelParams p = random_params(rng);
  const ProductState s0 = random_product_state(rng());
  CHECK(std::abs(purity_witness(p, s0, 0.0).value) <= 1e-14);
}

TEST_CASE("half-period point is maximally entangled, not a product") {
  // J = 1, no spin-orbit, no fields, |10> input, t = pi/2: the state sits in
  // the central block with |b| = |c| = 1/sqrt(2); with a = d = 0 the witness
  // is |bc| = 1/2, so it correctly reports a non-product state.
  ModelParams p;
  p.J = 1.0;
  const ProductState s0 = make_product(1.0, 0.0, 0.0, 1.0);
  const EvolvedState e = evolve(p, s0, kPi / 2.0);
  CHECK(std::abs(e.a) <= 1e-14);
  CHECK(std::abs(e.d) <= 1e-14);
  CHECK(std::abs(std::abs(e.b) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(std::abs(e.c) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  const PurityWitness w = purity_witness(p, s0, kPi / 2.0);
  CHECK(std::abs(std::abs(w.value) - 0.5) <= 1e-12);
  CHECK_FALSE(schmidt_factor(e.vec(), 1e-9).product);
}

TEST_CASE("witness closed form matches the determinant") {
  std::mt19937_64 rng(48);
  std::uniform_real_distribution<double> ut(0.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    const ModelParams p = random_params(rng);
    const ProductState s0 = random_product_state(rng());
    const PurityWitness w = purity_witness(p, s0, ut(rng));
    CHECK(w.identity_residual <= std::max(1e-12, 1e-9 * std::abs(w.value)));
    // |value|^2 equals det of the reduced state by construction of the witness
  }
}

TEST_CASE("commensurate recurrences reproduce the state up to a global phase") {
  std::mt19937_64 rng(49);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  // sqrt(j_eff)/J = 3 via beta0 = sqrt(8): k = 3, n = 1, even winding sum
  const ModelParams pa = params_with_dbz_eff(1.0, std::sqrt(8.0), 0.0, 0.0, 1.0);
  // sqrt(j_eff) = 2 via dbz_eff = sqrt(3): use two J periods, k = 4, n = 2
  const ModelParams pb = params_with_dbz_eff(1.0, 0.0, std::sqrt(3.0), 0.0, 1.0);
  for (const auto& [p, trec] : {std::pair{pa, 2.0 * kPi}, std::pair{pb, 4.0 * kPi}}) {
    for (int i = 0; i < 20; ++i) {
      const ProductState s0 = random_product_state(rng());
      const double t = ut(rng);
      const Vector4c x = evolve(p, s0, t).vec();
      const Vector4c y = evolve(p, s0, t + trec).vec();
      CHECK(std::abs(std::abs(x.dot(y)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("solver rejects J = 0 and bad bounds") {
  ModelParams p;
  p.J = 0.0;
  CHECK_THROWS_AS((void)find_swap_times(p), DomainError);
  p.J = 1.0;
  CHECK_THROWS_AS((void)find_swap_times(p, -1, 4, 1e-9), DomainError);
  CHECK_THROWS_AS((void)find_swap_times(p, 4, 4, 0.0), DomainError);
}

TEST_CASE("trivial solution at t = 0") {
  const ModelParams p = params_with_dbz_eff(1.0, 0.7, 0.3, 0.0, 1.0);
  const auto sols = find_swap_times(p, 3, 3, 1e-9);
  REQUIRE(!sols.empty());
  CHECK(sols.front().t == 0.0);
  CHECK(sols.front().case_label == SwapCase::case1_1);
  CHECK_FALSE(sols.front().swaps);
  // the identity map verifies with zero phases
  const SwapVerification v = verify_swap(p, sols.front(), 23, 8, 1e-8);
  CHECK(v.ok);
  CHECK_FALSE(v.swapped_pattern);
  CHECK(std::abs(v.phase_spin1) <= 1e-12);
  CHECK(std::abs(v.phase_spin2) <= 1e-12);
}

TEST_CASE("swap family at sqrt(1+beta0^2) = 3") {
  const ModelParams p = params_with_dbz_eff(1.0, std::sqrt(8.0), 0.0, 0.0, 1.0);
  const auto sols = find_swap_times(p, 4, 4, 1e-9);
  const SwapSolution* pi_sol = nullptr;
  for (const auto& s : sols) {
    if (s.swaps && s.k == 1 && s.n == 0) pi_sol = &s;
  }
  REQUIRE(pi_sol != nullptr);
  CHECK(std::abs(pi_sol->t - kPi) <= 1e-12);
  CHECK(pi_sol->case_label == SwapCase::case2_2_odd);
  // measured corrections: spin 1 carries pi - arccos(1/3), spin 2 the conjugate
  CHECK(std::abs(pi_sol->phase_spin1 - (kPi - std::acos(1.0 / 3.0))) <= 1e-10);
  CHECK(std::abs(wrap(pi_sol->phase_spin2 - (kPi + std::acos(1.0 / 3.0)))) <= 1e-10);
  CHECK(std::abs(pi_sol->arccos_ratio - std::acos(1.0 / 3.0)) <= 1e-14);
  // the tabulated value lands on spin 2, not spin 1; both deviations recorded
  CHECK(pi_sol->phase_spin2_deviation <= 1e-10);
  CHECK(pi_sol->phase_spin1_deviation > 2.0);

  const SwapVerification v = verify_swap(p, *pi_sol, 7, 32, 1e-8);
  CHECK(v.ok);
  CHECK(v.swapped_pattern);
  CHECK(v.max_witness <= 1e-10);
  CHECK(v.spread_spin1 <= 1e-8);
  CHECK(v.spread_spin2 <= 1e-8);
  CHECK(std::abs(v.phase_spin1 - (kPi - std::acos(1.0 / 3.0))) <= 1e-8);
}

TEST_CASE("no odd-winding solutions with a field imbalance") {
  const ModelParams p = params_with_dbz_eff(1.0, std::sqrt(8.0), 0.5, 0.0, 1.0);
  for (const auto& s : find_swap_times(p, 8, 8, 1e-9)) CHECK_FALSE(s.swaps);
}

TEST_CASE("identity recurrences are not swaps and carry the parity phase") {
  // sqrt(j_eff)/J = 2 via beta0 = sqrt(3): t = 2 pi matches k = 2, n = 1 (odd
  // winding sum), so both spins return to themselves with an extra pi phase.
  const ModelParams p = params_with_dbz_eff(1.0, std::sqrt(3.0), 0.0, 0.0, 1.0);
  const auto sols = find_swap_times(p, 4, 2, 1e-9);
  const SwapSolution* rec = nullptr;
  for (const auto& s : sols)
    if (!s.swaps && s.k == 2 && s.n == 1) rec = &s;
  REQUIRE(rec != nullptr);
  CHECK(rec->case_label == SwapCase::case1_2_odd);
  CHECK(std::abs(std::abs(rec->phase_spin1) - kPi) <= 1e-10);
  CHECK(std::abs(std::abs(rec->phase_spin2) - kPi) <= 1e-10);
  const SwapVerification v = verify_swap(p, *rec, 11, 16, 1e-8);
  CHECK(v.ok);
  CHECK_FALSE(v.swapped_pattern);
}

TEST_CASE("plain exchange swaps at half the exchange period") {
  // beta0 = 0, dbz_eff = 0: both windings match at t = pi/J with k = n = 0
  // and the swap is exact with no phase correction.
  ModelParams p;
  p.J = 1.0;
  const auto sols = find_swap_times(p, 2, 2, 1e-9);
  const SwapSolution* sw = nullptr;
  for (const auto& s : sols)
    if (s.swaps && s.k == 0 && s.n == 0) sw = &s;
  REQUIRE(sw != nullptr);
  CHECK(sw->case_label == SwapCase::case2_1);
  CHECK(std::abs(sw->t - kPi) <= 1e-12);
  CHECK(std::abs(sw->phase_spin1) <= 1e-10);
  CHECK(std::abs(sw->phase_spin2) <= 1e-10);
  const SwapVerification v = verify_swap(p, *sw, 13, 16, 1e-8);
  CHECK(v.ok);
  CHECK(v.swapped_pattern);
}

TEST_CASE("second commensurate family records the alternative time formula gap") {
  // sqrt(j_eff)/J = 5/3 via beta0 = 4/3: t = 3 pi, (k, n) = (2, 1).
  const ModelParams p = params_with_dbz_eff(1.0, 4.0 / 3.0, 0.0, 0.0, 1.0);
  const auto sols = find_swap_times(p, 4, 2, 1e-9);
  const SwapSolution* sw = nullptr;
  for (const auto& s : sols)
    if (s.swaps && s.k == 2 && s.n == 1) sw = &s;
  REQUIRE(sw != nullptr);
  CHECK(std::abs(sw->t - 3.0 * kPi) <= 1e-11);
  CHECK(sw->case_label == SwapCase::case2_2_odd);
  // measured spin-1 phase: (k+n) pi - arccos(3/5), wrapped
  CHECK(std::abs(wrap(sw->phase_spin1 - (kPi - std::acos(3.0 / 5.0)))) <= 1e-9);
  // the sqrt((k+n+1)(k+n)) 2 pi / (J beta0) expression does not reproduce t here
  CHECK(sw->alt_time_residual > 1.0);
  CHECK(verify_swap(p, *sw, 17, 16, 1e-8).ok);
}

TEST_CASE("brute-force scan finds no swap time the solver misses") {
  std::mt19937_64 rng(50);
  const double t_max = 7.0 * kPi;
  for (const double beta0 : {std::sqrt(3.0), std::sqrt(8.0), std::sqrt(24.0)}) {
    const ModelParams p = params_with_dbz_eff(1.0, beta0, 0.0, 0.0, 1.0);
    const auto sols = find_swap_times(p, 40, 3, 1e-9);
    std::vector<double> swap_times;
    for (const auto& s : sols)
      if (s.swaps && s.t <= t_max) swap_times.push_back(s.t);

    // dense scan of the witness for one generic probe state
    const ProductState probe = random_product_state(rng(), 0.1);
    const int steps = 22000;
    std::vector<double> found;
    double prev_w = 1.0;
    for (int i = 1; i <= steps; ++i) {
      const double t = t_max * double(i) / double(steps);
      const double w = std::abs(purity_witness(p, probe, t).value);
      // local minimum below threshold: refine by golden-section
      if (w < 5e-3 && w <= prev_w) {
        double lo = t - 2.0 * t_max / steps, hi = t + 2.0 * t_max / steps;
        for (int it = 0; it < 80; ++it) {
          const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          if (std::abs(purity_witness(p, probe, m1).value) <
              std::abs(purity_witness(p, probe, m2).value))
            hi = m2;
          else
            lo = m1;
        }
        const double tstar = 0.5 * (lo + hi);
        if (std::abs(purity_witness(p, probe, tstar).value) < 1e-8 &&
            is_swapped_product(evolve(p, probe, tstar).vec(), probe, 1e-7)) {
          if (found.empty() || std::abs(found.back() - tstar) > 1e-3) found.push_back(tstar);
        }
      }
      prev_w = w;
    }

    // every brute-force swap time must be known to the solver, and vice versa
    for (double t : found) {
      bool known = false;
      for (double ts : swap_times) known = known || std::abs(ts - t) <= 1e-6;
      CHECK_MESSAGE(known, "beta0=", beta0, " unmatched swap time ", t);
    }
    for (double ts : swap_times) {
      bool seen = false;
      for (double t : found) seen = seen || std::abs(ts - t) <= 1e-6;
      CHECK_MESSAGE(seen, "beta0=", beta0, " solver time not seen in scan ", ts);
    }
    if (beta0 == std::sqrt(3.0)) {
      // even/odd winding ratio: no swap exists at all
      CHECK(swap_times.empty());
      CHECK(found.empty());
    } else {
      CHECK(!swap_times.empty());
    }
  }
}

TEST_CASE("gate algebra basics") {
  const Matrix4c sw = swap_gate();
  Vector4c e10 = Vector4c::Unit(1);
  CHECK(((sw * e10) - Vector4c::Unit(2)).cwiseAbs().maxCoeff() == 0.0);

  const GateCompositionReport rep = cnot_from_sqrt_swap();
  CHECK(rep.sqrt_swap_squared_deviation <= 1e-12);
  CHECK(rep.deviation_from_cz <= 1e-12);
  CHECK(rep.deviation_from_cnot > 0.9);  // conditional phase, not a bit flip

  // CZ and CNOT differ by single-spin gates only:
  // CNOT = D (I x H) composed (I x H), D = diag(-1,-1,1,1), H = (sx+sz)/sqrt(2)
  Matrix2c had;
  had << 1.0, 1.0, 1.0, -1.0;
  had /= std::sqrt(2.0);
  const Matrix4c h2 = kron(Matrix2c::Identity().eval(), had);
  Matrix4c d = Matrix4c::Identity();
  d(0, 0) = d(1, 1) = -1.0;
  CHECK(phase_invariant_distance(d * h2 * rep.composed * h2, cnot_gate()) <= 1e-12);
}
