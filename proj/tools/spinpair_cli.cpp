// Command-line front end: capacity queries, product-state evolution, the
// swap-time solver and verifier, CSV parameter sweeps, and the oracle
// selftest. Exit codes: 0 success, 1 usage error, 2 numerical validation
// failure.

#include "spinpair/dense_coding.hpp"
#include "spinpair/linalg.hpp"
#include "spinpair/selftest.hpp"
#include "spinpair/swap.hpp"
#include "spinpair/sweep.hpp"
#include "spinpair/thermal.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace spinpair;

std::string fmt(double x) { return detail::format_double(x, 12); }

complexd parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return complexd(std::stod(s), 0.0);
    return complexd(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a complex amplitude as `re` or `re,im`: " + s);
  }
}

struct ModelFlags {
  double J = 1.0, beta0 = 0.0, dbzeff = 0.0, Bz = 0.0, T = 1.0, gamma_e = 1.0;
  void add_to(CLI::App* cmd, bool with_thermal) {
    cmd->add_option("--J", J, "exchange constant (J > 0 AFM, J < 0 FM)");
    cmd->add_option("--beta0", beta0, "DM coupling z-component");
    cmd->add_option("--dbzeff", dbzeff, "effective field splitting 2*gamma_e*dBz");
    cmd->add_option("--Bz", Bz, "uniform axial field");
    cmd->add_option("--gamma-e", gamma_e, "gyromagnetic factor (default 1)");
    if (with_thermal) cmd->add_option("--T", T, "temperature")->required();
  }
  ModelParams params() const { return params_with_dbz_eff(J, beta0, dbzeff, Bz, T, gamma_e); }
};

int cmd_capacity(const ModelFlags& mf) {
  const CapacityReport r = capacity(mf.params());
  std::cout << "chi=" << fmt(r.chi) << "\n"
            << "S_rho=" << fmt(r.entropy_rho) << "\n"
            << "S_avg=" << fmt(r.entropy_avg) << "\n"
            << "chi_closed=" << fmt(r.chi_closed) << "\n"
            << "A=" << fmt(r.term_a) << "\n"
            << "B=" << fmt(r.term_b) << "\n"
            << "zeta=" << fmt(r.zeta) << "\n"
            << "delta=" << fmt(r.delta) << "\n"
            << "valid=" << (r.valid ? 1 : 0) << "\n";
  return 0;
}

int cmd_evolve(const ModelFlags& mf, const std::string& a1, const std::string& b1,
               const std::string& a2, const std::string& b2, double t) {
  const ProductState s0 =
      make_product(parse_complex(a1), parse_complex(b1), parse_complex(a2), parse_complex(b2));
  const ModelParams p = mf.params();
  const EvolvedState e = evolve(p, s0, t);
  const PurityWitness w = purity_witness(p, s0, t);
  const auto put = [](const char* name, complexd z) {
    std::cout << name << "_re=" << fmt(z.real()) << "\n" << name << "_im=" << fmt(z.imag()) << "\n";
  };
  put("a", e.a);
  put("b", e.b);
  put("c", e.c);
  put("d", e.d);
  put("witness", w.value);
  std::cout << "witness_abs2=" << fmt(std::norm(w.value)) << "\n"
            << "witness_closed_residual=" << fmt(w.identity_residual) << "\n";
  return 0;
}

int cmd_swap_find(const ModelFlags& mf, int kmax, int nmax, double tol) {
  const auto sols = find_swap_times(mf.params(), kmax, nmax, tol);
  std::cout << "t,k,n,case,swaps,residual_sqrt,phase_spin1,phase_spin2,ref_phase_spin1,"
               "phase1_dev,phase2_dev,alt_time_residual\n";
  for (const auto& s : sols) {
    std::cout << fmt(s.t) << ',' << s.k << ',' << s.n << ',' << to_string(s.case_label) << ','
              << (s.swaps ? 1 : 0) << ',' << fmt(s.residual_sqrt) << ',' << fmt(s.phase_spin1)
              << ',' << fmt(s.phase_spin2) << ',' << fmt(s.reference_phase_spin1) << ','
              << fmt(s.phase_spin1_deviation) << ',' << fmt(s.phase_spin2_deviation) << ','
              << fmt(s.alt_time_residual) << '\n';
  }
  std::cerr << sols.size() << " solution(s) within bounds\n";
  return 0;
}

int cmd_swap_verify(const ModelFlags& mf, int kmax, int nmax, double tol, int index,
                    std::uint64_t seed, int batch) {
  const ModelParams p = mf.params();
  const auto sols = find_swap_times(p, kmax, nmax, tol);
  if (index < 0 || std::size_t(index) >= sols.size())
    throw DomainError("INDEX_RANGE", "solution index out of range; solver returned " +
                                         std::to_string(sols.size()) + " solutions");
  const SwapVerification v = verify_swap(p, sols[std::size_t(index)], seed, batch, 1e-8);
  std::cout << "ok=" << (v.ok ? 1 : 0) << "\n"
            << "pattern=" << (v.swapped_pattern ? "swapped" : "identity") << "\n"
            << "states=" << v.states << "\n"
            << "phase_spin1=" << fmt(v.phase_spin1) << "\n"
            << "phase_spin2=" << fmt(v.phase_spin2) << "\n"
            << "spread_spin1=" << fmt(v.spread_spin1) << "\n"
            << "spread_spin2=" << fmt(v.spread_spin2) << "\n"
            << "max_witness=" << fmt(v.max_witness) << "\n"
            << "max_factor_residual=" << fmt(v.max_factor_residual) << "\n";
  if (!v.ok) {
    std::cerr << "verification failed: " << v.failure << "\n";
    return 2;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, int threads) {
  const SweepConfig cfg = load_sweep_config(config_path);
  if (cfg.output_path.empty())
    throw DomainError("CONFIG_INVALID", "config must set `output` for the CSV path");
  const SweepResult result = run_sweep(cfg, threads);
  write_csv_file(result, cfg);
  std::size_t errors = 0;
  for (const auto& row : result.rows) errors += row.error.empty() ? 0 : 1;
  std::cerr << "wrote " << result.rows.size() << " rows to " << cfg.output_path << " (" << errors
            << " error rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-spin dense coding and swap toolbox"};
  app.require_subcommand(1);

  ModelFlags cap_flags;
  auto* cap = app.add_subcommand("capacity", "dense coding capacity for one parameter set");
  cap_flags.add_to(cap, true);

  ModelFlags ev_flags;
  std::string a1 = "1", b1 = "0", a2 = "1", b2 = "0";
  double ev_t = 0.0;
  auto* ev = app.add_subcommand("evolve", "evolve a product state and report the purity witness");
  ev_flags.add_to(ev, false);
  ev->add_option("--alpha1", a1, "spin-1 |1> amplitude, `re` or `re,im`");
  ev->add_option("--beta1", b1, "spin-1 |0> amplitude");
  ev->add_option("--alpha2", a2, "spin-2 |1> amplitude");
  ev->add_option("--beta2", b2, "spin-2 |0> amplitude");
  ev->add_option("--t", ev_t, "evolution time")->required();

  ModelFlags sf_flags;
  int kmax = 32, nmax = 32;
  double tol = 1e-9;
  auto* sf = app.add_subcommand("swap-find", "enumerate candidate swap times");
  sf_flags.add_to(sf, false);
  sf->add_option("--kmax", kmax, "central-block winding bound");
  sf->add_option("--nmax", nmax, "exchange winding bound");
  sf->add_option("--tol", tol, "condition residual tolerance");

  ModelFlags sv_flags;
  int sv_kmax = 32, sv_nmax = 32, sv_index = 0, sv_batch = 32;
  double sv_tol = 1e-9;
  std::uint64_t sv_seed = 1234;
  auto* sv = app.add_subcommand("swap-verify", "verify one solver solution on a random batch");
  sv_flags.add_to(sv, false);
  sv->add_option("--kmax", sv_kmax, "central-block winding bound");
  sv->add_option("--nmax", sv_nmax, "exchange winding bound");
  sv->add_option("--tol", sv_tol, "condition residual tolerance");
  sv->add_option("--index", sv_index, "solution index into the sorted solver output")->required();
  sv->add_option("--seed", sv_seed, "seed for the random product-state batch");
  sv->add_option("--batch", sv_batch, "number of random product states");

  std::string config_path;
  int threads = 1;
  auto* sw = app.add_subcommand("sweep", "run a parameter sweep from a key=value config");
  sw->add_option("--config", config_path, "path to the sweep config")->required();
  sw->add_option("--threads", threads, "worker threads (output is thread-invariant)");

  auto* st = app.add_subcommand("selftest", "run the oracle cross-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 1;
  }

  try {
    if (cap->parsed()) return cmd_capacity(cap_flags);
    if (ev->parsed()) return cmd_evolve(ev_flags, a1, b1, a2, b2, ev_t);
    if (sf->parsed()) return cmd_swap_find(sf_flags, kmax, nmax, tol);
    if (sv->parsed())
      return cmd_swap_verify(sv_flags, sv_kmax, sv_nmax, sv_tol, sv_index, sv_seed, sv_batch);
    if (sw->parsed()) return cmd_sweep(config_path, threads);
    if (st->parsed()) return run_selftest(std::cout) == 0 ? 0 : 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 1;
}
