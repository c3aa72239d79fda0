// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "laughlin/observables.hpp"

namespace laughlin {

namespace fs = std::filesystem;

namespace {

// Admixture of the seeded random start around the CDW root; small enough that
// it does not register in entropies of near-degenerate thin-cylinder states.
constexpr double kRootAdmixture = 1e-6;

class OutputDir {
 public:
  OutputDir(const std::string& path, std::string command)
      : root_(path), command_(std::move(command)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw ConfigError("cannot create output directory " + path + ": " + ec.message());
  }

  std::ofstream open(const std::string& name) {
    std::ofstream out(root_ / name);
    if (!out) throw ConfigError("cannot write " + (root_ / name).string());
    out << std::setprecision(12);
    files_.insert(name);
    return out;
  }

  void manifest(const RunConfig& config) {
    std::ofstream out(root_ / "manifest.txt");
    out << "# laughlin " << LAUGHLIN_VERSION << '\n';
    out << "command = " << command_ << '\n';
    out << "files =";
    for (const auto& f : files_) out << ' ' << f;
    out << "\n\n";
    config.write(out);
  }

 private:
  fs::path root_;
  std::string command_;
  std::set<std::string> files_;
};

struct Sector {
  SystemGeometry geometry;
  SectorBasisPtr basis;
};

Sector make_sector(const SystemConfig& sys) {
  Sector s{sys.geometry(), nullptr};
  const int com = sys.com >= 0 ? sys.com : center_of_mass(cdw_state(s.geometry));
  s.basis = enumerate_sector(s.geometry, com, GeometryCheck::allow_nonstandard);
  return s;
}

EigenOptions root_biased(EigenOptions options, const Sector& s) {
  const FockState root = cdw_state(s.geometry);
  if (s.basis->contains(root)) {
    options.start = root_biased_start(*s.basis, root, kRootAdmixture, options.seed);
  }
  return options;
}

EigenResult solve(const Sector& s, const Truncation& trunc, const EigenOptions& options,
                  std::size_t count) {
  const auto h = assemble_hamiltonian(s.basis, s.geometry, trunc);
  return lowest_k(h, std::min(count, s.basis->size()), root_biased(options, s));
}

AnsatzParams load_params(const RunConfig& c, const AnsatzSpec& spec) {
  if (c.ansatz.params == "zeros") return AnsatzParams::zeros(spec);
  if (c.ansatz.params == "file") {
    std::ifstream in(c.ansatz.params_file);
    if (!in) throw ConfigError("cannot open params file " + c.ansatz.params_file);
    try {
      return read_params(in);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return AnsatzParams::published();
}

int window_hi(const RunConfig& c, const SystemGeometry& g) {
  return c.sampling.window_hi >= 0 ? c.sampling.window_hi : g.n_orbitals - 3;
}

void write_observables(OutputDir& dir, const std::string& prefix, const SectorVector& v, int lo,
                       int hi) {
  const auto d = density(v);
  const auto c = correlation(v);
  auto fd = dir.open(prefix + "density.csv");
  write_density_csv(fd, d);
  auto fc = dir.open(prefix + "correlation.csv");
  write_correlation_csv(fc, c);
  auto fcz = dir.open(prefix + "correlation_display.csv");
  write_correlation_csv(fcz, c, true);
  if (lo < hi && hi < c.n) {
    auto fcd = dir.open(prefix + "cd.csv");
    write_cd_csv(fcd, site_avg_correlation(c, lo, hi));
  }
}

void set_threads(const RunConfig& c) { omp_set_num_threads(c.threads); }

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ed",      "prepare", "optimize", "circuit",
                                              "sample",  "entropy", "krylov",   "sweep"};
  return names;
}

std::string command_summary(const std::string& name) {
  static const std::map<std::string, std::string> text{
      {"ed", "exact diagonalization: spectrum and ground-state observables"},
      {"prepare", "prepare the ansatz state, report fidelity and observables"},
      {"optimize", "basin-hopping optimization of the ansatz angles"},
      {"circuit", "compile to gates, CNOT counts, gate/sector cross-check"},
      {"sample", "noisy shots, postselection, bootstrap intervals"},
      {"entropy", "entanglement entropy versus circumference per truncation"},
      {"krylov", "Krylov-sector dimension reachable from the CDW root"},
      {"sweep", "truncated-vs-full ground-state fidelity versus circumference"}};
  const auto it = text.find(name);
  return it == text.end() ? std::string() : it->second;
}

void run_command(const std::string& name, const RunConfig& config, std::ostream& log) {
  config.validate();
  set_threads(config);
  if (name == "ed") return cmd_ed(config, log);
  if (name == "prepare") return cmd_prepare(config, log);
  if (name == "optimize") return cmd_optimize(config, log);
  if (name == "circuit") return cmd_circuit(config, log);
  if (name == "sample") return cmd_sample(config, log);
  if (name == "entropy") return cmd_entropy(config, log);
  if (name == "krylov") return cmd_krylov(config, log);
  if (name == "sweep") return cmd_sweep(config, log);
  throw ConfigError("unknown command '" + name + "'");
}

void cmd_ed(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "ed");
  const auto s = make_sector(c.system);
  const auto trunc = parse_truncation(c.truncation);
  log << "ed: " << s.basis->describe() << " truncation " << trunc.describe() << '\n';
  const auto result = solve(s, trunc, c.eigen, static_cast<std::size_t>(c.eigen_count));
  {
    auto out = dir.open("spectrum.txt");
    write_report(out, result);
  }
  write_observables(dir, "", result.ground(), c.sampling.window_lo, window_hi(c, s.geometry));
  {
    auto out = dir.open("summary.txt");
    out << "basis " << s.basis->describe() << '\n';
    out << "truncation " << trunc.describe() << '\n';
    out << "ground_energy " << result.ground_energy() << '\n';
    out << "ground_degeneracy " << result.ground_space.size() << '\n';
    out << "norm_inf " << result.norm_inf << '\n';
    const FockState root = cdw_state(s.geometry);
    if (s.basis->contains(root)) {
      out << "cdw_overlap " << ground_fidelity(basis_vector(s.basis, root), result) << '\n';
    }
  }
  if (c.system.scan_com) {
    auto out = dir.open("com_scan.csv");
    out << "com,dim,ground_energy\n";
    for (int k = 0; k < s.geometry.n_orbitals; ++k) {
      Sector sk{s.geometry, enumerate_sector(s.geometry, k, GeometryCheck::allow_nonstandard)};
      if (sk.basis->size() == 0) continue;
      const auto r = solve(sk, trunc, c.eigen, 1);
      out << k << ',' << sk.basis->size() << ',' << r.ground_energy() << '\n';
    }
  }
  log << "ed: E0 = " << result.ground_energy() << '\n';
  dir.manifest(c);
}

void cmd_prepare(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "prepare");
  const auto s = make_sector(c.system);
  const auto spec = AnsatzSpec::preset(c.ansatz.name, s.geometry);
  const auto params = load_params(c, spec);
  const CompiledAnsatz ansatz(spec, s.basis);
  SectorVector v;
  try {
    v = ansatz.prepare(params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto h = assemble_hamiltonian(s.basis, s.geometry, parse_truncation(c.truncation));
  const auto ed = lowest_k(h, 1, root_biased(c.eigen, s));
  const double f = ground_fidelity(v, ed);
  {
    auto out = dir.open("summary.txt");
    out << "basis " << s.basis->describe() << '\n';
    out << "ansatz " << spec.name << '\n';
    out << "reference_truncation " << parse_truncation(c.truncation).describe() << '\n';
    out << "fidelity " << f << '\n';
    out << "energy " << expectation(h, v.amplitudes) << '\n';
    out << "ground_energy " << ed.ground_energy() << '\n';
  }
  {
    auto out = dir.open("params.txt");
    write_params(out, params);
  }
  write_observables(dir, "", v, c.sampling.window_lo, window_hi(c, s.geometry));
  log << "prepare: fidelity = " << f << '\n';
  dir.manifest(c);
}

void cmd_optimize(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "optimize");
  const auto s = make_sector(c.system);
  const auto spec = AnsatzSpec::preset(c.ansatz.name, s.geometry);
  const auto h = assemble_hamiltonian(s.basis, s.geometry, parse_truncation(c.truncation));
  OptimizerConfig oc = c.optimizer;
  oc.threads = c.threads;
  log << "optimize: " << spec.name << " on " << s.basis->describe() << ", " << oc.restarts
      << " restarts x " << oc.hop_attempts << " hops\n";
  const auto result = optimize(spec, h, oc);
  const auto ed = lowest_k(h, 1, root_biased(c.eigen, s));
  const CompiledAnsatz ansatz(spec, s.basis);
  double best_f = 0.0;
  {
    auto out = dir.open("restarts.csv");
    out << "restart,best_cost,fidelity,converged\n";
    for (const auto& t : result.trace) {
      const double f = ground_fidelity(ansatz.prepare(t.best), ed);
      best_f = std::max(best_f, f);
      out << t.restart << ',' << t.best_cost << ',' << f << ',' << (t.converged ? 1 : 0) << '\n';
    }
  }
  const double f = spec.layers.empty() ? ground_fidelity(ansatz.prepare(std::vector<double>{}), ed)
                                       : ground_fidelity(ansatz.prepare(result.params), ed);
  {
    auto out = dir.open("best_params.txt");
    write_params(out, result.params.wrapped());
  }
  {
    auto out = dir.open("trace.txt");
    write_trace(out, result);
  }
  {
    auto out = dir.open("summary.txt");
    out << "ansatz " << spec.name << '\n';
    out << "best_cost " << result.cost << '\n';
    out << "fidelity_at_best_cost " << f << '\n';
    out << "best_fidelity_over_restarts " << std::max(best_f, f) << '\n';
    out << "converged " << (result.converged ? "true" : "false") << '\n';
  }
  log << "optimize: cost = " << result.cost << ", fidelity = " << f
      << (result.converged ? "" : " (not converged)") << '\n';
  dir.manifest(c);
}

void cmd_circuit(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "circuit");
  CompileOptions options;
  options.ladder = parse_ladder(c.circuit.ladder);
  options.star_target = c.circuit.star_target;
  const auto rows = count_report(c.ansatz.name, c.circuit.n_electrons, options);
  {
    auto out = dir.open("counts.csv");
    write_count_report(out, rows);
  }
  {
    // One block of each scattering family, before and after cancellation.
    auto out = dir.open("block_counts.csv");
    out << "family,qubits_spanned,naive_cnots,cancelled_cnots\n";
    for (const TermFamily f : {TermFamily{2, 1}, TermFamily{3, 1}}) {
      const TermInstance t{f.k, f.m, 0, 1.0};
      const int n = f.k + f.m + 1;
      CompileOptions naive = options;
      naive.cancel = false;
      out << to_string(f) << ',' << n << ',' << compile_instance(t, n, 1.0, naive).cnot_count()
          << ',' << compile_instance(t, n, 1.0, options).cnot_count() << '\n';
    }
  }
  const auto s = make_sector(c.system);
  const auto spec = AnsatzSpec::preset(c.ansatz.name, s.geometry);
  const auto params = load_params(c, spec);
  const auto gates = compile_circuit(spec, params, options);
  if (c.circuit.write_gates) {
    auto out = dir.open("gates.txt");
    write_gates(out, gates);
  }
  auto summary = dir.open("summary.txt");
  summary << "n_electrons " << s.geometry.n_electrons << '\n';
  summary << "qubits " << gates.n_qubits << '\n';
  summary << "cnots " << gates.cnot_count() << '\n';
  summary << "gates " << gates.gates.size() << '\n';
  if (c.circuit.cross_check && gates.n_qubits <= kMaxSimulatedQubits) {
    const auto psi = simulate_gates(gates, gates.n_qubits);
    const auto v = CompiledAnsatz(spec, s.basis).prepare(params);
    const double overlap = std::abs(inner(psi, embed_sector(v)));
    summary << "gate_sector_overlap " << std::setprecision(15) << overlap << '\n';
    log << "circuit: gate/sector overlap = " << std::setprecision(15) << overlap << '\n';
  }
  for (const auto& r : rows) {
    log << "circuit: N_e=" << r.n_electrons << " qubits=" << r.qubits << " CNOTs=" << r.cnots
        << " (reference " << r.reference << ")\n";
  }
  summary.close();
  dir.manifest(c);
}

void cmd_sample(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "sample");
  const auto s = make_sector(c.system);
  SectorVector v;
  if (c.sampling.source == "ansatz") {
    const auto spec = AnsatzSpec::preset(c.ansatz.name, s.geometry);
    v = CompiledAnsatz(spec, s.basis).prepare(load_params(c, spec));
  } else {
    v = solve(s, parse_truncation(c.truncation), c.eigen, 1).ground();
  }
  const NoiseModel noise{c.sampling.readout_flip, c.sampling.depolarizing, c.sampling.layers};
  const auto shots = sample(v, c.sampling.shots, noise, c.sampling.seed);
  const SymmetryFilter filter{s.geometry.n_electrons, s.basis->com()};
  const auto post = postselect(shots, filter);
  const int lo = c.sampling.window_lo;
  const int hi = window_hi(c, s.geometry);
  const auto exact = density(v).values;
  {
    auto out = dir.open("shots.txt");
    write_shots(out, shots);
  }
  {
    auto out = dir.open("exact_density.csv");
    write_density_csv(out, density(v));
  }
  BootstrapConfig boot{c.sampling.resamples, c.sampling.level, c.sampling.seed};
  std::map<std::string, double> errors;
  for (const auto& [label, set] : {std::pair<std::string, const ShotSet*>{"raw", &shots},
                                   std::pair<std::string, const ShotSet*>{"post", &post.kept}}) {
    if (set->empty()) {
      log << "sample: no " << label << " shots survive\n";
      continue;
    }
    const auto est = estimate(*set);
    errors[label] = mse(est.density.values, exact);
    auto fd = dir.open(label + "_density.csv");
    write_density_csv(fd, est.density, bootstrap_ci(*set, density_estimator(), boot));
    auto fc = dir.open(label + "_correlation.csv");
    write_correlation_csv(fc, est.correlation);
    if (lo < hi && hi < s.geometry.n_orbitals) {
      const auto cd = site_avg_correlation(est.correlation, lo, hi);
      const auto ci = bootstrap_ci(*set, cd_estimator(lo, hi), boot);
      std::vector<std::optional<Interval>> cd_ci(cd.size());
      std::size_t k = 0;
      for (std::size_t d = 0; d < cd.size(); ++d) {
        if (cd[d] && k < ci.size()) cd_ci[d] = ci[k++];
      }
      auto fcd = dir.open(label + "_cd.csv");
      write_cd_csv(fcd, cd, cd_ci);
    }
  }
  {
    auto out = dir.open("n_histogram.csv");
    out << "n,count\n";
    const auto h = particle_histogram(shots);
    for (std::size_t i = 0; i < h.size(); ++i) out << i << ',' << h[i] << '\n';
  }
  {
    auto out = dir.open("k_histogram.csv");
    out << "k,count\n";
    const auto h = com_histogram(shots);
    for (std::size_t i = 0; i < h.size(); ++i) out << i << ',' << h[i] << '\n';
  }
  {
    auto out = dir.open("summary.txt");
    out << "source " << c.sampling.source << '\n';
    out << "filter N=" << filter.target_n << " K=" << filter.target_k << '\n';
    out << "shots " << shots.total_shots << '\n';
    out << "n_pass " << post.n_pass << '\n';
    out << "k_pass " << post.k_pass << '\n';
    out << "both_pass " << post.both_pass << '\n';
    for (const auto& [label, e] : errors) out << label << "_density_mse " << e << '\n';
  }
  log << "sample: pass rate " << post.both_pass << '\n';
  dir.manifest(c);
}

void cmd_entropy(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "entropy");
  SystemConfig sys = c.system;
  sys.n_electrons = c.entropy.n_electrons;
  sys.n_orbitals = 0;
  sys.com = -1;
  auto out = dir.open("entropy.csv");
  out << "circumference";
  for (const auto& t : c.entropy.truncations) out << ',' << t;
  out << '\n';
  for (double ly : c.entropy.circumferences) {
    sys.circumference = ly;
    const auto s = make_sector(sys);
    const int cut = c.entropy.cut > 0 ? c.entropy.cut : s.geometry.n_orbitals / 2;
    out << ly;
    for (const auto& t : c.entropy.truncations) {
      const auto r = solve(s, parse_truncation(t), c.eigen, 1);
      const double sa = entanglement_entropy(r.ground(), cut);
      out << ',' << sa;
      log << "entropy: L_y=" << ly << ' ' << t << " S_A=" << sa << '\n';
    }
    out << '\n';
  }
  out.close();
  dir.manifest(c);
}

void cmd_krylov(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "krylov");
  const auto g = c.system.geometry();
  const FockState root = cdw_state(g);
  auto out = dir.open("krylov.csv");
  out << "truncation,dim,sector_dim,block_dim\n";
  for (const auto& t : c.krylov.truncations) {
    const auto k = krylov_dimension(build_terms(g, parse_truncation(t)), root);
    out << t << ',' << k.dim << ',' << k.sector_dim << ',' << k.block_dim << '\n';
    log << "krylov: " << t << " dim " << k.dim << " of " << k.sector_dim << '\n';
  }
  out.close();
  dir.manifest(c);
}

void cmd_sweep(const RunConfig& c, std::ostream& log) {
  OutputDir dir(c.out, "sweep");
  auto out = dir.open("sweep.csv");
  out << "circumference";
  for (const auto& t : c.sweep.truncations) out << ',' << t;
  out << '\n';
  SystemConfig sys = c.system;
  for (double ly : c.sweep.circumferences) {
    sys.circumference = ly;
    const auto s = make_sector(sys);
    const auto full = solve(s, Truncation::full(), c.eigen, 1);
    out << ly;
    for (const auto& t : c.sweep.truncations) {
      const auto r = solve(s, parse_truncation(t), c.eigen, 1);
      const double f = ground_space_fidelity(r, full);
      out << ',' << f;
      log << "sweep: L_y=" << ly << ' ' << t << " F=" << f << '\n';
    }
    out << '\n';
  }
  out.close();
  dir.manifest(c);
}

}  // namespace laughlin
