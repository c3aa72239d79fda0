// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/ansatz.hpp"

#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace laughlin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SectorBasisPtr sector_of(const AnsatzSpec& spec) {
  return enumerate_sector(spec.geometry, center_of_mass(spec.initial),
                          GeometryCheck::allow_nonstandard);
}

void require_compatible(const SectorVector& v, const AnsatzSpec& spec) {
  if (!v.basis || v.basis->n_orbitals() != spec.geometry.n_orbitals) {
    throw std::invalid_argument("state and ansatz have different orbital counts");
  }
}

const Layer& find_layer(const AnsatzSpec& spec, const TermFamily& family) {
  for (const auto& layer : spec.layers) {
    if (layer.family == family) return layer;
  }
  throw std::invalid_argument("family " + to_string(family) + " is not a layer of the ansatz");
}

}  // namespace

AnsatzSpec AnsatzSpec::effective(const SystemGeometry& geometry) {
  return {geometry, cdw_state(geometry), {{{2, 1}, 3}, {{3, 0}, 1}, {{3, 1}, 1}, {{1, 0}, 1}, {{2, 0}, 1}},
          "eff"};
}

AnsatzSpec AnsatzSpec::thin_torus(const SystemGeometry& geometry) {
  return {geometry, cdw_state(geometry), {{{2, 1}, 3}, {{3, 0}, 1}, {{1, 0}, 1}, {{2, 0}, 1}}, "tt"};
}

AnsatzSpec AnsatzSpec::effective_u40(const SystemGeometry& geometry) {
  AnsatzSpec spec = effective(geometry);
  spec.layers.push_back({{4, 0}, 1});
  spec.name = "eff+u40";
  return spec;
}

AnsatzSpec AnsatzSpec::preset(const std::string& name, const SystemGeometry& geometry) {
  if (name == "eff") return effective(geometry);
  if (name == "tt") return thin_torus(geometry);
  if (name == "eff+u40") return effective_u40(geometry);
  throw std::invalid_argument("unknown ansatz '" + name + "' (expected eff, tt or eff+u40)");
}

std::vector<TermFamily> AnsatzSpec::families() const {
  std::vector<TermFamily> out;
  out.reserve(layers.size());
  for (const auto& l : layers) out.push_back(l.family);
  return out;
}

AnsatzParams AnsatzParams::published() {
  return {{{{2, 1}, 11.751}, {{3, 0}, 12.573}, {{3, 1}, 12.219}, {{1, 0}, 4.732}, {{2, 0}, 10.972}}};
}

AnsatzParams AnsatzParams::zeros(const AnsatzSpec& spec) {
  AnsatzParams p;
  for (const auto& f : spec.families()) p.betas[f] = 0.0;
  return p;
}

double AnsatzParams::at(const TermFamily& f) const {
  const auto it = betas.find(f);
  if (it == betas.end()) throw std::invalid_argument("missing beta for family " + to_string(f));
  return it->second;
}

AnsatzParams AnsatzParams::wrapped() const {
  AnsatzParams out;
  for (const auto& [f, b] : betas) {
    double w = std::fmod(b, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    out.betas[f] = w;
  }
  return out;
}

std::vector<double> AnsatzParams::vector_for(const AnsatzSpec& spec) const {
  std::vector<double> x;
  for (const auto& f : spec.families()) x.push_back(at(f));
  return x;
}

AnsatzParams AnsatzParams::from_vector(const AnsatzSpec& spec, const std::vector<double>& x) {
  const auto fams = spec.families();
  if (x.size() != fams.size()) throw std::invalid_argument("parameter count does not match ansatz");
  AnsatzParams p;
  for (std::size_t i = 0; i < x.size(); ++i) p.betas[fams[i]] = x[i];
  return p;
}

void write_params(std::ostream& out, const AnsatzParams& params) {
  out << "# family beta\n";
  for (const auto& [f, b] : params.betas) {
    out << to_string(f) << ' ' << std::setprecision(17) << b << '\n';
  }
}

AnsatzParams read_params(std::istream& in) {
  AnsatzParams p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string fam;
    double beta = 0.0;
    if (!(fields >> fam)) continue;
    if (!(fields >> beta)) {
      throw std::invalid_argument("params line " + std::to_string(line_no) + ": expected a beta");
    }
    p.betas[parse_family(fam)] = beta;
  }
  return p;
}

std::vector<TermInstance> layer_instances(const AnsatzSpec& spec, const TermFamily& family) {
  const Layer& layer = find_layer(spec, family);
  return family_instances(spec.geometry.n_orbitals, layer.family, layer.j_stride);
}

void apply_scattering_layer(SectorVector& v, const TermFamily& family, double beta,
                            const AnsatzSpec& spec) {
  if (family.diagonal()) throw std::invalid_argument("apply_scattering_layer needs m >= 1");
  require_compatible(v, spec);
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const SectorBasis& basis = *v.basis;
  for (const auto& t : layer_instances(spec, family)) {
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const auto act = apply_term(t, basis.state(a));
      if (!act) continue;
      const auto b = basis.index_of(act->target);
      if (!b) throw std::logic_error("scattering term left the sector");
      const Complex off(0.0, -static_cast<double>(act->sign) * s);
      const Complex va = v.amplitudes[a];
      const Complex vb = v.amplitudes[*b];
      v.amplitudes[a] = c * va + off * vb;
      v.amplitudes[*b] = c * vb + off * va;
    }
  }
}

void apply_diagonal_layer(SectorVector& v, const TermFamily& family, double beta,
                          const AnsatzSpec& spec) {
  if (!family.diagonal()) throw std::invalid_argument("apply_diagonal_layer needs m == 0");
  require_compatible(v, spec);
  const auto instances = layer_instances(spec, family);
  const SectorBasis& basis = *v.basis;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const FockState s = basis.state(a);
    int count = 0;
    for (const auto& t : instances) count += (s.occupied(t.j) && s.occupied(t.j + t.k)) ? 1 : 0;
    v.amplitudes[a] *= std::polar(1.0, -beta * count);
  }
}

CompiledAnsatz::CompiledAnsatz(AnsatzSpec spec, SectorBasisPtr basis)
    : spec_(std::move(spec)), basis_(std::move(basis)) {
  if (!basis_ || basis_->n_orbitals() != spec_.geometry.n_orbitals) {
    throw std::invalid_argument("basis does not match the ansatz geometry");
  }
  const auto init = basis_->index_of(spec_.initial);
  if (!init) throw std::invalid_argument("initial state is not in the basis");
  initial_index_ = *init;
  for (const auto& layer : spec_.layers) {
    CompiledLayer cl;
    cl.family = layer.family;
    cl.diagonal = layer.family.diagonal();
    const auto instances = family_instances(spec_.geometry.n_orbitals, layer.family, layer.j_stride);
    if (cl.diagonal) {
      cl.counts.assign(basis_->size(), 0);
      for (std::size_t a = 0; a < basis_->size(); ++a) {
        const FockState s = basis_->state(a);
        for (const auto& t : instances) {
          if (s.occupied(t.j) && s.occupied(t.j + t.k)) ++cl.counts[a];
        }
      }
    } else {
      for (const auto& t : instances) {
        std::vector<Pair> pairs;
        for (std::size_t a = 0; a < basis_->size(); ++a) {
          const auto act = apply_term(t, basis_->state(a));
          if (!act) continue;
          const auto b = basis_->index_of(act->target);
          if (!b) throw std::logic_error("scattering term left the sector");
          pairs.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(*b),
                           static_cast<double>(act->sign)});
        }
        cl.instances.push_back(std::move(pairs));
      }
    }
    layers_.push_back(std::move(cl));
  }
}

SectorVector CompiledAnsatz::prepare(const AnsatzParams& params) const {
  return prepare(params.vector_for(spec_));
}

SectorVector CompiledAnsatz::prepare(const std::vector<double>& betas) const {
  if (betas.size() != layers_.size()) {
    throw std::invalid_argument("expected one beta per ansatz layer");
  }
  SectorVector v{basis_, std::vector<Complex>(basis_->size())};
  v.amplitudes[initial_index_] = 1.0;
  auto& amp = v.amplitudes;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    const double beta = betas[l];
    if (layer.diagonal) {
      // Phases for 0..max count, reused across the basis.
      std::vector<Complex> phase;
      for (std::size_t a = 0; a < amp.size(); ++a) {
        const std::size_t n = layer.counts[a];
        while (phase.size() <= n) phase.push_back(std::polar(1.0, -beta * static_cast<double>(phase.size())));
        amp[a] *= phase[n];
      }
      continue;
    }
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    for (const auto& pairs : layer.instances) {
      for (const auto& p : pairs) {
        const Complex off(0.0, -p.sign * s);
        const Complex va = amp[p.a];
        const Complex vb = amp[p.b];
        amp[p.a] = c * va + off * vb;
        amp[p.b] = c * vb + off * va;
      }
    }
  }
  v.normalize();
  return v;
}

SectorVector prepare(const AnsatzSpec& spec, const AnsatzParams& params) {
  // Validate before the (cheap) compile so a missing beta is reported first.
  (void)params.vector_for(spec);
  return CompiledAnsatz(spec, sector_of(spec)).prepare(params);
}

double cost(const AnsatzSpec& spec, const AnsatzParams& params, const SparseOperator& h) {
  const auto v = prepare(spec, params);
  if (!h.basis() || !(*h.basis() == *v.basis)) {
    throw std::invalid_argument("Hamiltonian and ansatz live in different sectors");
  }
  return expectation(h, v.amplitudes);
}

double cost(const CompiledAnsatz& ansatz, const std::vector<double>& betas,
            const SparseOperator& h) {
  if (!h.basis() || !(*h.basis() == *ansatz.basis())) {
    throw std::invalid_argument("Hamiltonian and ansatz live in different sectors");
  }
  return expectation(h, ansatz.prepare(betas).amplitudes);
}

std::vector<double> cost_gradient(const CompiledAnsatz& ansatz, const std::vector<double>& betas,
                                  const SparseOperator& h, double step) {
  std::vector<double> grad(betas.size());
  std::vector<double> x = betas;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    x[i] = betas[i] + step;
    const double up = cost(ansatz, x, h);
    x[i] = betas[i] - step;
    const double down = cost(ansatz, x, h);
    x[i] = betas[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

void OptimizerConfig::validate() const {
  if (hop_attempts < 0 || local_iter_cap < 1 || restarts < 1 || threads < 1) {
    throw std::invalid_argument("optimizer caps must be positive");
  }
  if (!(tol > 0.0) || !(fd_step > 0.0) || !(hop_step >= 0.0) || !(temperature > 0.0)) {
    throw std::invalid_argument("optimizer tolerances and steps must be positive");
  }
}

namespace {

class AnsatzCost final : public ceres::FirstOrderFunction {
 public:
  AnsatzCost(const CompiledAnsatz& ansatz, const SparseOperator& h, double step)
      : ansatz_(ansatz), h_(h), step_(step) {}

  bool Evaluate(const double* parameters, double* value, double* gradient) const override {
    std::vector<double> x(parameters, parameters + NumParameters());
    *value = cost(ansatz_, x, h_);
    if (gradient != nullptr) {
      const auto g = cost_gradient(ansatz_, x, h_, step_);
      std::copy(g.begin(), g.end(), gradient);
    }
    return true;
  }

  int NumParameters() const override { return static_cast<int>(ansatz_.spec().layers.size()); }

 private:
  const CompiledAnsatz& ansatz_;
  const SparseOperator& h_;
  double step_;
};

struct LocalResult {
  std::vector<double> x;
  double cost;
  int iterations;
  bool converged;
};

LocalResult local_minimize(const CompiledAnsatz& ansatz, const SparseOperator& h,
                           std::vector<double> x, const OptimizerConfig& config) {
  ceres::GradientProblem problem(new AnsatzCost(ansatz, h, config.fd_step));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_num_iterations = config.local_iter_cap;
  options.function_tolerance = config.tol;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, x.data(), &summary);
  return {x, summary.final_cost, static_cast<int>(summary.iterations.size()),
          summary.termination_type == ceres::CONVERGENCE};
}

RestartTrace run_restart(const CompiledAnsatz& ansatz, const SparseOperator& h,
                         const OptimizerConfig& config, int restart) {
  const std::size_t dim = ansatz.spec().layers.size();
  std::seed_seq seq{config.seed, static_cast<std::uint64_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> init(0.0, kTwoPi);
  std::uniform_real_distribution<double> hop(-config.hop_step, config.hop_step);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> x(dim);
  for (auto& xi : x) xi = init(rng);

  RestartTrace trace;
  trace.restart = restart;
  trace.initial_cost = cost(ansatz, x, h);

  auto current = local_minimize(ansatz, h, x, config);
  trace.local_iterations += current.iterations;
  trace.hop_costs.push_back(current.cost);
  LocalResult best = current;
  for (int attempt = 0; attempt < config.hop_attempts; ++attempt) {
    std::vector<double> trial = current.x;
    for (auto& xi : trial) xi += hop(rng);
    auto candidate = local_minimize(ansatz, h, trial, config);
    trace.local_iterations += candidate.iterations;
    trace.hop_costs.push_back(candidate.cost);
    const double delta = candidate.cost - current.cost;
    // Metropolis test; the uniform draw is consumed on every hop so the random
    // stream does not depend on the outcome.
    const double u = unit(rng);
    if (delta < 0.0 || u < std::exp(-delta / config.temperature)) {
      current = std::move(candidate);
      ++trace.accepted_hops;
    }
    if (current.cost < best.cost) best = current;
  }
  trace.best_cost = best.cost;
  trace.best = AnsatzParams::from_vector(ansatz.spec(), best.x);
  trace.converged = best.converged;
  return trace;
}

}  // namespace

OptimizeResult optimize(const AnsatzSpec& spec, const SparseOperator& h,
                        const OptimizerConfig& config) {
  config.validate();
  if (!h.basis()) throw std::invalid_argument("optimizer needs a Hamiltonian over a sector");
  const CompiledAnsatz ansatz(spec, h.basis());
  OptimizeResult result;
  if (spec.layers.empty()) {
    result.cost = cost(ansatz, {}, h);
    result.converged = true;
    return result;
  }
  std::vector<RestartTrace> traces(static_cast<std::size_t>(config.restarts));
#pragma omp parallel for schedule(dynamic) num_threads(config.threads)
  for (int r = 0; r < config.restarts; ++r) {
    traces[static_cast<std::size_t>(r)] = run_restart(ansatz, h, config, r);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < traces.size(); ++r) {
    if (traces[r].best_cost < traces[best].best_cost) best = r;
  }
  result.params = traces[best].best;
  result.cost = traces[best].best_cost;
  result.converged = traces[best].converged;
  result.trace = std::move(traces);
  return result;
}

void write_trace(std::ostream& out, const OptimizeResult& result) {
  out << "# restart initial_cost best_cost accepted_hops local_iterations converged betas\n";
  for (const auto& t : result.trace) {
    out << t.restart << ' ' << std::setprecision(12) << t.initial_cost << ' ' << t.best_cost << ' '
        << t.accepted_hops << ' ' << t.local_iterations << ' ' << (t.converged ? 1 : 0);
    for (const auto& [f, b] : t.best.wrapped().betas) out << ' ' << to_string(f) << '=' << b;
    out << '\n';
  }
  out << "# restart hop cost\n";
  for (const auto& t : result.trace) {
    for (std::size_t i = 0; i < t.hop_costs.size(); ++i) {
      out << t.restart << ' ' << i << ' ' << std::setprecision(12) << t.hop_costs[i] << '\n';
    }
  }
}

}  // namespace laughlin
