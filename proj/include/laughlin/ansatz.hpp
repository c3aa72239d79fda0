// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ansatz.hpp
 * @brief Hamiltonian variational ansatz evaluated exactly inside one sector.
 *
 * Each layer is a product over its term instances of exp(-i beta G), applied
 * in ascending j. For scattering families G = h + h^dagger, which pairs basis
 * states two at a time; for diagonal families G = n_j n_{j+k}.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "laughlin/eigensolver.hpp"
#include "laughlin/fock.hpp"
#include "laughlin/hamiltonian.hpp"

namespace laughlin {

struct Layer {
  TermFamily family;
  int j_stride = 1;  // 3 for the squeezed first layer

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct AnsatzSpec {
  SystemGeometry geometry;
  FockState initial;
  std::vector<Layer> layers;  // application order, first layer acts first
  std::string name;

  /// U21 (j = 3n), U30, U31, U10, U20 on the CDW.
  static AnsatzSpec effective(const SystemGeometry& geometry);
  /// U21 (j = 3n), U30, U10, U20: no U31.
  static AnsatzSpec thin_torus(const SystemGeometry& geometry);
  /// effective() followed by a U40 diagonal layer.
  static AnsatzSpec effective_u40(const SystemGeometry& geometry);
  /// "eff", "tt" or "eff+u40".
  static AnsatzSpec preset(const std::string& name, const SystemGeometry& geometry);

  [[nodiscard]] std::vector<TermFamily> families() const;
};

struct AnsatzParams {
  std::map<TermFamily, double> betas;

  /// Published optimum for N_e = 6, L_y = 10 (radians, unwrapped).
  static AnsatzParams published();
  static AnsatzParams zeros(const AnsatzSpec& spec);

  /// Throws std::invalid_argument when the family has no angle.
  [[nodiscard]] double at(const TermFamily& f) const;
  /// Angles reduced to [0, 2 pi).
  [[nodiscard]] AnsatzParams wrapped() const;
  /// Angles in spec family order.
  [[nodiscard]] std::vector<double> vector_for(const AnsatzSpec& spec) const;
  static AnsatzParams from_vector(const AnsatzSpec& spec, const std::vector<double>& x);
};

void write_params(std::ostream& out, const AnsatzParams& params);
/// Reads "family beta" lines; '#' starts a comment.
[[nodiscard]] AnsatzParams read_params(std::istream& in);

/// Instances of one layer, j ascending, unit coefficients.
[[nodiscard]] std::vector<TermInstance> layer_instances(const AnsatzSpec& spec,
                                                        const TermFamily& family);

/// exp(-i beta (h + h^dagger)) per instance, ascending j.
void apply_scattering_layer(SectorVector& v, const TermFamily& family, double beta,
                            const AnsatzSpec& spec);
/// Multiplies by exp(-i beta sum_j n_j n_{j+k}) over the layer's instances.
void apply_diagonal_layer(SectorVector& v, const TermFamily& family, double beta,
                          const AnsatzSpec& spec);

/// Ansatz with the sector action of every instance tabulated once, for
/// repeated evaluation inside the optimizer.
class CompiledAnsatz {
 public:
  CompiledAnsatz(AnsatzSpec spec, SectorBasisPtr basis);

  [[nodiscard]] const AnsatzSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const SectorBasisPtr& basis() const noexcept { return basis_; }
  [[nodiscard]] SectorVector prepare(const AnsatzParams& params) const;
  [[nodiscard]] SectorVector prepare(const std::vector<double>& betas) const;

 private:
  struct Pair {
    std::uint32_t a;
    std::uint32_t b;
    double sign;
  };
  struct CompiledLayer {
    TermFamily family;
    bool diagonal = false;
    std::vector<std::vector<Pair>> instances;  // scattering
    std::vector<std::uint8_t> counts;          // diagonal: pairs per basis state
  };

  AnsatzSpec spec_;
  SectorBasisPtr basis_;
  std::size_t initial_index_ = 0;
  std::vector<CompiledLayer> layers_;
};

/// Initial state through all layers, normalized. Basis is the sector of the
/// spec's initial state.
[[nodiscard]] SectorVector prepare(const AnsatzSpec& spec, const AnsatzParams& params);

/// <psi(beta)|H|psi(beta)>. Throws on a basis mismatch.
[[nodiscard]] double cost(const AnsatzSpec& spec, const AnsatzParams& params,
                          const SparseOperator& h);
[[nodiscard]] double cost(const CompiledAnsatz& ansatz, const std::vector<double>& betas,
                          const SparseOperator& h);
/// Central finite-difference gradient of cost in spec family order.
[[nodiscard]] std::vector<double> cost_gradient(const CompiledAnsatz& ansatz,
                                                const std::vector<double>& betas,
                                                const SparseOperator& h, double step);

struct OptimizerConfig {
  int hop_attempts = 100;
  int local_iter_cap = 1000;
  int restarts = 50;
  double tol = 1e-6;
  std::uint64_t seed = 7;
  double hop_step = 0.5;
  double temperature = 1.0;
  double fd_step = 1e-5;
  int threads = 1;

  void validate() const;
};

struct RestartTrace {
  int restart = 0;
  double initial_cost = 0.0;
  std::vector<double> hop_costs;  // cost after each local minimization, incl. the first
  int accepted_hops = 0;
  int local_iterations = 0;
  double best_cost = 0.0;
  AnsatzParams best;
  bool converged = false;
};

struct OptimizeResult {
  AnsatzParams params;
  double cost = 0.0;
  bool converged = false;
  std::vector<RestartTrace> trace;
};

[[nodiscard]] OptimizeResult optimize(const AnsatzSpec& spec, const SparseOperator& h,
                                      const OptimizerConfig& config);

void write_trace(std::ostream& out, const OptimizeResult& result);

}  // namespace laughlin
