// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sampling.hpp
 * @brief Finite-shot measurement with a simple noise model, symmetry
 *        postselection, estimators and percentile-bootstrap intervals.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "laughlin/eigensolver.hpp"
#include "laughlin/fock.hpp"
#include "laughlin/observables.hpp"
#include "laughlin/qcircuit.hpp"

namespace laughlin {

struct ShotSet {
  int n_qubits = 0;
  std::map<Bits, std::uint64_t> records;  // bitstring -> multiplicity
  std::uint64_t total_shots = 0;
  std::uint64_t seed = 0;

  void add(Bits bits, std::uint64_t count = 1);
  [[nodiscard]] bool empty() const noexcept { return total_shots == 0; }
};

struct NoiseModel {
  double readout_flip = 0.0;  // per qubit, symmetric
  double depolarizing = 0.0;  // per layer
  int layers = 1;

  /// 1 - (1 - depolarizing)^layers: chance a shot is replaced by a uniform bitstring.
  [[nodiscard]] double effective_depolarizing() const;
  void validate() const;
};

struct SymmetryFilter {
  int target_n = 0;
  int target_k = 0;

  [[nodiscard]] bool n_ok(Bits bits) const noexcept;
  [[nodiscard]] bool k_ok(Bits bits, int n_qubits) const noexcept;
};

/// Multinomial draw from |amplitude|^2, then depolarizing replacement, then
/// readout flips. Throws when n_shots == 0.
[[nodiscard]] ShotSet sample(const SectorVector& v, std::uint64_t n_shots, const NoiseModel& noise,
                             std::uint64_t seed);
[[nodiscard]] ShotSet sample(const FullStateVector& psi, std::uint64_t n_shots,
                             const NoiseModel& noise, std::uint64_t seed);

struct PostselectResult {
  ShotSet kept;
  double n_pass = 0.0;
  double k_pass = 0.0;
  double both_pass = 0.0;
};

[[nodiscard]] PostselectResult postselect(const ShotSet& shots, const SymmetryFilter& filter);

struct Estimate {
  DensityProfile density;
  CorrelationMatrix correlation;
};

/// Empirical <n_j> and C_ij. Throws on an empty shot set.
[[nodiscard]] Estimate estimate(const ShotSet& shots);

using ShotEstimator = std::function<std::vector<double>(const ShotSet&)>;

[[nodiscard]] ShotEstimator density_estimator();
/// C(d) over the window; undefined distances are dropped from the vector.
[[nodiscard]] ShotEstimator cd_estimator(int lo, int hi);

struct BootstrapConfig {
  int n_resamples = 1000;
  double level = 0.68;
  std::uint64_t seed = 0;
};

/// Percentile interval per estimator entry. Empty shot sets give no intervals.
[[nodiscard]] std::vector<Interval> bootstrap_ci(const ShotSet& shots, const ShotEstimator& estimator,
                                                 const BootstrapConfig& config = {});

/// Shots per particle number (index = N) and per K (index = K).
[[nodiscard]] std::vector<std::uint64_t> particle_histogram(const ShotSet& shots);
[[nodiscard]] std::vector<std::uint64_t> com_histogram(const ShotSet& shots);

/// "bitstring multiplicity" lines after a header comment.
void write_shots(std::ostream& out, const ShotSet& shots);
[[nodiscard]] ShotSet read_shots(std::istream& in);

}  // namespace laughlin
