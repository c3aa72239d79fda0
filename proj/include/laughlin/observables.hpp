// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file observables.hpp
 * @brief Densities, density-density correlations, bipartite entanglement
 *        entropy and Krylov-sector reachability.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "laughlin/eigensolver.hpp"
#include "laughlin/fock.hpp"
#include "laughlin/hamiltonian.hpp"
#include "laughlin/qcircuit.hpp"

namespace laughlin {

struct DensityProfile {
  std::vector<double> values;  // <n_j>

  [[nodiscard]] double total() const noexcept;
};

/// Full symmetric matrix C_ij = <n_i n_j> - <n_i><n_j>.
struct CorrelationMatrix {
  int n = 0;
  std::vector<double> values;  // row-major n x n

  [[nodiscard]] double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)];
  }
  double& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)];
  }
};

[[nodiscard]] DensityProfile density(const SectorVector& v);
[[nodiscard]] CorrelationMatrix correlation(const SectorVector& v);

/// Same quantities from a qubit register, n_j = (1 - <Z_j>) / 2.
[[nodiscard]] DensityProfile density(const FullStateVector& psi);
[[nodiscard]] CorrelationMatrix correlation(const FullStateVector& psi);

/// C(d) averaged over pairs (j, j + d) with lo <= j and j + d <= hi. Entry d
/// is empty when no pair fits (d > hi - lo); d = 0 is the on-site variance.
[[nodiscard]] std::vector<std::optional<double>> site_avg_correlation(const CorrelationMatrix& c,
                                                                      int lo, int hi);

/// Von Neumann entropy (nats) of orbitals [0, cut).
[[nodiscard]] double entanglement_entropy(const SectorVector& v, int cut);

struct KrylovDimension {
  std::size_t dim = 0;
  std::size_t sector_dim = 0;  // K mod N_phi sector
  std::size_t block_dim = 0;   // states with the root's exact sum of orbital indices
};

/// States reachable from `root` by repeated term (or conjugate) applications.
[[nodiscard]] KrylovDimension krylov_dimension(const std::vector<TermInstance>& terms,
                                               const FockState& root);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// "j,value,ci_lo,ci_hi"; intervals are omitted when `ci` is empty.
void write_density_csv(std::ostream& out, const DensityProfile& d,
                       const std::vector<Interval>& ci = {});
/// Dense matrix; `upper_zeroed` blanks i <= j for display.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& c, bool upper_zeroed = false);
/// "d,value,ci_lo,ci_hi"; undefined distances are skipped.
void write_cd_csv(std::ostream& out, const std::vector<std::optional<double>>& cd,
                  const std::vector<std::optional<Interval>>& ci = {});

}  // namespace laughlin
