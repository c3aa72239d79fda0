// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file eigensolver.hpp
 * @brief Ground states and low spectra of sector Hamiltonians, plus overlaps.
 *
 * Bases up to `dense_limit` states are diagonalized densely. Larger bases use
 * Lanczos with full reorthogonalization; further eigenpairs are obtained by
 * deflating the converged ones, which also resolves exact degeneracies.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laughlin/fock.hpp"
#include "laughlin/hamiltonian.hpp"

namespace laughlin {

/// Complex amplitudes over a sector basis.
struct SectorVector {
  SectorBasisPtr basis;
  std::vector<Complex> amplitudes;

  [[nodiscard]] std::size_t size() const noexcept { return amplitudes.size(); }
  [[nodiscard]] double norm() const noexcept;
  void normalize();
};

/// Unit vector on a single Fock state; throws if the state is not in the basis.
[[nodiscard]] SectorVector basis_vector(const SectorBasisPtr& basis, const FockState& s);

/// <a|b>. Throws std::invalid_argument when the bases differ.
[[nodiscard]] Complex inner(const SectorVector& a, const SectorVector& b);

/// |<a|b>|, the wavefunction overlap used throughout as "fidelity".
[[nodiscard]] double fidelity(const SectorVector& a, const SectorVector& b);

inline constexpr std::uint64_t kDefaultLanczosSeed = 0x1a0641;

struct EigenOptions {
  std::size_t dense_limit = 2000;
  std::uint64_t seed = kDefaultLanczosSeed;
  std::size_t max_krylov = 250;   // Krylov vectors kept per restart
  std::size_t max_restarts = 60;
  double residual_tol = 1e-8;     // relative to ||H||_inf
  double degeneracy_tol = 1e-10;  // relative to ||H||_inf
  /// Optional real start vector for Lanczos (random when absent).
  std::optional<std::vector<double>> start;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<SectorVector> eigenvectors;
  std::vector<double> residuals;    // ||H v - lambda v||
  /// Orthonormal basis of the lowest (possibly degenerate) eigenspace.
  std::vector<SectorVector> ground_space;
  double norm_inf = 0.0;
  std::string method;

  [[nodiscard]] const SectorVector& ground() const { return eigenvectors.front(); }
  [[nodiscard]] double ground_energy() const { return eigenvalues.front(); }
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  [[nodiscard]] double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

[[nodiscard]] EigenResult ground_state(const SparseOperator& op, const EigenOptions& options = {});
[[nodiscard]] EigenResult lowest_k(const SparseOperator& op, std::size_t count,
                                   const EigenOptions& options = {});

/// Overlap of v with the ground space: sqrt(sum_i |<g_i|v>|^2). Equals
/// fidelity(v, ground) when the ground state is unique.
[[nodiscard]] double ground_fidelity(const SectorVector& v, const EigenResult& result);

/// Largest singular value of the overlap matrix between two ground spaces.
[[nodiscard]] double ground_space_fidelity(const EigenResult& a, const EigenResult& b);

/// Start vector concentrated on `root` with a small seeded random admixture.
/// Used where near-degenerate spectra (thin cylinders) would otherwise make the
/// returned ground vector depend on the random start.
[[nodiscard]] std::vector<double> root_biased_start(const SectorBasis& basis, const FockState& root,
                                                    double admixture, std::uint64_t seed);

/// Eigenvalues, residuals and basis descriptor as plain text.
void write_report(std::ostream& out, const EigenResult& result);

}  // namespace laughlin
