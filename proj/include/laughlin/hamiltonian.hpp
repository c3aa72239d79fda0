// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief Pseudopotential couplings, interaction term lists and sparse sector
 *        Hamiltonians for the lowest-Landau-level chain model.
 *
 * A term with family (k, m) at offset j is the two-body operator
 *
 *     c+_{j+m} c+_{j+k} c_{j+k+m} c_j
 *
 * which annihilates a pair at distance k+m and recreates it at distance k-m
 * around the same center. m == 0 terms are density-density interactions
 * n_j n_{j+k}; m >= 1 terms scatter and always enter together with their
 * Hermitian conjugate.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laughlin/fock.hpp"

namespace laughlin {

using Complex = std::complex<double>;

/// Haldane-Trugman-Kivelson matrix element on a cylinder of circumference l_y.
/// Requires k > m >= 0 and l_y > 0.
[[nodiscard]] double pseudopotential(int k, int m, double l_y);

struct TermFamily {
  int k = 0;
  int m = 0;

  [[nodiscard]] int range() const noexcept { return k + m; }
  [[nodiscard]] bool diagonal() const noexcept { return m == 0; }
  friend auto operator<=>(const TermFamily&, const TermFamily&) = default;
};

[[nodiscard]] std::string to_string(const TermFamily& f);  // "21"
[[nodiscard]] TermFamily parse_family(const std::string& text);

/// Which (k, m) families survive: everything, a maximum range k+m, or an
/// explicit whitelist.
class Truncation {
 public:
  enum class Kind { full, max_range, families };

  static Truncation full() { return Truncation(Kind::full, 0, {}); }
  static Truncation max_range(int r);
  static Truncation families(std::vector<TermFamily> families);
  /// Diagonal V10, V20, V30 plus scattering V21, V31.
  static Truncation effective();
  /// k + m <= 3: V10, V20, V30, V21.
  static Truncation thin_torus() { return max_range(3); }

  [[nodiscard]] bool keeps(const TermFamily& f) const;
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string describe() const;

 private:
  Truncation(Kind kind, int r, std::vector<TermFamily> families)
      : kind_(kind), max_range_(r), families_(std::move(families)) {}

  Kind kind_;
  int max_range_;
  std::vector<TermFamily> families_;
};

struct TermInstance {
  int k = 0;
  int m = 0;
  int j = 0;
  double coefficient = 1.0;

  [[nodiscard]] TermFamily family() const noexcept { return {k, m}; }
  [[nodiscard]] bool diagonal() const noexcept { return m == 0; }
};

struct CouplingEntry {
  int k;
  int m;
  double value;
};

struct CouplingTable {
  double circumference = 0.0;
  std::vector<CouplingEntry> entries;
  std::string truncation;
};

[[nodiscard]] CouplingTable coupling_table(const SystemGeometry& geometry,
                                           const Truncation& truncation);

/// Boundary-contained instances sorted by (k+m, k, j). Coefficients are V_km.
[[nodiscard]] std::vector<TermInstance> build_terms(const SystemGeometry& geometry,
                                                    const Truncation& truncation);

/// Instances of a single family with unit coefficient, j ascending, optionally
/// restricted to offsets that are multiples of `j_stride`.
[[nodiscard]] std::vector<TermInstance> family_instances(int n_orbitals, TermFamily family,
                                                         int j_stride = 1);

struct TermAction {
  FockState target;
  int sign;  // +1 or -1
};

/// Applies c_j, c_{j+k+m}, c+_{j+k}, c+_{j+m} in that order. Each elementary
/// operator contributes (-1)^(occupied orbitals below it) on the intermediate
/// state. Empty when the term annihilates the state.
[[nodiscard]] std::optional<TermAction> apply_term(const TermInstance& t, const FockState& s);

/// Same convention for the Hermitian conjugate
/// c+_j c+_{j+k+m} c_{j+k} c_{j+m}.
[[nodiscard]] std::optional<TermAction> apply_term_adjoint(const TermInstance& t,
                                                           const FockState& s);

/// Real symmetric matrix over a sector basis in CSR layout.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(SectorBasisPtr basis, std::vector<std::size_t> row_ptr,
                 std::vector<std::size_t> cols, std::vector<double> values);

  [[nodiscard]] const SectorBasisPtr& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_ ? basis_->size() : 0; }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return values_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& cols() const noexcept { return cols_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  /// Entry (row, col); zero when not stored.
  [[nodiscard]] double entry(std::size_t row, std::size_t col) const;
  /// Maximum absolute row sum.
  [[nodiscard]] double norm_inf() const noexcept;

  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;

 private:
  SectorBasisPtr basis_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// Builds sum_t coefficient * term (+ H.c. for scattering terms when
/// `hermitize` is set).
[[nodiscard]] SparseOperator assemble(const SectorBasisPtr& basis,
                                      const std::vector<TermInstance>& terms,
                                      bool hermitize = true);

/// Convenience: geometry + truncation over the given basis.
[[nodiscard]] SparseOperator assemble_hamiltonian(const SectorBasisPtr& basis,
                                                  const SystemGeometry& geometry,
                                                  const Truncation& truncation);

/// y = H v. Throws std::invalid_argument on a dimension mismatch.
void matvec(const SparseOperator& op, std::span<const Complex> v, std::span<Complex> y);
[[nodiscard]] std::vector<Complex> matvec(const SparseOperator& op, std::span<const Complex> v);

/// <v|H|v>, real for a symmetric H.
[[nodiscard]] double expectation(const SparseOperator& op, std::span<const Complex> v);

/// Plain text table "k m j coefficient".
void write_terms(std::ostream& out, const std::vector<TermInstance>& terms);

}  // namespace laughlin
