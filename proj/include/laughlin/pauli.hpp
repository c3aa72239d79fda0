// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pauli.hpp
 * @brief Pauli strings, sums of Pauli strings and the Jordan-Wigner map.
 *
 * Qubit q is orbital q. c_q = Z_0 ... Z_{q-1} (X_q + i Y_q) / 2, so the
 * string sign matches the occupied-below convention of the Fock module.
 */

#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace laughlin {

/// Letters 'I', 'X', 'Y', 'Z', one per qubit; index 0 is qubit 0.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits) : letters_(static_cast<std::size_t>(n_qubits), 'I') {}
  explicit PauliString(std::string letters);

  [[nodiscard]] int n_qubits() const noexcept { return static_cast<int>(letters_.size()); }
  [[nodiscard]] char at(int q) const { return letters_.at(static_cast<std::size_t>(q)); }
  void set(int q, char letter);
  [[nodiscard]] const std::string& letters() const noexcept { return letters_; }

  [[nodiscard]] int weight() const noexcept;
  /// Qubits carrying a non-identity letter, ascending.
  [[nodiscard]] std::vector<int> support() const;
  /// Letters restricted to `qubits`, in the given order.
  [[nodiscard]] std::string restricted(const std::vector<int>& qubits) const;
  [[nodiscard]] bool commutes_with(const PauliString& other) const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::string letters_;
};

/// a * b = phase * c.
[[nodiscard]] std::pair<std::complex<double>, PauliString> multiply(const PauliString& a,
                                                                    const PauliString& b);

/// Linear combination of Pauli strings on a fixed register.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  static PauliSum identity(int n_qubits);
  static PauliSum single(const PauliString& p, std::complex<double> coefficient = 1.0);

  [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] const std::map<PauliString, std::complex<double>>& terms() const noexcept {
    return terms_;
  }
  void add(const PauliString& p, std::complex<double> coefficient);
  /// Drops terms with |coefficient| <= eps.
  void prune(double eps = 1e-14);

  PauliSum& operator+=(const PauliSum& other);
  [[nodiscard]] PauliSum operator*(const PauliSum& other) const;
  [[nodiscard]] PauliSum adjoint() const;

 private:
  int n_qubits_;
  std::map<PauliString, std::complex<double>> terms_;
};

/// Jordan-Wigner images of c_q and c+_q.
[[nodiscard]] PauliSum jw_annihilation(int q, int n_qubits);
[[nodiscard]] PauliSum jw_creation(int q, int n_qubits);

}  // namespace laughlin
