// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qcircuit.hpp
 * @brief Qubit-level compilation of the ansatz, CNOT accounting and a small
 *        statevector simulator used to cross-check the sector evolution.
 *
 * Rz(phi) = exp(-i phi Z / 2). A rotation exp(-i angle sign P) is compiled as
 * basis change, CNOT ladder onto a parity qubit, Rz(2 angle sign), and the
 * mirror image.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "laughlin/ansatz.hpp"
#include "laughlin/eigensolver.hpp"
#include "laughlin/hamiltonian.hpp"
#include "laughlin/pauli.hpp"

namespace laughlin {

struct PauliRotation {
  PauliString string;
  double angle = 0.0;
  int sign = 1;  // sign of the string's coefficient in the expansion
};

/// exp(-i beta (h + h^dagger)) for one scattering instance as 8 commuting
/// rotations of angle beta / 8. Emitted in the canonical order of the X/Y
/// letters on the four acted qubits: XYXY, YYXX, XXXX, YXXY, XYYX, YYYY, XXYY,
/// YXYX. Throws for diagonal terms.
[[nodiscard]] std::vector<PauliRotation> jw_scattering_paulis(const TermInstance& t, int n_qubits,
                                                              double beta);

/// The four orbitals a scattering instance acts on, ascending.
[[nodiscard]] std::vector<int> acted_qubits(const TermInstance& t);

/// Sorts one instance's rotations into XXXX, XXYY, XYXY, XYYX, YYXX, YYYY,
/// YXXY, YXYX (letters on the X/Y qubits). The set commutes, so the product is
/// unchanged.
[[nodiscard]] std::vector<PauliRotation> reorder_for_cancellation(std::vector<PauliRotation> rots);

enum class GateKind : std::uint8_t { h, s, sdg, x, cnot, rz, global_phase };

struct Gate {
  GateKind kind;
  int q0 = -1;  // target of single-qubit gates, control of CNOT
  int q1 = -1;  // CNOT target
  double angle = 0.0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateList {
  int n_qubits = 0;
  std::vector<Gate> gates;

  [[nodiscard]] std::size_t count(GateKind kind) const;
  [[nodiscard]] std::size_t cnot_count() const { return count(GateKind::cnot); }
  void append(const GateList& other);
};

enum class LadderStyle : std::uint8_t {
  chain,  // CNOT(q0,q1) CNOT(q1,q2) ..., parity on the last support qubit
  star,   // every support qubit onto one target qubit
};

struct CompileOptions {
  LadderStyle ladder = LadderStyle::star;
  /// Position of the star target among the X/Y qubits of a scattering string
  /// (ignored for chain ladders and for strings without X/Y letters).
  int star_target = 2;
  bool reorder = true;
  bool cancel = true;
  bool prepare_initial = true;  // X gates for the initial Fock state
};

/// Basis change, ladder, Rz, inverse ladder, inverse basis change.
[[nodiscard]] GateList rotation_to_gates(const PauliRotation& r, LadderStyle ladder,
                                         int star_qubit = -1);

/// exp(-i beta n_a n_b): two Rz, a CNOT pair around an Rz, and a global phase.
[[nodiscard]] GateList diagonal_pair_gates(int a, int b, int n_qubits, double beta);

[[nodiscard]] GateList compile_instance(const TermInstance& t, int n_qubits, double beta,
                                        const CompileOptions& options = {});
[[nodiscard]] GateList compile_layer(const AnsatzSpec& spec, const Layer& layer, double beta,
                                     const CompileOptions& options = {});
[[nodiscard]] GateList compile_circuit(const AnsatzSpec& spec, const AnsatzParams& params,
                                       const CompileOptions& options = {});

/// Removes inverse pairs (H H, S Sdg, X X, CNOT CNOT) whose intervening gates
/// commute with them, to a fixpoint. Never changes the unitary.
[[nodiscard]] GateList cancel_adjacent(const GateList& g, std::size_t window = 400);

inline constexpr int kMaxSimulatedQubits = 24;

struct FullStateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;  // index bit q = qubit q

  static FullStateVector zero(int n_qubits);
  static FullStateVector basis(int n_qubits, std::uint64_t bits);
  [[nodiscard]] double norm() const noexcept;
};

/// Applies gates in order. Throws std::invalid_argument past the qubit cap.
void apply_gates(FullStateVector& psi, const GateList& g);
/// Runs g on |0...0>.
[[nodiscard]] FullStateVector simulate_gates(const GateList& g, int n_qubits);

[[nodiscard]] FullStateVector embed_sector(const SectorVector& v);
/// Amplitudes on the sector's bitstrings; the rest is dropped.
[[nodiscard]] SectorVector extract_sector(const FullStateVector& psi, const SectorBasisPtr& basis);
[[nodiscard]] std::complex<double> inner(const FullStateVector& a, const FullStateVector& b);

struct LayerCount {
  std::string family;
  int instances = 0;
  std::size_t cnots = 0;
};

struct CountRow {
  int n_electrons = 0;
  int qubits = 0;
  std::size_t cnots = 0;
  std::vector<LayerCount> layers;
  int reference = 0;  // published total, 0 when unknown
};

/// Published CNOT totals for N_e = 6, 8, 10, 12; 0 otherwise.
[[nodiscard]] int reference_cnot_count(int n_electrons);

/// Post-cancellation CNOT totals of the named ansatz for each N_e.
[[nodiscard]] std::vector<CountRow> count_report(const std::string& ansatz,
                                                 const std::vector<int>& n_electrons,
                                                 const CompileOptions& options = {});

/// CSV with a header comment stating what is counted.
void write_count_report(std::ostream& out, const std::vector<CountRow>& rows);
/// One gate per line: name, qubits, angle.
void write_gates(std::ostream& out, const GateList& g);

}  // namespace laughlin
