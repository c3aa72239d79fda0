// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/qcircuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace laughlin {

namespace {

constexpr std::array<const char*, 8> kEmissionOrder = {"XYXY", "YYXX", "XXXX", "YXXY",
                                                       "XYYX", "YYYY", "XXYY", "YXYX"};
constexpr std::array<const char*, 8> kCancellationOrder = {"XXXX", "XXYY", "XYXY", "XYYX",
                                                           "YYXX", "YYYY", "YXXY", "YXYX"};

std::vector<int> xy_qubits(const PauliString& p) {
  std::vector<int> out;
  for (int q = 0; q < p.n_qubits(); ++q) {
    if (p.at(q) == 'X' || p.at(q) == 'Y') out.push_back(q);
  }
  return out;
}

template <std::size_t N>
std::size_t rank_in(const std::array<const char*, N>& order, const std::string& key) {
  for (std::size_t i = 0; i < N; ++i) {
    if (key == order[i]) return i;
  }
  throw std::logic_error("unexpected Pauli letters " + key);
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("gate qubit index out of range");
}

}  // namespace

std::vector<int> acted_qubits(const TermInstance& t) {
  if (t.diagonal()) throw std::invalid_argument("diagonal terms have no scattering qubits");
  return {t.j, t.j + t.m, t.j + t.k, t.j + t.k + t.m};
}

std::vector<PauliRotation> jw_scattering_paulis(const TermInstance& t, int n_qubits, double beta) {
  if (t.diagonal()) throw std::invalid_argument("jw_scattering_paulis needs a scattering term");
  if (t.j < 0 || t.j + t.k + t.m >= n_qubits) {
    throw std::invalid_argument("term does not fit in the register");
  }
  const PauliSum h = jw_creation(t.j + t.m, n_qubits) * jw_creation(t.j + t.k, n_qubits) *
                     jw_annihilation(t.j + t.k + t.m, n_qubits) * jw_annihilation(t.j, n_qubits);
  PauliSum g = h;
  g += h.adjoint();
  g.prune();
  const auto acted = acted_qubits(t);
  std::vector<PauliRotation> rots;
  for (const auto& [p, c] : g.terms()) {
    if (std::abs(c.imag()) > 1e-12) throw std::logic_error("generator is not Hermitian");
    rots.push_back({p, beta * std::abs(c.real()), c.real() > 0.0 ? 1 : -1});
  }
  if (rots.size() != 8) throw std::logic_error("scattering generator should have 8 strings");
  std::sort(rots.begin(), rots.end(), [&](const PauliRotation& a, const PauliRotation& b) {
    return rank_in(kEmissionOrder, a.string.restricted(acted)) <
           rank_in(kEmissionOrder, b.string.restricted(acted));
  });
  return rots;
}

std::vector<PauliRotation> reorder_for_cancellation(std::vector<PauliRotation> rots) {
  auto key = [](const PauliRotation& r) {
    const auto q = xy_qubits(r.string);
    return rank_in(kCancellationOrder, r.string.restricted(q));
  };
  std::stable_sort(rots.begin(), rots.end(),
                   [&](const PauliRotation& a, const PauliRotation& b) { return key(a) < key(b); });
  return rots;
}

std::size_t GateList::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

void GateList::append(const GateList& other) {
  if (other.n_qubits != n_qubits) throw std::invalid_argument("gate lists on different registers");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

GateList rotation_to_gates(const PauliRotation& r, LadderStyle ladder, int star_qubit) {
  const int n = r.string.n_qubits();
  GateList out{n, {}};
  const auto support = r.string.support();
  const double theta = r.angle * r.sign;
  if (support.empty()) {
    out.gates.push_back({GateKind::global_phase, -1, -1, theta});
    return out;
  }
  for (int q : support) {
    const char c = r.string.at(q);
    if (c == 'X') {
      out.gates.push_back({GateKind::h, q});
    } else if (c == 'Y') {
      out.gates.push_back({GateKind::sdg, q});
      out.gates.push_back({GateKind::h, q});
    }
  }
  std::vector<Gate> ladder_gates;
  int target = support.back();
  if (ladder == LadderStyle::chain) {
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
      ladder_gates.push_back({GateKind::cnot, support[i], support[i + 1]});
    }
  } else {
    if (std::find(support.begin(), support.end(), star_qubit) != support.end()) target = star_qubit;
    for (int q : support) {
      if (q != target) ladder_gates.push_back({GateKind::cnot, q, target});
    }
  }
  out.gates.insert(out.gates.end(), ladder_gates.begin(), ladder_gates.end());
  out.gates.push_back({GateKind::rz, target, -1, 2.0 * theta});
  out.gates.insert(out.gates.end(), ladder_gates.rbegin(), ladder_gates.rend());
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    const char c = r.string.at(*it);
    if (c == 'X') {
      out.gates.push_back({GateKind::h, *it});
    } else if (c == 'Y') {
      out.gates.push_back({GateKind::h, *it});
      out.gates.push_back({GateKind::s, *it});
    }
  }
  return out;
}

GateList diagonal_pair_gates(int a, int b, int n_qubits, double beta) {
  check_qubit(a, n_qubits);
  check_qubit(b, n_qubits);
  return {n_qubits,
          {{GateKind::rz, a, -1, -beta / 2.0},
           {GateKind::rz, b, -1, -beta / 2.0},
           {GateKind::cnot, a, b},
           {GateKind::rz, b, -1, beta / 2.0},
           {GateKind::cnot, a, b},
           {GateKind::global_phase, -1, -1, beta / 4.0}}};
}

GateList compile_instance(const TermInstance& t, int n_qubits, double beta,
                          const CompileOptions& options) {
  if (t.diagonal()) return diagonal_pair_gates(t.j, t.j + t.k, n_qubits, beta);
  auto rots = jw_scattering_paulis(t, n_qubits, beta);
  if (options.reorder) rots = reorder_for_cancellation(std::move(rots));
  const auto acted = acted_qubits(t);
  const int star = acted.at(static_cast<std::size_t>(std::clamp(options.star_target, 0, 3)));
  GateList block{n_qubits, {}};
  for (const auto& r : rots) block.append(rotation_to_gates(r, options.ladder, star));
  return options.cancel ? cancel_adjacent(block) : block;
}

GateList compile_layer(const AnsatzSpec& spec, const Layer& layer, double beta,
                       const CompileOptions& options) {
  const int n = spec.geometry.n_orbitals;
  GateList out{n, {}};
  for (const auto& t : family_instances(n, layer.family, layer.j_stride)) {
    out.append(compile_instance(t, n, beta, options));
  }
  return out;
}

GateList compile_circuit(const AnsatzSpec& spec, const AnsatzParams& params,
                         const CompileOptions& options) {
  const int n = spec.geometry.n_orbitals;
  GateList out{n, {}};
  if (options.prepare_initial) {
    for (int q = 0; q < n; ++q) {
      if (spec.initial.occupied(q)) out.gates.push_back({GateKind::x, q});
    }
  }
  for (const auto& layer : spec.layers) {
    out.append(compile_layer(spec, layer, params.at(layer.family), options));
  }
  return out;
}

namespace {

// Pauli operator in x/z form with a sign, conjugated through Clifford gates.
struct TrackedPauli {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  std::uint8_t minus = 0;

  TrackedPauli(int n, int q, char letter) : x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n)) {
    x[static_cast<std::size_t>(q)] = letter == 'X' ? 1 : 0;
    z[static_cast<std::size_t>(q)] = letter == 'Z' ? 1 : 0;
  }

  bool operator==(const TrackedPauli&) const = default;

  // Returns false when the gate does not map the Pauli to a Pauli.
  bool conjugate(const Gate& g) {
    const auto a = static_cast<std::size_t>(g.q0);
    switch (g.kind) {
      case GateKind::global_phase:
        return true;
      case GateKind::h:
        minus ^= x[a] & z[a];
        std::swap(x[a], z[a]);
        return true;
      case GateKind::s:
        minus ^= x[a] & z[a];
        z[a] ^= x[a];
        return true;
      case GateKind::sdg:
        for (int i = 0; i < 3; ++i) {
          minus ^= x[a] & z[a];
          z[a] ^= x[a];
        }
        return true;
      case GateKind::x:
        minus ^= z[a];
        return true;
      case GateKind::rz:
        return x[a] == 0;
      case GateKind::cnot: {
        const auto b = static_cast<std::size_t>(g.q1);
        minus ^= x[a] & z[b] & (x[b] ^ z[a] ^ 1u);
        x[b] ^= x[a];
        z[a] ^= z[b];
        return true;
      }
    }
    return false;
  }
};

bool is_inverse(const Gate& a, const Gate& b) {
  if (a.q0 != b.q0 || a.q1 != b.q1) return false;
  switch (a.kind) {
    case GateKind::h:
    case GateKind::x:
    case GateKind::cnot:
      return b.kind == a.kind;
    case GateKind::s:
      return b.kind == GateKind::sdg;
    case GateKind::sdg:
      return b.kind == GateKind::s;
    default:
      return false;
  }
}

// Paulis whose commutation with a segment implies commutation with g.
std::vector<TrackedPauli> generators(const Gate& g, int n) {
  switch (g.kind) {
    case GateKind::h:
      return {TrackedPauli(n, g.q0, 'X'), TrackedPauli(n, g.q0, 'Z')};
    case GateKind::x:
      return {TrackedPauli(n, g.q0, 'X')};
    case GateKind::s:
    case GateKind::sdg:
      return {TrackedPauli(n, g.q0, 'Z')};
    case GateKind::cnot:
      return {TrackedPauli(n, g.q0, 'Z'), TrackedPauli(n, g.q1, 'X')};
    default:
      return {};
  }
}

}  // namespace

GateList cancel_adjacent(const GateList& g, std::size_t window) {
  std::vector<Gate> gates = g.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<bool> removed(gates.size(), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (removed[i]) continue;
      auto gens = generators(gates[i], g.n_qubits);
      if (gens.empty()) continue;
      const auto originals = gens;
      std::size_t seen = 0;
      for (std::size_t j = i + 1; j < gates.size() && seen < window; ++j) {
        if (removed[j]) continue;
        ++seen;
        if (is_inverse(gates[i], gates[j]) && gens == originals) {
          removed[i] = removed[j] = true;
          changed = true;
          break;
        }
        bool ok = true;
        for (auto& p : gens) ok = ok && p.conjugate(gates[j]);
        if (!ok) break;
      }
    }
    if (changed) {
      std::vector<Gate> kept;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!removed[i]) kept.push_back(gates[i]);
      }
      gates = std::move(kept);
    }
  }
  return {g.n_qubits, std::move(gates)};
}

FullStateVector FullStateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

FullStateVector FullStateVector::basis(int n_qubits, std::uint64_t bits) {
  if (n_qubits < 1 || n_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("statevector simulation is capped at 24 qubits");
  }
  FullStateVector psi{n_qubits, std::vector<std::complex<double>>(std::size_t{1} << n_qubits)};
  if ((bits >> n_qubits) != 0) throw std::invalid_argument("basis state outside the register");
  psi.amplitudes[bits] = 1.0;
  return psi;
}

double FullStateVector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void apply_gates(FullStateVector& psi, const GateList& g) {
  if (g.n_qubits != psi.n_qubits) throw std::invalid_argument("gate list and state differ in size");
  if (psi.n_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("statevector simulation is capped at 24 qubits");
  }
  using C = std::complex<double>;
  auto& amp = psi.amplitudes;
  const auto dim = static_cast<std::int64_t>(amp.size());
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& gate : g.gates) {
    if (gate.kind == GateKind::global_phase) {
      const C phase = std::polar(1.0, -gate.angle);
      for (auto& a : amp) a *= phase;
      continue;
    }
    check_qubit(gate.q0, psi.n_qubits);
    const std::int64_t m0 = std::int64_t{1} << gate.q0;
    switch (gate.kind) {
      case GateKind::h:
#pragma omp parallel for
        for (std::int64_t i = 0; i < dim; ++i) {
          if (i & m0) continue;
          const C a = amp[i];
          const C b = amp[i | m0];
          amp[i] = r * (a + b);
          amp[i | m0] = r * (a - b);
        }
        break;
      case GateKind::x:
#pragma omp parallel for
        for (std::int64_t i = 0; i < dim; ++i) {
          if (!(i & m0)) std::swap(amp[i], amp[i | m0]);
        }
        break;
      case GateKind::s:
      case GateKind::sdg: {
        const C phase(0.0, gate.kind == GateKind::s ? 1.0 : -1.0);
#pragma omp parallel for
        for (std::int64_t i = 0; i < dim; ++i) {
          if (i & m0) amp[i] *= phase;
        }
        break;
      }
      case GateKind::rz: {
        const C down = std::polar(1.0, -gate.angle / 2.0);
        const C up = std::polar(1.0, gate.angle / 2.0);
#pragma omp parallel for
        for (std::int64_t i = 0; i < dim; ++i) amp[i] *= (i & m0) ? up : down;
        break;
      }
      case GateKind::cnot: {
        check_qubit(gate.q1, psi.n_qubits);
        const std::int64_t m1 = std::int64_t{1} << gate.q1;
#pragma omp parallel for
        for (std::int64_t i = 0; i < dim; ++i) {
          if ((i & m0) && !(i & m1)) std::swap(amp[i], amp[i | m1]);
        }
        break;
      }
      case GateKind::global_phase:
        break;
    }
  }
}

FullStateVector simulate_gates(const GateList& g, int n_qubits) {
  auto psi = FullStateVector::zero(n_qubits);
  apply_gates(psi, g);
  return psi;
}

FullStateVector embed_sector(const SectorVector& v) {
  auto psi = FullStateVector::zero(v.basis->n_orbitals());
  psi.amplitudes[0] = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) psi.amplitudes[v.basis->states()[i]] = v.amplitudes[i];
  return psi;
}

SectorVector extract_sector(const FullStateVector& psi, const SectorBasisPtr& basis) {
  if (basis->n_orbitals() != psi.n_qubits) throw std::invalid_argument("register size mismatch");
  SectorVector v{basis, std::vector<Complex>(basis->size())};
  for (std::size_t i = 0; i < basis->size(); ++i) v.amplitudes[i] = psi.amplitudes[basis->states()[i]];
  return v;
}

std::complex<double> inner(const FullStateVector& a, const FullStateVector& b) {
  if (a.n_qubits != b.n_qubits) throw std::invalid_argument("register size mismatch");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return acc;
}

int reference_cnot_count(int n_electrons) {
  switch (n_electrons) {
    case 6: return 369;
    case 8: return 543;
    case 10: return 711;
    case 12: return 883;
    default: return 0;
  }
}

std::vector<CountRow> count_report(const std::string& ansatz, const std::vector<int>& n_electrons,
                                   const CompileOptions& options) {
  std::vector<CountRow> rows;
  for (int ne : n_electrons) {
    const auto geometry = SystemGeometry::laughlin(ne, 10.0);
    const auto spec = AnsatzSpec::preset(ansatz, geometry);
    AnsatzParams params = AnsatzParams::zeros(spec);
    for (const auto& [f, b] : AnsatzParams::published().betas) {
      if (params.betas.contains(f)) params.betas[f] = b;
    }
    CountRow row;
    row.n_electrons = ne;
    row.qubits = geometry.n_orbitals;
    row.reference = reference_cnot_count(ne);
    for (const auto& layer : spec.layers) {
      const auto g = compile_layer(spec, layer, params.at(layer.family), options);
      LayerCount lc;
      lc.family = to_string(layer.family);
      lc.instances = static_cast<int>(
          family_instances(geometry.n_orbitals, layer.family, layer.j_stride).size());
      lc.cnots = g.cnot_count();
      row.cnots += lc.cnots;
      row.layers.push_back(lc);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_count_report(std::ostream& out, const std::vector<CountRow>& rows) {
  out << "# CNOTs after cancellation; diagonal layers included, initial-state X gates excluded\n";
  out << "n_electrons,qubits,cnots,reference,delta_percent";
  if (!rows.empty()) {
    for (const auto& l : rows.front().layers) out << ",U" << l.family << "_instances,U" << l.family << "_cnots";
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.n_electrons << ',' << r.qubits << ',' << r.cnots << ',' << r.reference << ',';
    if (r.reference > 0) {
      out << std::fixed << std::setprecision(2)
          << 100.0 * (static_cast<double>(r.cnots) - r.reference) / r.reference
          << std::defaultfloat;
    }
    for (const auto& l : r.layers) out << ',' << l.instances << ',' << l.cnots;
    out << '\n';
  }
}

void write_gates(std::ostream& out, const GateList& g) {
  out << "# qubits " << g.n_qubits << '\n';
  for (const auto& gate : g.gates) {
    switch (gate.kind) {
      case GateKind::h: out << "h " << gate.q0 << '\n'; break;
      case GateKind::s: out << "s " << gate.q0 << '\n'; break;
      case GateKind::sdg: out << "sdg " << gate.q0 << '\n'; break;
      case GateKind::x: out << "x " << gate.q0 << '\n'; break;
      case GateKind::cnot: out << "cx " << gate.q0 << ' ' << gate.q1 << '\n'; break;
      case GateKind::rz:
        out << "rz " << gate.q0 << ' ' << std::setprecision(17) << gate.angle << '\n';
        break;
      case GateKind::global_phase:
        out << "gphase " << std::setprecision(17) << gate.angle << '\n';
        break;
    }
  }
}

}  // namespace laughlin
