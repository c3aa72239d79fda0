// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace laughlin {

namespace {

void check_orbitals(int n_orbitals) {
  if (n_orbitals < 1 || n_orbitals > kMaxOrbitals) {
    throw std::invalid_argument("orbital count must lie in [1, 63], got " +
                                std::to_string(n_orbitals));
  }
}

// Next mask with the same popcount (Gosper's hack).
Bits next_combination(Bits x) noexcept {
  const Bits lowest = x & (~x + 1);
  const Bits ripple = x + lowest;
  return (((ripple ^ x) >> 2) / lowest) | ripple;
}

int weighted_sum_mod(Bits bits, int n_orbitals) noexcept {
  long sum = 0;
  while (bits != 0) {
    sum += std::countr_zero(bits);
    bits &= bits - 1;
  }
  return static_cast<int>(sum % n_orbitals);
}

}  // namespace

FockState make_state(Bits bits, int n_orbitals) {
  check_orbitals(n_orbitals);
  if ((bits >> n_orbitals) != 0) {
    throw std::invalid_argument("occupation outside the orbital range");
  }
  return FockState{bits, n_orbitals};
}

FockState state_from_orbitals(const std::vector<int>& occupied, int n_orbitals) {
  check_orbitals(n_orbitals);
  Bits bits = 0;
  for (int j : occupied) {
    if (j < 0 || j >= n_orbitals) {
      throw std::invalid_argument("orbital index out of range: " + std::to_string(j));
    }
    bits |= Bits{1} << j;
  }
  return FockState{bits, n_orbitals};
}

int center_of_mass(const FockState& s) noexcept {
  return s.n_orbitals > 0 ? weighted_sum_mod(s.bits, s.n_orbitals) : 0;
}

std::string to_bitstring(const FockState& s) {
  std::string out(static_cast<std::size_t>(s.n_orbitals), '0');
  for (int j = 0; j < s.n_orbitals; ++j) {
    if (s.occupied(j)) out[static_cast<std::size_t>(j)] = '1';
  }
  return out;
}

FockState from_bitstring(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_orbitals(n);
  Bits bits = 0;
  for (int j = 0; j < n; ++j) {
    const char c = text[static_cast<std::size_t>(j)];
    if (c == '1') {
      bits |= Bits{1} << j;
    } else if (c != '0') {
      throw std::invalid_argument("bitstring may only contain '0' and '1'");
    }
  }
  return FockState{bits, n};
}

SystemGeometry SystemGeometry::laughlin(int n_electrons, double circumference) {
  SystemGeometry g{n_electrons, 3 * n_electrons - 2, circumference};
  g.validate(GeometryCheck::strict);
  return g;
}

SystemGeometry SystemGeometry::nonstandard(int n_electrons, int n_orbitals,
                                           double circumference) {
  SystemGeometry g{n_electrons, n_orbitals, circumference};
  g.validate(GeometryCheck::allow_nonstandard);
  return g;
}

void SystemGeometry::validate(GeometryCheck check) const {
  check_orbitals(n_orbitals);
  if (n_electrons < 0 || n_electrons > n_orbitals) {
    throw std::invalid_argument("electron count must lie in [0, n_orbitals]");
  }
  if (!(circumference > 0.0)) {
    throw std::invalid_argument("circumference must be positive");
  }
  if (check == GeometryCheck::strict && !is_standard()) {
    std::ostringstream msg;
    msg << "geometry violates N_phi = 3 N_e - 2 (N_e=" << n_electrons
        << ", N_phi=" << n_orbitals << "); use a nonstandard geometry to override";
    throw std::invalid_argument(msg.str());
  }
}

FockState cdw_state(const SystemGeometry& geometry) {
  Bits bits = 0;
  for (int i = 0; i < geometry.n_electrons; ++i) {
    const int j = 3 * i;
    if (j >= geometry.n_orbitals) {
      throw std::invalid_argument("CDW pattern does not fit in the orbital range");
    }
    bits |= Bits{1} << j;
  }
  return FockState{bits, geometry.n_orbitals};
}

SectorBasis::SectorBasis(int n_orbitals, int n_particles, int com, std::vector<Bits> states)
    : n_orbitals_(n_orbitals), n_particles_(n_particles), com_(com), states_(std::move(states)) {
  if (!std::is_sorted(states_.begin(), states_.end())) {
    throw std::invalid_argument("sector states must be sorted ascending");
  }
}

std::optional<std::size_t> SectorBasis::index_of(Bits bits) const noexcept {
  const auto it = std::lower_bound(states_.begin(), states_.end(), bits);
  if (it == states_.end() || *it != bits) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::string SectorBasis::describe() const {
  std::ostringstream out;
  out << "N_phi=" << n_orbitals_ << " N=" << n_particles_ << " K=" << com_
      << " dim=" << states_.size();
  return out.str();
}

SectorBasisPtr enumerate_sector(const SystemGeometry& geometry, int com, GeometryCheck check) {
  geometry.validate(check);
  const int n = geometry.n_orbitals;
  const int ne = geometry.n_electrons;
  if (com < 0 || com >= n) {
    throw std::invalid_argument("center of mass must lie in [0, n_orbitals)");
  }
  std::vector<Bits> states;
  if (ne == 0) {
    if (com == 0) states.push_back(0);
    return std::make_shared<const SectorBasis>(n, ne, com, std::move(states));
  }
  const Bits limit = Bits{1} << n;
  for (Bits x = (Bits{1} << ne) - 1; x < limit; x = next_combination(x)) {
    if (weighted_sum_mod(x, n) == com) states.push_back(x);
    if (ne == n) break;
  }
  return std::make_shared<const SectorBasis>(n, ne, com, std::move(states));
}

SectorBasisPtr cdw_sector(const SystemGeometry& geometry, GeometryCheck check) {
  return enumerate_sector(geometry, center_of_mass(cdw_state(geometry)), check);
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace laughlin
