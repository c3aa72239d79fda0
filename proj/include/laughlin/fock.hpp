// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Orbital occupation patterns and (N, K) symmetry sectors.
 *
 * Orbital j of the open cylinder maps to bit j of a 64-bit mask (bit 0 is the
 * leftmost orbital). All fermionic sign conventions in the library are taken
 * with respect to this ascending orbital order.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace laughlin {

using Bits = std::uint64_t;

inline constexpr int kMaxOrbitals = 63;

struct FockState {
  Bits bits = 0;
  int n_orbitals = 0;

  friend bool operator==(const FockState&, const FockState&) = default;

  [[nodiscard]] bool occupied(int orbital) const noexcept {
    return ((bits >> orbital) & 1u) != 0;
  }
};

/// Validates bounds and returns the state; throws std::invalid_argument.
FockState make_state(Bits bits, int n_orbitals);
FockState state_from_orbitals(const std::vector<int>& occupied, int n_orbitals);

[[nodiscard]] inline int particle_number(const FockState& s) noexcept {
  return std::popcount(s.bits);
}

/// Center of mass K = sum_j j n_j (mod n_orbitals).
[[nodiscard]] int center_of_mass(const FockState& s) noexcept;

/// Orbital 0 leftmost, e.g. "1001001001001001".
[[nodiscard]] std::string to_bitstring(const FockState& s);
[[nodiscard]] FockState from_bitstring(std::string_view text);

enum class GeometryCheck { strict, allow_nonstandard };

/// Finite cylinder at filling 1/3. N_phi = 3 N_e - 2 unless built with
/// `nonstandard`, which exists for unit tests and generic-sector ED.
struct SystemGeometry {
  int n_electrons = 0;
  int n_orbitals = 0;
  double circumference = 0.0;

  static SystemGeometry laughlin(int n_electrons, double circumference);
  static SystemGeometry nonstandard(int n_electrons, int n_orbitals,
                                    double circumference);

  [[nodiscard]] bool is_standard() const noexcept {
    return n_orbitals == 3 * n_electrons - 2;
  }
  void validate(GeometryCheck check) const;
};

/// Root charge-density wave |100100...1001>.
[[nodiscard]] FockState cdw_state(const SystemGeometry& geometry);

/// All states with fixed particle number and center of mass, ascending by mask.
/// Immutable once built; share through shared_ptr.
class SectorBasis {
 public:
  SectorBasis(int n_orbitals, int n_particles, int com, std::vector<Bits> states);

  [[nodiscard]] int n_orbitals() const noexcept { return n_orbitals_; }
  [[nodiscard]] int n_particles() const noexcept { return n_particles_; }
  [[nodiscard]] int com() const noexcept { return com_; }
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] const std::vector<Bits>& states() const noexcept { return states_; }
  [[nodiscard]] FockState state(std::size_t i) const {
    return FockState{states_[i], n_orbitals_};
  }
  [[nodiscard]] std::optional<std::size_t> index_of(Bits bits) const noexcept;
  [[nodiscard]] std::optional<std::size_t> index_of(const FockState& s) const noexcept {
    return index_of(s.bits);
  }
  [[nodiscard]] bool contains(const FockState& s) const noexcept {
    return index_of(s).has_value();
  }
  /// Short human-readable descriptor, e.g. "N_phi=16 N=6 K=13 dim=504".
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
    return a.n_orbitals_ == b.n_orbitals_ && a.n_particles_ == b.n_particles_ &&
           a.com_ == b.com_ && a.states_.size() == b.states_.size();
  }

 private:
  int n_orbitals_;
  int n_particles_;
  int com_;
  std::vector<Bits> states_;
};

using SectorBasisPtr = std::shared_ptr<const SectorBasis>;

SectorBasisPtr enumerate_sector(const SystemGeometry& geometry, int com,
                                GeometryCheck check = GeometryCheck::strict);

/// Sector containing the CDW root.
SectorBasisPtr cdw_sector(const SystemGeometry& geometry,
                          GeometryCheck check = GeometryCheck::strict);

/// Binomial coefficient, exact for the orbital counts used here.
[[nodiscard]] std::uint64_t binomial(int n, int k) noexcept;

}  // namespace laughlin
