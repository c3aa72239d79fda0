// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Run configuration: INI sections per pipeline stage, with defaults,
 *        command-line overrides and a canonical text dump for manifests.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laughlin/ansatz.hpp"
#include "laughlin/eigensolver.hpp"
#include "laughlin/hamiltonian.hpp"
#include "laughlin/qcircuit.hpp"
#include "laughlin/sampling.hpp"

namespace laughlin {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemConfig {
  int n_electrons = 6;
  double circumference = 10.0;
  int n_orbitals = 0;  // 0: 3 N_e - 2
  int com = -1;        // -1: sector of the CDW root
  bool scan_com = false;

  [[nodiscard]] SystemGeometry geometry() const;
};

struct AnsatzConfig {
  std::string name = "eff";
  std::string params = "published";  // published | zeros | file
  std::string params_file;
};

struct SamplingConfig {
  std::uint64_t shots = 5000;
  double readout_flip = 0.0;
  double depolarizing = 0.0;
  int layers = 1;
  std::uint64_t seed = 1;
  int resamples = 1000;
  double level = 0.68;
  std::string source = "ed";  // ed | ansatz
  int window_lo = 2;
  int window_hi = -1;         // -1: N_phi - 3
};

struct EntropyConfig {
  int n_electrons = 8;
  int cut = -1;  // -1: N_phi / 2
  std::vector<double> circumferences{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<std::string> truncations{"range:3", "range:4"};
};

struct SweepConfig {
  std::vector<double> circumferences{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<std::string> truncations{"range:3", "range:4", "range:5", "eff"};
};

struct CircuitConfig {
  std::vector<int> n_electrons{6, 8, 10, 12};
  std::string ladder = "star";
  int star_target = 2;
  bool cross_check = true;
  bool write_gates = true;
};

struct KrylovConfig {
  std::vector<std::string> truncations{"tt", "eff", "full"};
};

struct RunConfig {
  SystemConfig system;
  std::string truncation = "full";
  int eigen_count = 4;
  EigenOptions eigen;
  AnsatzConfig ansatz;
  OptimizerConfig optimizer;
  SamplingConfig sampling;
  EntropyConfig entropy;
  SweepConfig sweep;
  CircuitConfig circuit;
  KrylovConfig krylov;
  std::string out = "out";
  int threads = 1;
  std::uint64_t seed = 1;

  /// Parses INI text; unknown sections or keys are errors.
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);

  /// Applies "section.key=value".
  void set(const std::string& assignment);
  /// Propagates the global seed into stage seeds that were not set explicitly.
  void apply_seed(std::uint64_t seed);
  void validate() const;

  /// Every key with its resolved value, sections in a fixed order.
  void write(std::ostream& out) const;
};

/// "full", "range:r", "families:10,20,...", "eff" or "tt".
[[nodiscard]] Truncation parse_truncation(const std::string& text);
[[nodiscard]] LadderStyle parse_ladder(const std::string& text);

}  // namespace laughlin
