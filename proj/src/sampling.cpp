// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace laughlin {

void ShotSet::add(Bits bits, std::uint64_t count) {
  if (count == 0) return;
  records[bits] += count;
  total_shots += count;
}

double NoiseModel::effective_depolarizing() const {
  return 1.0 - std::pow(1.0 - depolarizing, layers);
}

void NoiseModel::validate() const {
  if (readout_flip < 0.0 || readout_flip > 1.0 || depolarizing < 0.0 || depolarizing > 1.0) {
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  }
  if (layers < 0) throw std::invalid_argument("noise layer count must be non-negative");
}

bool SymmetryFilter::n_ok(Bits bits) const noexcept { return std::popcount(bits) == target_n; }

bool SymmetryFilter::k_ok(Bits bits, int n_qubits) const noexcept {
  return center_of_mass(FockState{bits, n_qubits}) == target_k;
}

namespace {

ShotSet draw(int n_qubits, const std::vector<Bits>& outcomes, const std::vector<double>& weights,
             std::uint64_t n_shots, const NoiseModel& noise, std::uint64_t seed) {
  if (n_shots == 0) throw std::invalid_argument("at least one shot is required");
  noise.validate();
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.empty() ? 0.0 : cumulative.back();
  if (!(total > 0.0)) throw std::invalid_argument("cannot sample a zero state");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double depol = noise.effective_depolarizing();
  const Bits mask = n_qubits >= 64 ? ~Bits{0} : (Bits{1} << n_qubits) - 1;

  ShotSet shots;
  shots.n_qubits = n_qubits;
  shots.seed = seed;
  for (std::uint64_t s = 0; s < n_shots; ++s) {
    Bits bits = 0;
    if (depol > 0.0 && unit(rng) < depol) {
      bits = rng() & mask;
    } else {
      const double u = unit(rng) * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      bits = outcomes[static_cast<std::size_t>(it - cumulative.begin())];
    }
    if (noise.readout_flip > 0.0) {
      for (int q = 0; q < n_qubits; ++q) {
        if (unit(rng) < noise.readout_flip) bits ^= Bits{1} << q;
      }
    }
    shots.add(bits);
  }
  return shots;
}

}  // namespace

ShotSet sample(const SectorVector& v, std::uint64_t n_shots, const NoiseModel& noise,
               std::uint64_t seed) {
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::norm(v.amplitudes[i]);
  return draw(v.basis->n_orbitals(), v.basis->states(), w, n_shots, noise, seed);
}

ShotSet sample(const FullStateVector& psi, std::uint64_t n_shots, const NoiseModel& noise,
               std::uint64_t seed) {
  std::vector<Bits> outcomes(psi.amplitudes.size());
  std::vector<double> w(psi.amplitudes.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    outcomes[i] = i;
    w[i] = std::norm(psi.amplitudes[i]);
  }
  return draw(psi.n_qubits, outcomes, w, n_shots, noise, seed);
}

PostselectResult postselect(const ShotSet& shots, const SymmetryFilter& filter) {
  if (filter.target_k < 0 || filter.target_k >= std::max(shots.n_qubits, 1)) {
    throw std::invalid_argument("filter K must lie in [0, n_qubits)");
  }
  PostselectResult out;
  out.kept.n_qubits = shots.n_qubits;
  out.kept.seed = shots.seed;
  std::uint64_t n_pass = 0;
  std::uint64_t k_pass = 0;
  for (const auto& [bits, count] : shots.records) {
    const bool n_ok = filter.n_ok(bits);
    const bool k_ok = filter.k_ok(bits, shots.n_qubits);
    if (n_ok) n_pass += count;
    if (k_ok) k_pass += count;
    if (n_ok && k_ok) out.kept.add(bits, count);
  }
  if (shots.total_shots > 0) {
    const auto total = static_cast<double>(shots.total_shots);
    out.n_pass = static_cast<double>(n_pass) / total;
    out.k_pass = static_cast<double>(k_pass) / total;
    out.both_pass = static_cast<double>(out.kept.total_shots) / total;
  }
  return out;
}

Estimate estimate(const ShotSet& shots) {
  if (shots.empty()) throw std::invalid_argument("cannot estimate from zero shots");
  const int n = shots.n_qubits;
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> first(nn);
  std::vector<double> second(nn * nn);
  for (const auto& [bits, count] : shots.records) {
    const auto w = static_cast<double>(count);
    for (Bits b = bits; b != 0; b &= b - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(b));
      first[i] += w;
      for (Bits c = bits; c != 0; c &= c - 1) second[i * nn + static_cast<std::size_t>(std::countr_zero(c))] += w;
    }
  }
  const auto total = static_cast<double>(shots.total_shots);
  for (auto& x : first) x /= total;
  CorrelationMatrix c{n, std::vector<double>(nn * nn)};
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) c.values[i * nn + j] = second[i * nn + j] / total - first[i] * first[j];
  }
  return {{first}, c};
}

ShotEstimator density_estimator() {
  return [](const ShotSet& s) { return estimate(s).density.values; };
}

ShotEstimator cd_estimator(int lo, int hi) {
  return [lo, hi](const ShotSet& s) {
    std::vector<double> out;
    for (const auto& v : site_avg_correlation(estimate(s).correlation, lo, hi)) {
      if (v) out.push_back(*v);
    }
    return out;
  };
}

namespace {

// Linear interpolation between order statistics.
double percentile(std::vector<double>& xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

}  // namespace

std::vector<Interval> bootstrap_ci(const ShotSet& shots, const ShotEstimator& estimator,
                                   const BootstrapConfig& config) {
  if (shots.empty()) return {};
  if (config.n_resamples < 1 || !(config.level > 0.0 && config.level < 1.0)) {
    throw std::invalid_argument("bootstrap needs at least one resample and a level in (0, 1)");
  }
  std::vector<Bits> flat;
  flat.reserve(shots.total_shots);
  for (const auto& [bits, count] : shots.records) flat.insert(flat.end(), count, bits);

  std::vector<std::vector<double>> values(static_cast<std::size_t>(config.n_resamples));
#pragma omp parallel for schedule(static)
  for (int r = 0; r < config.n_resamples; ++r) {
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
    ShotSet resampled;
    resampled.n_qubits = shots.n_qubits;
    for (std::size_t s = 0; s < flat.size(); ++s) resampled.add(flat[pick(rng)]);
    values[static_cast<std::size_t>(r)] = estimator(resampled);
  }
  const std::size_t entries = values.front().size();
  const double tail = (1.0 - config.level) / 2.0;
  std::vector<Interval> out(entries);
  std::vector<double> column(values.size());
  for (std::size_t e = 0; e < entries; ++e) {
    for (std::size_t r = 0; r < values.size(); ++r) column[r] = values[r].at(e);
    out[e].lo = percentile(column, tail);
    out[e].hi = percentile(column, 1.0 - tail);
  }
  return out;
}

std::vector<std::uint64_t> particle_histogram(const ShotSet& shots) {
  std::vector<std::uint64_t> h(static_cast<std::size_t>(shots.n_qubits) + 1);
  for (const auto& [bits, count] : shots.records) h[static_cast<std::size_t>(std::popcount(bits))] += count;
  return h;
}

std::vector<std::uint64_t> com_histogram(const ShotSet& shots) {
  std::vector<std::uint64_t> h(static_cast<std::size_t>(std::max(shots.n_qubits, 1)));
  for (const auto& [bits, count] : shots.records) {
    h[static_cast<std::size_t>(center_of_mass(FockState{bits, shots.n_qubits}))] += count;
  }
  return h;
}

void write_shots(std::ostream& out, const ShotSet& shots) {
  out << "# qubits " << shots.n_qubits << " shots " << shots.total_shots << " seed " << shots.seed
      << '\n';
  for (const auto& [bits, count] : shots.records) {
    out << to_bitstring(FockState{bits, shots.n_qubits}) << ' ' << count << '\n';
  }
}

ShotSet read_shots(std::istream& in) {
  ShotSet shots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line.front() == '#') {
      std::string tag;
      fields >> tag;
      while (fields >> tag) {
        if (tag == "seed") fields >> shots.seed;
        else if (tag == "qubits") fields >> shots.n_qubits;
        else if (tag == "shots") {
          std::uint64_t ignored = 0;
          fields >> ignored;
        }
      }
      continue;
    }
    std::string bitstring;
    std::uint64_t count = 0;
    if (!(fields >> bitstring >> count) || count == 0) {
      throw std::invalid_argument("malformed shot line: " + line);
    }
    const FockState s = from_bitstring(bitstring);
    if (shots.n_qubits == 0) shots.n_qubits = s.n_orbitals;
    if (s.n_orbitals != shots.n_qubits) throw std::invalid_argument("shot width mismatch");
    shots.add(s.bits, count);
  }
  return shots;
}

}  // namespace laughlin
