// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace laughlin {

double DensityProfile::total() const noexcept {
  double s = 0.0;
  for (double x : values) s += x;
  return s;
}

namespace {

// Accumulates |amp|^2-weighted occupations; shared by both state kinds.
struct Moments {
  int n;
  std::vector<double> first;
  std::vector<double> second;

  explicit Moments(int n_orbitals)
      : n(n_orbitals),
        first(static_cast<std::size_t>(n_orbitals)),
        second(static_cast<std::size_t>(n_orbitals) * static_cast<std::size_t>(n_orbitals)) {}

  void add(Bits bits, double w, bool pairs) {
    if (w == 0.0) return;
    for (Bits b = bits; b != 0; b &= b - 1) {
      const int i = std::countr_zero(b);
      first[static_cast<std::size_t>(i)] += w;
      if (!pairs) continue;
      for (Bits c = bits; c != 0; c &= c - 1) {
        const int j = std::countr_zero(c);
        second[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] += w;
      }
    }
  }

  [[nodiscard]] CorrelationMatrix correlation() const {
    CorrelationMatrix c{n, std::vector<double>(second.size())};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        c.at(i, j) = second[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(j)] -
                     first[static_cast<std::size_t>(i)] * first[static_cast<std::size_t>(j)];
      }
    }
    return c;
  }
};

Moments moments(const SectorVector& v, bool pairs) {
  Moments m(v.basis->n_orbitals());
  for (std::size_t a = 0; a < v.size(); ++a) m.add(v.basis->states()[a], std::norm(v.amplitudes[a]), pairs);
  return m;
}

Moments moments(const FullStateVector& psi, bool pairs) {
  Moments m(psi.n_qubits);
  for (std::size_t a = 0; a < psi.amplitudes.size(); ++a) m.add(a, std::norm(psi.amplitudes[a]), pairs);
  return m;
}

}  // namespace

DensityProfile density(const SectorVector& v) { return {moments(v, false).first}; }
CorrelationMatrix correlation(const SectorVector& v) { return moments(v, true).correlation(); }
DensityProfile density(const FullStateVector& psi) { return {moments(psi, false).first}; }
CorrelationMatrix correlation(const FullStateVector& psi) { return moments(psi, true).correlation(); }

std::vector<std::optional<double>> site_avg_correlation(const CorrelationMatrix& c, int lo, int hi) {
  if (lo < 0 || hi >= c.n || lo >= hi) throw std::invalid_argument("site window must satisfy 0 <= lo < hi < n");
  std::vector<std::optional<double>> out(static_cast<std::size_t>(c.n));
  for (int d = 0; d < c.n; ++d) {
    double sum = 0.0;
    int count = 0;
    for (int j = lo; j + d <= hi; ++j) {
      sum += c.at(j, j + d);
      ++count;
    }
    if (count > 0) out[static_cast<std::size_t>(d)] = sum / count;
  }
  return out;
}

double entanglement_entropy(const SectorVector& v, int cut) {
  const int n = v.basis->n_orbitals();
  if (cut <= 0 || cut >= n) throw std::invalid_argument("cut must lie strictly inside the chain");
  const Bits left_mask = (Bits{1} << cut) - 1;
  // Creation operators are ordered by ascending orbital, so left orbitals come
  // first and the coefficient matrix needs no sign fix-up. Blocks are labelled
  // by the left particle number.
  struct Block {
    std::map<Bits, Eigen::Index> rows;
    std::map<Bits, Eigen::Index> cols;
    std::vector<std::tuple<Bits, Bits, Complex>> entries;
  };
  std::map<int, Block> blocks;
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v.amplitudes[a] == Complex{}) continue;
    const Bits s = v.basis->states()[a];
    const Bits l = s & left_mask;
    const Bits r = s >> cut;
    auto& b = blocks[std::popcount(l)];
    b.rows.emplace(l, 0);
    b.cols.emplace(r, 0);
    b.entries.emplace_back(l, r, v.amplitudes[a]);
  }
  double entropy = 0.0;
  for (auto& [charge, b] : blocks) {
    Eigen::Index i = 0;
    for (auto& [k, idx] : b.rows) idx = i++;
    Eigen::Index j = 0;
    for (auto& [k, idx] : b.cols) idx = j++;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(i, j);
    for (const auto& [l, r, amp] : b.entries) m(b.rows[l], b.cols[r]) = amp;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      const double p = svd.singularValues()[k] * svd.singularValues()[k];
      if (p > 1e-300) entropy -= p * std::log(p);
    }
  }
  return std::max(0.0, entropy);
}

KrylovDimension krylov_dimension(const std::vector<TermInstance>& terms, const FockState& root) {
  const int n = root.n_orbitals;
  const int ne = std::popcount(root.bits);
  const auto geometry = SystemGeometry::nonstandard(ne, n, 1.0);
  const auto sector = enumerate_sector(geometry, center_of_mass(root), GeometryCheck::allow_nonstandard);

  std::unordered_set<Bits> seen{root.bits};
  std::vector<Bits> frontier{root.bits};
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (Bits s : frontier) {
      const FockState state{s, n};
      for (const auto& t : terms) {
        if (t.diagonal()) continue;
        for (const auto& act : {apply_term(t, state), apply_term_adjoint(t, state)}) {
          if (act && seen.insert(act->target.bits).second) next.push_back(act->target.bits);
        }
      }
    }
    frontier = std::move(next);
  }
  const auto exact_sum = [](Bits bits) {
    long sum = 0;
    for (Bits b = bits; b != 0; b &= b - 1) sum += std::countr_zero(b);
    return sum;
  };
  const long root_sum = exact_sum(root.bits);
  const auto block = static_cast<std::size_t>(
      std::count_if(sector->states().begin(), sector->states().end(),
                    [&](Bits b) { return exact_sum(b) == root_sum; }));
  return {seen.size(), sector->size(), block};
}

void write_density_csv(std::ostream& out, const DensityProfile& d, const std::vector<Interval>& ci) {
  out << "j,value,ci_lo,ci_hi\n" << std::setprecision(12);
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    out << j << ',' << d.values[j] << ',';
    if (j < ci.size()) out << ci[j].lo << ',' << ci[j].hi;
    else out << ',';
    out << '\n';
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& c, bool upper_zeroed) {
  out << std::setprecision(12);
  for (int i = 0; i < c.n; ++i) {
    for (int j = 0; j < c.n; ++j) {
      if (j > 0) out << ',';
      out << ((upper_zeroed && i <= j) ? 0.0 : c.at(i, j));
    }
    out << '\n';
  }
}

void write_cd_csv(std::ostream& out, const std::vector<std::optional<double>>& cd,
                  const std::vector<std::optional<Interval>>& ci) {
  out << "d,value,ci_lo,ci_hi\n" << std::setprecision(12);
  for (std::size_t d = 0; d < cd.size(); ++d) {
    if (!cd[d]) continue;
    out << d << ',' << *cd[d] << ',';
    if (d < ci.size() && ci[d]) out << ci[d]->lo << ',' << ci[d]->hi;
    else out << ',';
    out << '\n';
  }
}

}  // namespace laughlin
