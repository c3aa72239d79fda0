// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace laughlin {

double pseudopotential(int k, int m, double l_y) {
  if (!(k > m && m >= 0)) {
    throw std::invalid_argument("pseudopotential requires k > m >= 0");
  }
  if (!(l_y > 0.0)) throw std::invalid_argument("circumference must be positive");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double kk = static_cast<double>(k) * k;
  const double mm = static_cast<double>(m) * m;
  return 16.0 * pi2 / l_y * (kk - mm) * std::exp(-2.0 * pi2 * (kk + mm) / (l_y * l_y));
}

std::string to_string(const TermFamily& f) {
  return std::to_string(f.k) + std::to_string(f.m);
}

TermFamily parse_family(const std::string& text) {
  // "21", "U21", "V31", or "k:m" for multi-digit indices.
  std::string s = text;
  if (!s.empty() && (s[0] == 'U' || s[0] == 'V' || s[0] == 'u' || s[0] == 'v')) s.erase(0, 1);
  TermFamily f;
  if (const auto comma = s.find(':'); comma != std::string::npos) {
    f.k = std::stoi(s.substr(0, comma));
    f.m = std::stoi(s.substr(comma + 1));
  } else if (s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])) &&
             std::isdigit(static_cast<unsigned char>(s[1]))) {
    f.k = s[0] - '0';
    f.m = s[1] - '0';
  } else {
    throw std::invalid_argument("cannot parse term family '" + text + "'");
  }
  if (!(f.k > f.m && f.m >= 0)) {
    throw std::invalid_argument("term family requires k > m >= 0: '" + text + "'");
  }
  return f;
}

Truncation Truncation::max_range(int r) {
  if (r < 1) throw std::invalid_argument("truncation range must be >= 1");
  return Truncation(Kind::max_range, r, {});
}

Truncation Truncation::families(std::vector<TermFamily> families) {
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());
  for (const auto& f : families) {
    if (!(f.k > f.m && f.m >= 0)) throw std::invalid_argument("family requires k > m >= 0");
  }
  return Truncation(Kind::families, 0, std::move(families));
}

Truncation Truncation::effective() {
  return families({{1, 0}, {2, 0}, {3, 0}, {2, 1}, {3, 1}});
}

bool Truncation::keeps(const TermFamily& f) const {
  switch (kind_) {
    case Kind::full:
      return true;
    case Kind::max_range:
      return f.range() <= max_range_;
    case Kind::families:
      return std::binary_search(families_.begin(), families_.end(), f);
  }
  return false;
}

std::string Truncation::describe() const {
  switch (kind_) {
    case Kind::full:
      return "full";
    case Kind::max_range:
      return "range:" + std::to_string(max_range_);
    case Kind::families: {
      std::string out = "families:";
      for (std::size_t i = 0; i < families_.size(); ++i) {
        if (i) out += ',';
        out += to_string(families_[i]);
      }
      return out;
    }
  }
  return {};
}

namespace {

// Families with k > m >= 0 that fit in n orbitals, ordered by (k+m, k).
std::vector<TermFamily> admissible_families(int n_orbitals) {
  std::vector<TermFamily> out;
  for (int r = 1; r <= n_orbitals - 1; ++r) {
    for (int k = (r / 2) + 1; k <= r; ++k) {
      out.push_back({k, r - k});
    }
  }
  return out;
}

inline int parity_below(Bits bits, int orbital) noexcept {
  return std::popcount(bits & ((Bits{1} << orbital) - 1)) & 1;
}

// Applies one elementary operator; returns false when the result vanishes.
inline bool annihilate(Bits& bits, int orbital, int& sign) noexcept {
  const Bits mask = Bits{1} << orbital;
  if (!(bits & mask)) return false;
  if (parity_below(bits, orbital)) sign = -sign;
  bits ^= mask;
  return true;
}

inline bool create(Bits& bits, int orbital, int& sign) noexcept {
  const Bits mask = Bits{1} << orbital;
  if (bits & mask) return false;
  if (parity_below(bits, orbital)) sign = -sign;
  bits ^= mask;
  return true;
}

void check_instance(const TermInstance& t, int n_orbitals) {
  if (t.j < 0 || t.j + t.k + t.m > n_orbitals - 1 || !(t.k > t.m && t.m >= 0)) {
    throw std::invalid_argument("term instance outside the orbital range");
  }
}

}  // namespace

CouplingTable coupling_table(const SystemGeometry& geometry, const Truncation& truncation) {
  CouplingTable table;
  table.circumference = geometry.circumference;
  table.truncation = truncation.describe();
  for (const auto& f : admissible_families(geometry.n_orbitals)) {
    if (truncation.keeps(f)) {
      table.entries.push_back({f.k, f.m, pseudopotential(f.k, f.m, geometry.circumference)});
    }
  }
  return table;
}

std::vector<TermInstance> build_terms(const SystemGeometry& geometry, const Truncation& truncation) {
  std::vector<TermInstance> terms;
  for (const auto& entry : coupling_table(geometry, truncation).entries) {
    for (int j = 0; j + entry.k + entry.m <= geometry.n_orbitals - 1; ++j) {
      terms.push_back({entry.k, entry.m, j, entry.value});
    }
  }
  return terms;
}

std::vector<TermInstance> family_instances(int n_orbitals, TermFamily family, int j_stride) {
  if (j_stride < 1) throw std::invalid_argument("j stride must be positive");
  std::vector<TermInstance> out;
  for (int j = 0; j + family.k + family.m <= n_orbitals - 1; j += j_stride) {
    out.push_back({family.k, family.m, j, 1.0});
  }
  return out;
}

std::optional<TermAction> apply_term(const TermInstance& t, const FockState& s) {
  Bits bits = s.bits;
  int sign = 1;
  if (!annihilate(bits, t.j, sign)) return std::nullopt;
  if (!annihilate(bits, t.j + t.k + t.m, sign)) return std::nullopt;
  if (!create(bits, t.j + t.k, sign)) return std::nullopt;
  if (!create(bits, t.j + t.m, sign)) return std::nullopt;
  return TermAction{FockState{bits, s.n_orbitals}, sign};
}

std::optional<TermAction> apply_term_adjoint(const TermInstance& t, const FockState& s) {
  Bits bits = s.bits;
  int sign = 1;
  if (!annihilate(bits, t.j + t.m, sign)) return std::nullopt;
  if (!annihilate(bits, t.j + t.k, sign)) return std::nullopt;
  if (!create(bits, t.j + t.k + t.m, sign)) return std::nullopt;
  if (!create(bits, t.j, sign)) return std::nullopt;
  return TermAction{FockState{bits, s.n_orbitals}, sign};
}

SparseOperator::SparseOperator(SectorBasisPtr basis, std::vector<std::size_t> row_ptr,
                               std::vector<std::size_t> cols, std::vector<double> values)
    : basis_(std::move(basis)),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      values_(std::move(values)) {
  if (!basis_ || row_ptr_.size() != basis_->size() + 1 || cols_.size() != values_.size() ||
      row_ptr_.back() != values_.size()) {
    throw std::invalid_argument("inconsistent CSR layout");
  }
}

double SparseOperator::entry(std::size_t row, std::size_t col) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

double SparseOperator::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
    double sum = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) sum += std::abs(values_[p]);
    best = std::max(best, sum);
  }
  return best;
}

void SparseOperator::multiply(std::span<const double> x, std::span<double> y) const {
  const auto n = static_cast<std::ptrdiff_t>(dim());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

void SparseOperator::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  const auto n = static_cast<std::ptrdiff_t>(dim());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

SparseOperator assemble(const SectorBasisPtr& basis, const std::vector<TermInstance>& terms,
                        bool hermitize) {
  if (!basis) throw std::invalid_argument("assemble requires a basis");
  const int n_orbitals = basis->n_orbitals();
  for (const auto& t : terms) check_instance(t, n_orbitals);

  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Triplet> triplets;
  const std::size_t dim = basis->size();
  for (std::size_t col = 0; col < dim; ++col) {
    const FockState s = basis->state(col);
    for (const auto& t : terms) {
      const auto action = apply_term(t, s);
      if (!action) continue;
      const auto row = basis->index_of(action->target);
      if (!row) {
        throw std::logic_error("term left the symmetry sector; basis is inconsistent");
      }
      const double v = t.coefficient * action->sign;
      triplets.push_back({*row, col, v});
      if (hermitize && !t.diagonal()) triplets.push_back({col, *row, v});
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<std::size_t> row_ptr(dim + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> values;
  cols.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    const std::size_t r = triplets[i].row;
    const std::size_t c = triplets[i].col;
    double sum = 0.0;
    for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) {
      sum += triplets[i].value;
    }
    cols.push_back(c);
    values.push_back(sum);
    ++row_ptr[r + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) row_ptr[r + 1] += row_ptr[r];
  return SparseOperator(basis, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseOperator assemble_hamiltonian(const SectorBasisPtr& basis, const SystemGeometry& geometry,
                                    const Truncation& truncation) {
  if (basis->n_orbitals() != geometry.n_orbitals) {
    throw std::invalid_argument("basis and geometry disagree on the orbital count");
  }
  return assemble(basis, build_terms(geometry, truncation), true);
}

void matvec(const SparseOperator& op, std::span<const Complex> v, std::span<Complex> y) {
  if (v.size() != op.dim() || y.size() != op.dim()) {
    throw std::invalid_argument("matvec dimension mismatch");
  }
  op.multiply(v, y);
}

std::vector<Complex> matvec(const SparseOperator& op, std::span<const Complex> v) {
  std::vector<Complex> y(op.dim());
  matvec(op, v, y);
  return y;
}

double expectation(const SparseOperator& op, std::span<const Complex> v) {
  const auto hv = matvec(op, v);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * hv[i];
  return acc.real();
}

void write_terms(std::ostream& out, const std::vector<TermInstance>& terms) {
  out << "# k m j coefficient\n";
  for (const auto& t : terms) {
    out << t.k << ' ' << t.m << ' ' << t.j << ' ' << std::setprecision(17) << t.coefficient
        << '\n';
  }
}

}  // namespace laughlin
