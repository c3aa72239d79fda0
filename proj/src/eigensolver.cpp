// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

namespace laughlin {

double SectorVector::norm() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

void SectorVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  for (auto& a : amplitudes) a /= n;
}

SectorVector basis_vector(const SectorBasisPtr& basis, const FockState& s) {
  const auto idx = basis->index_of(s);
  if (!idx) throw std::invalid_argument("state " + to_bitstring(s) + " is not in the sector");
  SectorVector v{basis, std::vector<Complex>(basis->size())};
  v.amplitudes[*idx] = 1.0;
  return v;
}

namespace {

void require_same_basis(const SectorVector& a, const SectorVector& b) {
  if (!a.basis || !b.basis || !(*a.basis == *b.basis) || a.size() != b.size()) {
    throw std::invalid_argument("vectors live in different sector bases");
  }
}

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd apply(const SparseOperator& op, const VectorXd& x) {
  VectorXd y(x.size());
  op.multiply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
              std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  return y;
}

SectorVector to_sector(const SectorBasisPtr& basis, const VectorXd& x) {
  SectorVector v{basis, std::vector<Complex>(static_cast<std::size_t>(x.size()))};
  for (Eigen::Index i = 0; i < x.size(); ++i) v.amplitudes[static_cast<std::size_t>(i)] = x[i];
  return v;
}

MatrixXd dense_matrix(const SparseOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  MatrixXd h = MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (std::size_t p = op.row_ptr()[r]; p < op.row_ptr()[r + 1]; ++p) {
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(op.cols()[p])) = op.values()[p];
    }
  }
  return h;
}

// Orthogonalizes w against the columns of `basis` (first `count` of them),
// twice for numerical safety.
void orthogonalize(VectorXd& w, const MatrixXd& basis, Eigen::Index count) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const VectorXd coeff = basis.leftCols(count).transpose() * w;
    w.noalias() -= basis.leftCols(count) * coeff;
  }
}

struct LanczosPair {
  double value;
  VectorXd vector;
  double residual;
};

// Lowest eigenpair of op restricted to the orthogonal complement of `locked`.
LanczosPair lanczos_lowest(const SparseOperator& op, const MatrixXd& locked, Eigen::Index n_locked,
                           VectorXd start, double tol, const EigenOptions& options) {
  const auto dim = static_cast<Eigen::Index>(op.dim());
  const Eigen::Index krylov =
      std::min<Eigen::Index>(static_cast<Eigen::Index>(options.max_krylov), dim - n_locked);
  double best_residual = std::numeric_limits<double>::infinity();

  orthogonalize(start, locked, n_locked);
  if (start.norm() == 0.0) throw std::invalid_argument("Lanczos start vector lies in locked space");
  start.normalize();

  MatrixXd v(dim, krylov);
  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[i] couples v_i and v_{i+1}
    v.col(0) = start;
    Eigen::Index steps = 0;
    VectorXd ritz_coeffs;
    double theta = 0.0;
    bool invariant = false;
    for (Eigen::Index j = 0; j < krylov; ++j) {
      VectorXd w = apply(op, v.col(j));
      const double a = v.col(j).dot(w);
      alpha.push_back(a);
      // Both sets in each pass: a single sweep against v alone reintroduces
      // locked components that then grow from step to step.
      for (int pass = 0; pass < 2; ++pass) {
        w.noalias() -= locked.leftCols(n_locked) * (locked.leftCols(n_locked).transpose() * w);
        w.noalias() -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      }
      const double b = w.norm();
      steps = j + 1;

      const bool check = (steps % 5 == 0) || steps == krylov || b <= tol * 1e-3;
      if (check) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> tri;
        VectorXd diag = Eigen::Map<VectorXd>(alpha.data(), steps);
        VectorXd sub = steps > 1 ? VectorXd(Eigen::Map<VectorXd>(beta.data(), steps - 1))
                                 : VectorXd(0);
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        theta = tri.eigenvalues()[0];
        ritz_coeffs = tri.eigenvectors().col(0);
        const double estimate = b * std::abs(ritz_coeffs[steps - 1]);
        if (b <= tol * 1e-3) invariant = true;
        if (estimate <= 0.1 * tol || invariant) break;
      }
      if (j + 1 < krylov) {
        beta.push_back(b);
        v.col(j + 1) = w / b;
      }
    }
    VectorXd x = v.leftCols(steps) * ritz_coeffs;
    orthogonalize(x, locked, n_locked);
    x.normalize();
    const double rq = x.dot(apply(op, x));
    const double residual = (apply(op, x) - rq * x).norm();
    best_residual = std::min(best_residual, residual);
    if (residual <= tol) return {rq, x, residual};
    start = x;
    (void)theta;
  }
  throw ConvergenceError("Lanczos did not converge within the restart budget", best_residual);
}

VectorXd random_start(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  VectorXd x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) x[i] = uni(rng);
  return x;
}

void fill_ground_space(EigenResult& result, double degeneracy_tol) {
  const double e0 = result.eigenvalues.front();
  const double gap_tol = degeneracy_tol * std::max(result.norm_inf, 1e-300);
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
    if (result.eigenvalues[i] - e0 <= gap_tol) result.ground_space.push_back(result.eigenvectors[i]);
  }
}

EigenResult dense_lowest(const SparseOperator& op, std::size_t count, const EigenOptions& options) {
  const MatrixXd h = dense_matrix(op);
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::numeric_limits<double>::infinity());
  }
  EigenResult result;
  result.method = "dense";
  result.norm_inf = op.norm_inf();
  const auto n = static_cast<std::size_t>(h.rows());
  const double gap_tol = options.degeneracy_tol * std::max(result.norm_inf, 1e-300);
  const double e0 = solver.eigenvalues()[0];
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const bool in_ground = solver.eigenvalues()[ii] - e0 <= gap_tol;
    if (i < count) {
      const VectorXd x = solver.eigenvectors().col(ii);
      result.eigenvalues.push_back(solver.eigenvalues()[ii]);
      result.eigenvectors.push_back(to_sector(op.basis(), x));
      result.residuals.push_back((h * x - solver.eigenvalues()[ii] * x).norm());
    }
    if (in_ground) {
      result.ground_space.push_back(to_sector(op.basis(), solver.eigenvectors().col(ii)));
    } else if (i >= count) {
      break;
    }
  }
  return result;
}

EigenResult lanczos_lowest_k(const SparseOperator& op, std::size_t count,
                             const EigenOptions& options) {
  const auto dim = static_cast<Eigen::Index>(op.dim());
  EigenResult result;
  result.method = "lanczos";
  result.norm_inf = op.norm_inf();
  const double tol = options.residual_tol * std::max(result.norm_inf, 1e-300);

  MatrixXd locked(dim, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    VectorXd start;
    if (i == 0 && options.start) {
      if (options.start->size() != op.dim()) {
        throw std::invalid_argument("Lanczos start vector has the wrong dimension");
      }
      start = Eigen::Map<const VectorXd>(options.start->data(), dim);
    } else {
      start = random_start(dim, options.seed + i);
    }
    const auto pair = lanczos_lowest(op, locked, static_cast<Eigen::Index>(i), start, tol, options);
    locked.col(static_cast<Eigen::Index>(i)) = pair.vector;
    result.eigenvalues.push_back(pair.value);
    result.eigenvectors.push_back(to_sector(op.basis(), pair.vector));
    result.residuals.push_back(pair.residual);
  }
  // Deflation may converge out of order when the start misses a component.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.eigenvalues[a] < result.eigenvalues[b];
  });
  EigenResult sorted = result;
  for (std::size_t i = 0; i < count; ++i) {
    sorted.eigenvalues[i] = result.eigenvalues[order[i]];
    sorted.eigenvectors[i] = result.eigenvectors[order[i]];
    sorted.residuals[i] = result.residuals[order[i]];
  }
  fill_ground_space(sorted, options.degeneracy_tol);
  return sorted;
}

}  // namespace

Complex inner(const SectorVector& a, const SectorVector& b) {
  require_same_basis(a, b);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return acc;
}

double fidelity(const SectorVector& a, const SectorVector& b) {
  return std::min(1.0, std::abs(inner(a, b)));
}

EigenResult lowest_k(const SparseOperator& op, std::size_t count, const EigenOptions& options) {
  if (op.dim() == 0) throw std::invalid_argument("eigensolver needs a nonempty basis");
  if (count == 0 || count > op.dim()) {
    throw std::invalid_argument("requested eigenpair count out of range");
  }
  if (op.dim() <= options.dense_limit) return dense_lowest(op, count, options);
  return lanczos_lowest_k(op, count, options);
}

EigenResult ground_state(const SparseOperator& op, const EigenOptions& options) {
  return lowest_k(op, 1, options);
}

double ground_fidelity(const SectorVector& v, const EigenResult& result) {
  double sum = 0.0;
  for (const auto& g : result.ground_space) sum += std::norm(inner(g, v));
  return std::min(1.0, std::sqrt(sum));
}

double ground_space_fidelity(const EigenResult& a, const EigenResult& b) {
  const auto na = static_cast<Eigen::Index>(a.ground_space.size());
  const auto nb = static_cast<Eigen::Index>(b.ground_space.size());
  Eigen::MatrixXcd overlap(na, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      overlap(i, j) = inner(a.ground_space[static_cast<std::size_t>(i)],
                            b.ground_space[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
  return std::min(1.0, svd.singularValues()[0]);
}

std::vector<double> root_biased_start(const SectorBasis& basis, const FockState& root,
                                      double admixture, std::uint64_t seed) {
  const auto idx = basis.index_of(root);
  if (!idx) throw std::invalid_argument("root state is not in the sector");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(basis.size());
  for (auto& a : x) a = admixture * uni(rng);
  x[*idx] += 1.0;
  return x;
}

void write_report(std::ostream& out, const EigenResult& result) {
  out << "# basis " << (result.eigenvectors.empty() || !result.eigenvectors.front().basis
                            ? std::string("?")
                            : result.eigenvectors.front().basis->describe())
      << '\n';
  out << "# method " << result.method << '\n';
  out << "# norm_inf " << std::setprecision(17) << result.norm_inf << '\n';
  out << "# ground_degeneracy " << result.ground_space.size() << '\n';
  out << "# index eigenvalue residual\n";
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
    out << i << ' ' << std::setprecision(17) << result.eigenvalues[i] << ' '
        << std::setprecision(6) << result.residuals[i] << '\n';
  }
}

}  // namespace laughlin
