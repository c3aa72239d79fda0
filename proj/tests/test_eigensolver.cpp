// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "laughlin/eigensolver.hpp"
#include "oracle/dense_fermion.hpp"

using namespace laughlin;

namespace {

struct Problem {
  SystemGeometry geometry;
  SectorBasisPtr basis;
  SparseOperator h;
};

Problem make_problem(int ne, double ly, const Truncation& t = Truncation::full()) {
  const auto g = SystemGeometry::laughlin(ne, ly);
  const auto b = cdw_sector(g);
  return {g, b, assemble_hamiltonian(b, g, t)};
}

EigenOptions lanczos_only() {
  EigenOptions o;
  o.dense_limit = 0;
  return o;
}

}  // namespace

TEST(Eigensolver, DenseMatchesKroneckerOracleAtFourElectrons) {
  const auto p = make_problem(4, 10.0);
  const auto full = oracle::hamiltonian(build_terms(p.geometry, Truncation::full()), p.geometry.n_orbitals);
  const oracle::Mat ref = oracle::project(full, *p.basis);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> solver(ref);
  const auto r = lowest_k(p.h, 3);
  EXPECT_EQ(r.method, "dense");
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.eigenvalues[static_cast<std::size_t>(i)], solver.eigenvalues()[i], 1e-9);
  }
  EXPECT_NEAR(solver.eigenvalues()[0], 0.0, 1e-10 * p.h.norm_inf());
}

TEST(Eigensolver, LanczosMatchesDense) {
  for (int ne : {5, 6}) {
    const auto p = make_problem(ne, 10.0);
    const auto dense = lowest_k(p.h, 4);
    const auto lz = lowest_k(p.h, 4, lanczos_only());
    EXPECT_EQ(lz.method, "lanczos");
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(lz.eigenvalues[i], dense.eigenvalues[i], 1e-7 * p.h.norm_inf()) << "N_e=" << ne;
      EXPECT_LT(lz.residuals[i], 1e-8 * p.h.norm_inf());
      EXPECT_GT(fidelity(lz.eigenvectors[i], dense.eigenvectors[i]), 1.0 - 1e-8);
    }
  }
}

TEST(Eigensolver, LanczosEigenvectorsAreOrthonormal) {
  const auto p = make_problem(6, 9.0);
  const auto r = lowest_k(p.h, 4, lanczos_only());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(std::abs(inner(r.eigenvectors[i], r.eigenvectors[j])), i == j ? 1.0 : 0.0, 1e-8);
    }
  }
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LE(r.eigenvalues[i - 1], r.eigenvalues[i]);
}

TEST(Eigensolver, RootBiasedStartReachesSameGround) {
  const auto p = make_problem(6, 10.0);
  auto o = lanczos_only();
  o.start = root_biased_start(*p.basis, cdw_state(p.geometry), 1e-6, o.seed);
  const auto biased = ground_state(p.h, o);
  const auto dense = ground_state(p.h);
  EXPECT_GT(fidelity(biased.ground(), dense.ground()), 1.0 - 1e-8);
  o.start = std::vector<double>(3, 1.0);
  EXPECT_THROW((void)ground_state(p.h, o), std::invalid_argument);
}

TEST(Eigensolver, PositiveSemidefiniteWithZeroMode) {
  for (int ne : {3, 4, 5, 6}) {
    for (double ly : {4.0, 8.0, 12.0}) {
      const auto p = make_problem(ne, ly);
      const auto r = ground_state(p.h);
      EXPECT_GE(r.ground_energy(), -1e-10 * p.h.norm_inf()) << ne << " " << ly;
      EXPECT_LE(r.ground_energy(), 1e-8 * p.h.norm_inf()) << ne << " " << ly;
    }
  }
}

TEST(Eigensolver, ThinCylinderGroundIsTheRoot) {
  const auto p = make_problem(5, 1.5);
  const auto r = ground_state(p.h);
  EXPECT_GT(fidelity(r.ground(), basis_vector(p.basis, cdw_state(p.geometry))), 0.999);
}

TEST(Eigensolver, GroundSpaceCollectsDegenerateLevels) {
  // Extra flux makes room for zero-energy quasiholes: several zero modes in one sector.
  const auto g = SystemGeometry::nonstandard(3, 9, 6.0);
  const auto b = enumerate_sector(g, 3, GeometryCheck::allow_nonstandard);
  const auto h = assemble(b, build_terms(g, Truncation::full()));
  const auto r = lowest_k(h, 4);
  std::size_t zeros = 0;
  for (double e : r.eigenvalues) zeros += e < 1e-10 * h.norm_inf() ? 1 : 0;
  EXPECT_GE(zeros, 2u);
  EXPECT_EQ(r.ground_space.size() >= zeros, true);
  EXPECT_NEAR(ground_space_fidelity(r, r), 1.0, 1e-12);
  for (const auto& v : r.ground_space) EXPECT_NEAR(ground_fidelity(v, r), 1.0, 1e-12);
}

TEST(Eigensolver, FidelityIsPhaseInsensitive) {
  const auto p = make_problem(3, 8.0);
  SectorVector a = basis_vector(p.basis, cdw_state(p.geometry));
  SectorVector b = a;
  for (auto& x : b.amplitudes) x *= Complex(0.0, -1.0);
  EXPECT_NEAR(fidelity(a, b), 1.0, 1e-15);
  SectorVector z{p.basis, std::vector<Complex>(p.basis->size())};
  EXPECT_THROW(z.normalize(), std::invalid_argument);
  const auto other = cdw_sector(SystemGeometry::laughlin(4, 8.0));
  EXPECT_THROW((void)inner(a, SectorVector{other, std::vector<Complex>(other->size())}),
               std::invalid_argument);
  EXPECT_THROW((void)basis_vector(p.basis, make_state(0b1, 7)), std::invalid_argument);
}

TEST(Eigensolver, RejectsBadCounts) {
  const auto p = make_problem(3, 8.0);
  EXPECT_THROW((void)lowest_k(p.h, 0), std::invalid_argument);
  EXPECT_THROW((void)lowest_k(p.h, p.h.dim() + 1), std::invalid_argument);
}

TEST(Eigensolver, ReportsConvergenceFailure) {
  const auto p = make_problem(6, 10.0);
  auto o = lanczos_only();
  o.max_krylov = 3;
  o.max_restarts = 1;
  try {
    (void)ground_state(p.h, o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Eigensolver, RootBiasedStart) {
  const auto p = make_problem(4, 8.0);
  const auto x = root_biased_start(*p.basis, cdw_state(p.geometry), 1e-3, 5);
  const auto idx = *p.basis->index_of(cdw_state(p.geometry));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == idx) {
      EXPECT_NEAR(x[i], 1.0, 1e-3);
    } else {
      EXPECT_LE(std::abs(x[i]), 1e-3);
    }
  }
  EXPECT_EQ(x, root_biased_start(*p.basis, cdw_state(p.geometry), 1e-3, 5));
}

TEST(Eigensolver, WriteReport) {
  const auto p = make_problem(3, 8.0);
  std::ostringstream out;
  write_report(out, lowest_k(p.h, 2));
  const auto text = out.str();
  EXPECT_NE(text.find("# basis N_phi=7 N=3"), std::string::npos);
  EXPECT_NE(text.find("# method dense"), std::string::npos);
  EXPECT_NE(text.find("\n1 "), std::string::npos);
}
