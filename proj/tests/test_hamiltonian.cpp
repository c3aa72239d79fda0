// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "laughlin/hamiltonian.hpp"
#include "oracle/dense_fermion.hpp"

using namespace laughlin;

namespace {

double oracle_element(const oracle::SpMat& op, Bits row, Bits col) {
  return std::real(oracle::Mat(op)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
}

}  // namespace

TEST(Pseudopotential, ClosedForm) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double ly = 10.0;
  EXPECT_NEAR(pseudopotential(1, 0, ly), 16 * pi2 / ly * std::exp(-2 * pi2 / 100), 1e-12);
  EXPECT_NEAR(pseudopotential(2, 1, ly), 16 * pi2 / ly * 3 * std::exp(-2 * pi2 * 5 / 100), 1e-12);
  EXPECT_NEAR(pseudopotential(3, 1, 7.5), 16 * pi2 / 7.5 * 8 * std::exp(-2 * pi2 * 10 / 56.25),
              1e-12);
}

TEST(Pseudopotential, RejectsBadIndices) {
  EXPECT_THROW((void)pseudopotential(1, 1, 10), std::invalid_argument);
  EXPECT_THROW((void)pseudopotential(1, 2, 10), std::invalid_argument);
  EXPECT_THROW((void)pseudopotential(2, -1, 10), std::invalid_argument);
  EXPECT_THROW((void)pseudopotential(2, 1, 0), std::invalid_argument);
}

TEST(Pseudopotential, DecaysWithRangeOnThinCylinder) {
  // Away from the thin limit V_20 > V_10 at L_y=10; the ordering is a thin-cylinder property.
  const double ly = 4.0;
  EXPECT_GT(pseudopotential(1, 0, ly), pseudopotential(2, 0, ly));
  EXPECT_GT(pseudopotential(2, 0, ly), pseudopotential(2, 1, ly));
  EXPECT_GT(pseudopotential(2, 1, ly), pseudopotential(3, 0, ly));
  EXPECT_GT(pseudopotential(3, 0, ly), pseudopotential(3, 1, ly));
  EXPECT_GT(pseudopotential(2, 0, 10.0), pseudopotential(1, 0, 10.0));
}

TEST(TermFamily, Parse) {
  EXPECT_EQ(parse_family("21"), (TermFamily{2, 1}));
  EXPECT_EQ(parse_family("U30"), (TermFamily{3, 0}));
  EXPECT_EQ(parse_family("V31"), (TermFamily{3, 1}));
  EXPECT_EQ(parse_family("12:3"), (TermFamily{12, 3}));
  EXPECT_EQ(to_string(TermFamily{4, 0}), "40");
  EXPECT_THROW((void)parse_family("12"), std::invalid_argument);
  EXPECT_THROW((void)parse_family("x"), std::invalid_argument);
}

TEST(Truncation, Keeps) {
  const auto r3 = Truncation::max_range(3);
  EXPECT_TRUE(r3.keeps({2, 1}));
  EXPECT_TRUE(r3.keeps({3, 0}));
  EXPECT_FALSE(r3.keeps({3, 1}));
  const auto eff = Truncation::effective();
  for (auto f : {TermFamily{1, 0}, {2, 0}, {3, 0}, {2, 1}, {3, 1}}) EXPECT_TRUE(eff.keeps(f));
  EXPECT_FALSE(eff.keeps({4, 0}));
  EXPECT_FALSE(eff.keeps({3, 2}));
  EXPECT_EQ(eff.describe(), "families:10,20,21,30,31");
  EXPECT_EQ(Truncation::thin_torus().describe(), "range:3");
  EXPECT_THROW((void)Truncation::max_range(0), std::invalid_argument);
}

TEST(Terms, OrderedByRangeThenKThenJ) {
  const auto g = SystemGeometry::laughlin(3, 10.0);  // 7 orbitals
  const auto terms = build_terms(g, Truncation::max_range(4));
  ASSERT_FALSE(terms.empty());
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const auto& a = terms[i - 1];
    const auto& b = terms[i];
    const auto key = [](const TermInstance& t) { return std::tuple(t.k + t.m, t.k, t.j); };
    EXPECT_LT(key(a), key(b));
  }
  // families 10,20,21,30,31,40 with 6,5,4,4,3,3 placements
  EXPECT_EQ(terms.size(), 25u);
  EXPECT_EQ(terms.front().k, 1);
  EXPECT_NEAR(terms.front().coefficient, pseudopotential(1, 0, 10.0), 0.0);
}

TEST(Terms, FullCoversEveryAdmissibleFamily) {
  const auto g = SystemGeometry::laughlin(3, 10.0);
  const auto table = coupling_table(g, Truncation::full());
  // k > m >= 0, k + m <= 6
  EXPECT_EQ(table.entries.size(), 12u);
  for (const auto& e : table.entries) EXPECT_LE(e.k + e.m, 6);
}

TEST(Terms, FamilyInstancesWithStride) {
  const auto every = family_instances(16, {2, 1});
  EXPECT_EQ(every.size(), 13u);
  const auto squeezed = family_instances(16, {2, 1}, 3);
  ASSERT_EQ(squeezed.size(), 5u);
  for (std::size_t n = 0; n < squeezed.size(); ++n) EXPECT_EQ(squeezed[n].j, 3 * static_cast<int>(n));
  EXPECT_THROW((void)family_instances(16, {2, 1}, 0), std::invalid_argument);
}

TEST(Terms, SingleTermActionMatchesOracle) {
  const int n = 7;
  for (auto fam : {TermFamily{1, 0}, {2, 1}, {3, 1}, {3, 2}, {4, 0}}) {
    for (const auto& t : family_instances(n, fam)) {
      const auto op = oracle::term_operator(t.k, t.m, t.j, n);
      const oracle::Mat dense(op);
      for (Bits x = 0; x < (Bits{1} << n); ++x) {
        const auto act = apply_term(t, make_state(x, n));
        const auto col = dense.col(static_cast<Eigen::Index>(x));
        if (!act) {
          EXPECT_NEAR(col.norm(), 0.0, 1e-14);
          continue;
        }
        EXPECT_NEAR(std::real(col[static_cast<Eigen::Index>(act->target.bits)]), act->sign, 1e-14)
            << to_string(fam) << " j=" << t.j << " x=" << x;
        EXPECT_NEAR(col.norm(), 1.0, 1e-14);
        const auto back = apply_term_adjoint(t, act->target);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(back->target.bits, x);
        EXPECT_EQ(back->sign, act->sign);
      }
    }
  }
}

TEST(Terms, DiagonalTermIsDensityDensity) {
  const int n = 6;
  const auto op = oracle::term_operator(2, 0, 1, n);
  const oracle::SpMat nn = oracle::number(1, n) * oracle::number(3, n);
  EXPECT_NEAR(oracle::Mat(op - nn).norm(), 0.0, 1e-14);
  EXPECT_NEAR(oracle_element(op, 0b1010, 0b1010), 1.0, 1e-14);
}

TEST(Hamiltonian, SectorMatrixMatchesOracle) {
  for (int ne : {3, 4}) {
    const auto g = SystemGeometry::laughlin(ne, 7.0);
    const auto terms = build_terms(g, Truncation::full());
    const auto full = oracle::hamiltonian(terms, g.n_orbitals);
    for (int com : {0, center_of_mass(cdw_state(g))}) {
      const auto b = enumerate_sector(g, com);
      const auto h = assemble(b, terms);
      const oracle::Mat ref = oracle::project(full, *b);
      double worst = 0.0;
      for (std::size_t r = 0; r < b->size(); ++r) {
        for (std::size_t c = 0; c < b->size(); ++c) {
          worst = std::max(worst, std::abs(h.entry(r, c) -
                                           ref(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
        }
      }
      EXPECT_LT(worst, 1e-12) << "N_e=" << ne << " K=" << com;
    }
  }
}

TEST(Hamiltonian, OracleConservesNumberAndMomentum) {
  // Every nonzero element of the full Fock-space H connects states of equal N and K.
  const auto g = SystemGeometry::laughlin(3, 8.0);
  const auto full = oracle::hamiltonian(build_terms(g, Truncation::full()), g.n_orbitals);
  for (int k = 0; k < full.outerSize(); ++k) {
    for (oracle::SpMat::InnerIterator it(full, k); it; ++it) {
      if (std::abs(it.value()) < 1e-14) continue;
      const auto a = make_state(static_cast<Bits>(it.row()), g.n_orbitals);
      const auto b = make_state(static_cast<Bits>(it.col()), g.n_orbitals);
      EXPECT_EQ(particle_number(a), particle_number(b));
      EXPECT_EQ(center_of_mass(a), center_of_mass(b));
    }
  }
}

TEST(Hamiltonian, SymmetricAndRealWithRowsSorted) {
  const auto g = SystemGeometry::laughlin(5, 9.0);
  const auto b = cdw_sector(g);
  const auto h = assemble_hamiltonian(b, g, Truncation::full());
  for (std::size_t r = 0; r < h.dim(); ++r) {
    for (std::size_t p = h.row_ptr()[r]; p < h.row_ptr()[r + 1]; ++p) {
      if (p > h.row_ptr()[r]) EXPECT_LT(h.cols()[p - 1], h.cols()[p]);
      EXPECT_NEAR(h.values()[p], h.entry(h.cols()[p], r), 1e-13);
    }
  }
}

TEST(Hamiltonian, UnhermitizedAssemblyDropsAdjoint) {
  const auto g = SystemGeometry::laughlin(3, 8.0);
  const auto b = cdw_sector(g);
  const std::vector<TermInstance> terms{{2, 1, 0, 1.0}};
  const auto one = assemble(b, terms, false);
  const auto both = assemble(b, terms, true);
  EXPECT_EQ(2 * one.nonzeros(), both.nonzeros());
}

TEST(Hamiltonian, RejectsOutOfRangeTerms) {
  const auto g = SystemGeometry::laughlin(3, 8.0);
  const auto b = cdw_sector(g);
  EXPECT_THROW((void)assemble(b, {{3, 1, 4, 1.0}}), std::invalid_argument);
  EXPECT_THROW((void)assemble(nullptr, {}), std::invalid_argument);
  const auto other = SystemGeometry::laughlin(4, 8.0);
  EXPECT_THROW((void)assemble_hamiltonian(b, other, Truncation::full()), std::invalid_argument);
}

TEST(Hamiltonian, MatvecAndExpectation) {
  const auto g = SystemGeometry::laughlin(4, 8.0);
  const auto b = cdw_sector(g);
  const auto h = assemble_hamiltonian(b, g, Truncation::full());
  std::vector<Complex> v(h.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(std::sin(1.0 + i), std::cos(2.0 * i));
  const auto hv = matvec(h, v);
  Complex dot{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex ref{0.0, 0.0};
    for (std::size_t c = 0; c < h.dim(); ++c) ref += h.entry(i, c) * v[c];
    EXPECT_NEAR(std::abs(hv[i] - ref), 0.0, 1e-10);
    dot += std::conj(v[i]) * hv[i];
  }
  EXPECT_NEAR(expectation(h, v), dot.real(), 1e-9);
  EXPECT_NEAR(dot.imag(), 0.0, 1e-9);
  std::vector<Complex> wrong(3);
  EXPECT_THROW((void)matvec(h, wrong), std::invalid_argument);
}

TEST(Hamiltonian, ShortDensityTermsVanishOnRoot) {
  const auto g = SystemGeometry::laughlin(4, 6.0);
  const auto root = cdw_state(g);
  for (const auto& t : build_terms(g, Truncation::families({{1, 0}, {2, 0}}))) {
    EXPECT_FALSE(apply_term(t, root).has_value());
  }
}

TEST(Hamiltonian, WriteTerms) {
  std::ostringstream out;
  write_terms(out, {{2, 1, 3, 0.5}});
  EXPECT_EQ(out.str(), "# k m j coefficient\n2 1 3 0.5\n");
}
