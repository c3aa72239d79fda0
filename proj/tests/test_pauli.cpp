// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "laughlin/pauli.hpp"
#include "oracle/dense_fermion.hpp"

using namespace laughlin;

namespace {

oracle::Mat to_matrix(const PauliSum& s) {
  const auto dim = Eigen::Index{1} << s.n_qubits();
  oracle::Mat m = oracle::Mat::Zero(dim, dim);
  for (const auto& [p, c] : s.terms()) m += c * oracle::Mat(oracle::pauli_string(p.letters()));
  return m;
}

std::string random_letters(std::mt19937& rng, int n) {
  static const char kLetters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string out;
  for (int q = 0; q < n; ++q) out.push_back(kLetters[pick(rng)]);
  return out;
}

}  // namespace

TEST(Pauli, SingleQubitProducts) {
  const std::complex<double> i(0.0, 1.0);
  const auto check = [&](const char* a, const char* b, std::complex<double> phase, const char* c) {
    const auto [p, s] = multiply(PauliString(a), PauliString(b));
    EXPECT_EQ(p, phase) << a << "*" << b;
    EXPECT_EQ(s.letters(), c) << a << "*" << b;
  };
  check("X", "Y", i, "Z");
  check("Y", "X", -i, "Z");
  check("Y", "Z", i, "X");
  check("Z", "X", i, "Y");
  check("X", "Z", -i, "Y");
  check("Z", "Z", 1.0, "I");
  check("I", "Y", 1.0, "Y");
}

TEST(Pauli, ProductsMatchMatrices) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const PauliString a(random_letters(rng, 4));
    const PauliString b(random_letters(rng, 4));
    const auto [phase, c] = multiply(a, b);
    const oracle::Mat lhs = oracle::Mat(oracle::pauli_string(a.letters())) *
                            oracle::Mat(oracle::pauli_string(b.letters()));
    const oracle::Mat rhs = phase * oracle::Mat(oracle::pauli_string(c.letters()));
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
    const oracle::Mat comm = lhs - oracle::Mat(oracle::pauli_string(b.letters())) *
                                       oracle::Mat(oracle::pauli_string(a.letters()));
    EXPECT_EQ(a.commutes_with(b), comm.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST(Pauli, StringAccessors) {
  PauliString p("IXZY");
  EXPECT_EQ(p.n_qubits(), 4);
  EXPECT_EQ(p.at(1), 'X');
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.support(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(p.restricted({3, 1}), "YX");
  p.set(0, 'Z');
  EXPECT_EQ(p.letters(), "ZXZY");
  EXPECT_THROW(p.set(0, 'Q'), std::invalid_argument);
  EXPECT_THROW(PauliString("XA"), std::invalid_argument);
  EXPECT_THROW((void)multiply(PauliString("X"), PauliString("XX")), std::invalid_argument);
}

TEST(Pauli, JordanWignerMatchesKroneckerOperators) {
  const int n = 5;
  for (int q = 0; q < n; ++q) {
    EXPECT_LT((to_matrix(jw_annihilation(q, n)) - oracle::Mat(oracle::annihilation(q, n)))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
    EXPECT_LT((to_matrix(jw_creation(q, n)) - oracle::Mat(oracle::creation(q, n))).cwiseAbs().maxCoeff(),
              1e-15);
  }
  EXPECT_THROW((void)jw_annihilation(5, 5), std::invalid_argument);
}

TEST(Pauli, CanonicalAnticommutation) {
  const int n = 4;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      PauliSum anti = jw_annihilation(p, n) * jw_creation(q, n);
      anti += jw_creation(q, n) * jw_annihilation(p, n);
      anti.prune();
      if (p == q) {
        ASSERT_EQ(anti.terms().size(), 1u);
        EXPECT_EQ(anti.terms().begin()->first.letters(), "IIII");
        EXPECT_NEAR(std::abs(anti.terms().begin()->second - 1.0), 0.0, 1e-15);
      } else {
        EXPECT_TRUE(anti.terms().empty()) << p << "," << q;
      }
      PauliSum same = jw_annihilation(p, n) * jw_annihilation(q, n);
      same += jw_annihilation(q, n) * jw_annihilation(p, n);
      same.prune();
      EXPECT_TRUE(same.terms().empty());
    }
  }
}

TEST(Pauli, SumAdjointAndIdentity) {
  const auto c = jw_annihilation(2, 3);
  EXPECT_LT((to_matrix(c.adjoint()) - to_matrix(c).adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  const auto id = PauliSum::identity(3);
  EXPECT_EQ((id * c).terms(), c.terms());
  auto s = PauliSum::single(PauliString("XY"), 2.0);
  s.add(PauliString("XY"), -2.0);
  s.prune();
  EXPECT_TRUE(s.terms().empty());
  EXPECT_THROW(s.add(PauliString("X"), 1.0), std::invalid_argument);
}
