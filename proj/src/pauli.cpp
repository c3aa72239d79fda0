// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

#include "laughlin/pauli.hpp"

#include <stdexcept>

namespace laughlin {

namespace {

using Complex = std::complex<double>;

bool valid_letter(char c) noexcept { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Single-qubit product a * b = phase * c.
std::pair<Complex, char> multiply_letter(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  const Complex i(0.0, 1.0);
  if (a == 'X' && b == 'Y') return {i, 'Z'};
  if (a == 'Y' && b == 'X') return {-i, 'Z'};
  if (a == 'Y' && b == 'Z') return {i, 'X'};
  if (a == 'Z' && b == 'Y') return {-i, 'X'};
  if (a == 'Z' && b == 'X') return {i, 'Y'};
  return {-i, 'Y'};  // X * Z
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_) {
    if (!valid_letter(c)) throw std::invalid_argument("Pauli letters must be I, X, Y or Z");
  }
}

void PauliString::set(int q, char letter) {
  if (!valid_letter(letter)) throw std::invalid_argument("Pauli letters must be I, X, Y or Z");
  letters_.at(static_cast<std::size_t>(q)) = letter;
}

int PauliString::weight() const noexcept {
  int w = 0;
  for (char c : letters_) w += c != 'I' ? 1 : 0;
  return w;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < n_qubits(); ++q) {
    if (letters_[static_cast<std::size_t>(q)] != 'I') out.push_back(q);
  }
  return out;
}

std::string PauliString::restricted(const std::vector<int>& qubits) const {
  std::string out;
  for (int q : qubits) out.push_back(at(q));
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_qubits() != n_qubits()) throw std::invalid_argument("Pauli length mismatch");
  int anti = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const char a = letters_[q];
    const char b = other.letters_[q];
    if (a != 'I' && b != 'I' && a != b) ++anti;
  }
  return anti % 2 == 0;
}

std::pair<Complex, PauliString> multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("Pauli length mismatch");
  Complex phase = 1.0;
  PauliString out(a.n_qubits());
  for (int q = 0; q < a.n_qubits(); ++q) {
    const auto [p, c] = multiply_letter(a.at(q), b.at(q));
    phase *= p;
    out.set(q, c);
  }
  return {phase, out};
}

PauliSum PauliSum::identity(int n_qubits) {
  PauliSum s(n_qubits);
  s.add(PauliString(n_qubits), 1.0);
  return s;
}

PauliSum PauliSum::single(const PauliString& p, Complex coefficient) {
  PauliSum s(p.n_qubits());
  s.add(p, coefficient);
  return s;
}

void PauliSum::add(const PauliString& p, Complex coefficient) {
  if (p.n_qubits() != n_qubits_) throw std::invalid_argument("Pauli length mismatch");
  terms_[p] += coefficient;
}

void PauliSum::prune(double eps) {
  std::erase_if(terms_, [eps](const auto& kv) { return std::abs(kv.second) <= eps; });
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  PauliSum out(n_qubits_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      const auto [phase, c] = multiply(a, b);
      out.add(c, phase * ca * cb);
    }
  }
  out.prune();
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& [p, c] : terms_) out.add(p, std::conj(c));
  return out;
}

namespace {

PauliSum ladder(int q, int n_qubits, double y_sign) {
  if (q < 0 || q >= n_qubits) throw std::invalid_argument("qubit index out of range");
  PauliString x(n_qubits);
  PauliString y(n_qubits);
  for (int i = 0; i < q; ++i) {
    x.set(i, 'Z');
    y.set(i, 'Z');
  }
  x.set(q, 'X');
  y.set(q, 'Y');
  PauliSum s(n_qubits);
  s.add(x, 0.5);
  s.add(y, Complex(0.0, 0.5 * y_sign));
  return s;
}

}  // namespace

PauliSum jw_annihilation(int q, int n_qubits) { return ladder(q, n_qubits, +1.0); }
PauliSum jw_creation(int q, int n_qubits) { return ladder(q, n_qubits, -1.0); }

}  // namespace laughlin
