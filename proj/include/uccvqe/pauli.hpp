// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pauli.hpp
 * @brief Symplectic Pauli strings and weighted sums of them.
 *
 * A PauliString holds an X mask and a Z mask over at most 64 qubits and
 * denotes the Hermitian operator  prod_k i^{x_k z_k} X_k^{x_k} Z_k^{z_k},
 * so a qubit with both bits set carries Y = iXZ. Acting on a computational
 * basis state,  P|s> = i^{|x&z|} (-1)^{|z&s|} |s xor x>.
 */
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace uccvqe {

using Complex = std::complex<double>;

/// i^k for integer k.
inline Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliString identity() { return {}; }
  static PauliString X(int q) { return {std::uint64_t{1} << q, 0}; }
  static PauliString Y(int q) { return {std::uint64_t{1} << q, std::uint64_t{1} << q}; }
  static PauliString Z(int q) { return {0, std::uint64_t{1} << q}; }

  bool is_identity() const { return x == 0 && z == 0; }
  int weight() const { return std::popcount(x | z); }
  int y_count() const { return std::popcount(x & z); }

  bool commutes_with(const PauliString& o) const {
    return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
  }

  /// Phase and target of P|s>.
  std::pair<Complex, std::uint64_t> apply(std::uint64_t s) const {
    const int sign = std::popcount(z & s) & 1;
    return {i_pow(y_count() + 2 * sign), s ^ x};
  }

  /// Tensor-product label, e.g. "X0 Y3 Z4"; "I" for the identity.
  std::string label() const {
    if (is_identity()) return "I";
    std::string out;
    for (int q = 0; q < 64; ++q) {
      const bool bx = (x >> q) & 1, bz = (z >> q) & 1;
      if (!bx && !bz) continue;
      if (!out.empty()) out += ' ';
      out += (bx && bz) ? 'Y' : (bx ? 'X' : 'Z');
      out += std::to_string(q);
    }
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// (phase, P1*P2) such that P1 * P2 = phase * product.
inline std::pair<Complex, PauliString> multiply(const PauliString& a, const PauliString& b) {
  const PauliString c{a.x ^ b.x, a.z ^ b.z};
  const int power = a.y_count() + b.y_count() - c.y_count() + 2 * std::popcount(a.z & b.x);
  return {i_pow(power), c};
}

/// Sum of Pauli strings with complex coefficients.
class QubitOperator {
 public:
  using Terms = std::map<PauliString, Complex>;

  QubitOperator() = default;
  QubitOperator(const PauliString& p, Complex c) { add(p, c); }

  static QubitOperator identity(Complex c = 1.0) { return QubitOperator(PauliString::identity(), c); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add(const PauliString& p, Complex c) { terms_[p] += c; }

  /// Drops terms with |coefficient| <= threshold.
  QubitOperator& compress(double threshold = kCompressThreshold) {
    std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) <= threshold; });
    return *this;
  }

  QubitOperator adjoint() const {
    QubitOperator out;
    for (const auto& [p, c] : terms_) out.terms_[p] = std::conj(c);
    return out;
  }

  QubitOperator& operator+=(const QubitOperator& o) {
    for (const auto& [p, c] : o.terms_) terms_[p] += c;
    return *this;
  }
  QubitOperator& operator-=(const QubitOperator& o) {
    for (const auto& [p, c] : o.terms_) terms_[p] -= c;
    return *this;
  }
  QubitOperator& operator*=(Complex s) {
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }

  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
    QubitOperator out;
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) {
        auto [phase, pc] = multiply(pa, pb);
        out.terms_[pc] += phase * ca * cb;
      }
    return out;
  }

  /// Sum of |coefficient|, an upper bound on the operator norm.
  double one_norm() const {
    double n = 0.0;
    for (const auto& [p, c] : terms_) n += std::abs(c);
    return n;
  }

  /// Largest |Im c|: zero for Hermitian operators.
  double hermiticity_residual() const {
    double r = 0.0;
    for (const auto& [p, c] : terms_) r = std::max(r, std::abs(c.imag()));
    return r;
  }

  /// Largest |Re c|: zero for anti-Hermitian operators.
  double anti_hermiticity_residual() const {
    double r = 0.0;
    for (const auto& [p, c] : terms_) r = std::max(r, std::abs(c.real()));
    return r;
  }

  /// Deterministic text form: one `re im label` line per term in key order.
  std::string to_string() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& [p, c] : terms_) out << c.real() << ' ' << c.imag() << ' ' << p.label() << '\n';
    return out.str();
  }

  static constexpr double kCompressThreshold = 1e-14;

 private:
  Terms terms_;
};

inline QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  return (a * b - b * a).compress();
}

inline QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b) {
  return (a * b + b * a).compress();
}

}  // namespace uccvqe
