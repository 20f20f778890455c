// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fcidump.hpp
 * @brief Molecular integrals in the spatial-orbital basis and the FCIDUMP
 *        exchange format.
 *
 * Two-electron integrals are kept in chemists' notation (pq|rs) as a dense
 * rank-4 tensor with full 8-fold permutational symmetry. Orbitals are assumed
 * to be canonical RHF orbitals in ascending orbital-energy order, so the
 * Hartree-Fock determinant occupies the lowest n_electrons/2 spatial orbitals.
 */
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "uccvqe/errors.hpp"

namespace uccvqe {

/// One- and two-electron integrals plus the scalar core energy (Hartree).
class IntegralSet {
 public:
  IntegralSet() = default;

  /// Zero-initialized integrals over @p n_spatial orbitals.
  IntegralSet(int n_spatial, int n_electrons, int spin_multiplicity = 1, double core_energy = 0.0)
      : n_spatial_(n_spatial),
        n_electrons_(n_electrons),
        spin_multiplicity_(spin_multiplicity),
        core_energy_(core_energy),
        h1_(static_cast<std::size_t>(n_spatial) * n_spatial, 0.0),
        h2_(static_cast<std::size_t>(n_spatial) * n_spatial * n_spatial * n_spatial, 0.0) {
    if (n_spatial < 0 || n_electrons < 0) throw PreconditionError("IntegralSet: negative size");
  }

  int n_spatial() const { return n_spatial_; }
  int n_electrons() const { return n_electrons_; }
  int n_occupied() const { return n_electrons_ / 2; }
  int spin_multiplicity() const { return spin_multiplicity_; }
  double core_energy() const { return core_energy_; }

  double h1(int p, int q) const { return h1_[index2(p, q)]; }
  double h2(int p, int q, int r, int s) const { return h2_[index4(p, q, r, s)]; }

  void set_core_energy(double e) { core_energy_ = e; }

  /// Sets h1[p][q] and h1[q][p].
  void set_h1(int p, int q, double v) {
    h1_[index2(p, q)] = v;
    h1_[index2(q, p)] = v;
  }

  /// Sets (pq|rs) and all seven symmetry partners.
  void set_h2(int p, int q, int r, int s, double v) {
    for (auto [a, b, c, d] : permutations(p, q, r, s)) h2_[index4(a, b, c, d)] = v;
  }

  /// The eight index tuples related to (pq|rs) by real-orbital symmetry.
  static std::array<std::array<int, 4>, 8> permutations(int p, int q, int r, int s) {
    return {{{p, q, r, s},
             {q, p, r, s},
             {p, q, s, r},
             {q, p, s, r},
             {r, s, p, q},
             {s, r, p, q},
             {r, s, q, p},
             {s, r, q, p}}};
  }

  /// Largest violation of h1 symmetry and 8-fold h2 symmetry.
  double symmetry_residual() const {
    double worst = 0.0;
    const int n = n_spatial_;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) worst = std::max(worst, std::abs(h1(p, q) - h1(q, p)));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            for (auto [a, b, c, d] : permutations(p, q, r, s))
              worst = std::max(worst, std::abs(h2(p, q, r, s) - h2(a, b, c, d)));
    return worst;
  }

 private:
  std::size_t index2(int p, int q) const {
    return static_cast<std::size_t>(p) * n_spatial_ + q;
  }
  std::size_t index4(int p, int q, int r, int s) const {
    const std::size_t n = n_spatial_;
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int n_spatial_ = 0;
  int n_electrons_ = 0;
  int spin_multiplicity_ = 1;
  double core_energy_ = 0.0;
  std::vector<double> h1_;
  std::vector<double> h2_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

/// Shortest decimal text that parses back to exactly @p v.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

// Canonical representative of the 8-fold class: i>=j, k>=l, ij>=kl.
inline std::tuple<int, int, int, int> canonical_eri(int i, int j, int k, int l) {
  if (i < j) std::swap(i, j);
  if (k < l) std::swap(k, l);
  if (std::pair(i, j) < std::pair(k, l)) {
    std::swap(i, k);
    std::swap(j, l);
  }
  return {i, j, k, l};
}

}  // namespace detail

/**
 * Parses FCIDUMP text.
 *
 * Header: `&FCI NORB=..,NELEC=..,MS2=..` (other keys ignored) terminated by
 * `&END` or `/`. Records are `value i j k l` with 1-based indices:
 * all four nonzero is (ij|kl), `i j 0 0` is h1, `0 0 0 0` is the core energy,
 * and `i 0 0 0` (orbital energies) is ignored.
 */
inline IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  int line_no = 0;
  bool header_done = false;
  bool header_started = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::upper(detail::trim(line));
    if (t.empty()) continue;
    if (!header_started) {
      if (t.rfind("&FCI", 0) != 0)
        throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": expected '&FCI' header, got '" + detail::trim(line) + "'");
      header_started = true;
    }
    const auto end_pos = std::min(t.find("&END"), t.find('/'));
    if (end_pos != std::string::npos) {
      header += " " + t.substr(0, end_pos);
      header_done = true;
      break;
    }
    header += " " + t;
  }
  if (!header_done)
    throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": header not terminated by &END or '/'");

  auto read_key = [&](const std::string& key, bool required, int fallback) {
    const std::regex re("[\\s,&]" + key + "\\s*=\\s*(-?\\d+)");
    std::smatch m;
    if (std::regex_search(header, m, re)) return std::stoi(m[1].str());
    if (required) throw ParseError("FCIDUMP header: missing " + key + " (line " + std::to_string(line_no) + ")");
    return fallback;
  };
  const int norb = read_key("NORB", true, 0);
  const int nelec = read_key("NELEC", true, 0);
  const int ms2 = read_key("MS2", false, 0);
  if (norb <= 0 || nelec < 0 || nelec > 2 * norb)
    throw ParseError("FCIDUMP header: invalid NORB/NELEC (line " + std::to_string(line_no) + ")");

  IntegralSet out(norb, nelec, ms2 + 1);
  std::map<std::tuple<int, int, int, int>, double> seen_h2;
  std::map<std::pair<int, int>, double> seen_h1;
  bool have_core = false;

  constexpr double kDuplicateTol = 1e-10;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    for (char& c : t)
      if (c == 'D' || c == 'd') c = 'E';
    std::istringstream rec(t);
    double value = 0.0;
    long idx[4];
    if (!(rec >> value >> idx[0] >> idx[1] >> idx[2] >> idx[3]))
      throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": expected 'value i j k l', got '" + t + "'");
    for (long v : idx)
      if (v < 0 || v > norb)
        throw BoundsError("FCIDUMP line " + std::to_string(line_no) + ": index " + std::to_string(v) + " outside [0, " + std::to_string(norb) + "]");
    const int i = static_cast<int>(idx[0]), j = static_cast<int>(idx[1]);
    const int k = static_cast<int>(idx[2]), l = static_cast<int>(idx[3]);
    auto conflict = [&](double previous) {
      if (std::abs(previous - value) > kDuplicateTol)
        throw ConsistencyError("FCIDUMP line " + std::to_string(line_no) + ": conflicting duplicate entry (" +
                               detail::format_double(previous) + " vs " + detail::format_double(value) + ")");
    };
    if (i && j && k && l) {
      const auto key = detail::canonical_eri(i, j, k, l);
      if (auto it = seen_h2.find(key); it != seen_h2.end()) conflict(it->second);
      seen_h2[key] = value;
      out.set_h2(i - 1, j - 1, k - 1, l - 1, value);
    } else if (i && j && !k && !l) {
      const auto key = std::pair(std::max(i, j), std::min(i, j));
      if (auto it = seen_h1.find(key); it != seen_h1.end()) conflict(it->second);
      seen_h1[key] = value;
      out.set_h1(i - 1, j - 1, value);
    } else if (!i && !j && !k && !l) {
      if (have_core) conflict(out.core_energy());
      have_core = true;
      out.set_core_energy(value);
    } else if (i && !j && !k && !l) {
      // orbital energy record; recomputed from the integrals when needed
    } else {
      throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": unrecognized index pattern '" + t + "'");
    }
  }
  return out;
}

inline IntegralSet parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

/// Writes canonical FCIDUMP: one record per symmetry class, |value| >= 1e-12.
inline void write_fcidump(const IntegralSet& ints, std::ostream& out) {
  constexpr double kDropBelow = 1e-12;
  const int n = ints.n_spatial();
  out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons() << ",MS2=" << ints.spin_multiplicity() - 1 << ",\n";
  out << " ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = ints.h2(i, j, k, l);
          if (std::abs(v) < kDropBelow) continue;
          out << detail::format_double(v) << ' ' << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << l + 1 << '\n';
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = ints.h1(i, j);
      if (std::abs(v) < kDropBelow) continue;
      out << detail::format_double(v) << ' ' << i + 1 << ' ' << j + 1 << " 0 0\n";
    }
  out << detail::format_double(ints.core_energy()) << " 0 0 0 0\n";
}

inline std::string write_fcidump(const IntegralSet& ints) {
  std::ostringstream out;
  write_fcidump(ints, out);
  return out.str();
}

/**
 * Folds doubly occupied orbitals into the core energy and an effective
 * one-body operator, returning integrals over the remaining orbitals in their
 * original relative order.
 */
inline IntegralSet freeze_orbitals(const IntegralSet& ints, const std::set<int>& frozen) {
  if (frozen.empty()) return ints;
  const int n_occ = ints.n_occupied();
  for (int f : frozen)
    if (f < 0 || f >= n_occ)
      throw PreconditionError("freeze_orbitals: orbital " + std::to_string(f) +
                              " is not doubly occupied in the reference (n_occ = " + std::to_string(n_occ) + ")");

  std::vector<int> active;
  for (int p = 0; p < ints.n_spatial(); ++p)
    if (!frozen.count(p)) active.push_back(p);

  double core = ints.core_energy();
  for (int i : frozen) {
    core += 2.0 * ints.h1(i, i);
    for (int j : frozen) core += 2.0 * ints.h2(i, i, j, j) - ints.h2(i, j, j, i);
  }

  const int m = static_cast<int>(active.size());
  IntegralSet out(m, ints.n_electrons() - 2 * static_cast<int>(frozen.size()), ints.spin_multiplicity(), core);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b) {
      const int p = active[a], q = active[b];
      double v = ints.h1(p, q);
      for (int i : frozen) v += 2.0 * ints.h2(p, q, i, i) - ints.h2(p, i, i, q);
      out.set_h1(a, b, v);
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d <= c; ++d)
          out.set_h2(a, b, c, d, ints.h2(active[a], active[b], active[c], active[d]));
  return out;
}

}  // namespace uccvqe
