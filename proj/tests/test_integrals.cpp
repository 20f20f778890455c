// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "catch.hpp"

#include <sstream>

#include "fixtures.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/refstate.hpp"

using namespace uccvqe;
using Catch::Approx;

namespace {

const char* kTiny = R"(&FCI NORB=2,NELEC=2,MS2=0,
 ORBSYM=1,1,
 ISYM=1,
&END
 0.5D0 1 1 1 1
 0.25 2 1 1 1
 0.125 2 2 1 1
 0.1 2 1 2 1
 0.6 2 2 2 2
 -1.25 1 1 0 0
 0.05 2 1 0 0
 -0.5 2 2 0 0
 -0.75 1 0 0 0
 0.7 0 0 0 0
)";

double max_tensor_diff(const IntegralSet& a, const IntegralSet& b) {
  double d = std::abs(a.core_energy() - b.core_energy());
  const int n = a.n_spatial();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      d = std::max(d, std::abs(a.h1(p, q) - b.h1(p, q)));
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) d = std::max(d, std::abs(a.h2(p, q, r, s) - b.h2(p, q, r, s)));
    }
  return d;
}

}  // namespace

TEST_CASE("parse_fcidump reads header, symmetry classes and Fortran exponents") {
  const IntegralSet ints = parse_fcidump(std::string_view(kTiny));
  CHECK(ints.n_spatial() == 2);
  CHECK(ints.n_electrons() == 2);
  CHECK(ints.spin_multiplicity() == 1);
  CHECK(ints.core_energy() == 0.7);
  CHECK(ints.h2(0, 0, 0, 0) == 0.5);
  CHECK(ints.h2(0, 1, 0, 0) == 0.25);
  CHECK(ints.h2(0, 0, 1, 0) == 0.25);
  CHECK(ints.h2(1, 0, 0, 1) == 0.1);
  CHECK(ints.h2(0, 0, 1, 1) == 0.125);
  CHECK(ints.h1(0, 1) == 0.05);
  CHECK(ints.h1(1, 0) == 0.05);
  CHECK(ints.symmetry_residual() == 0.0);
}

TEST_CASE("parse_fcidump reports malformed input") {
  CHECK_THROWS_AS(parse_fcidump(std::string_view("0.5 1 1 1 1\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("&FCI NELEC=2\n&END\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n&END\n0.5 3 1 1 1\n")), BoundsError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n&END\n0.5 1 1 1 -1\n")), BoundsError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n&END\n0.5 1 2 1 1\n0.6 2 1 1 1\n")),
                  ConsistencyError);
  CHECK_NOTHROW(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n&END\n0.5 1 2 1 1\n0.5 2 1 1 1\n")));
  try {
    parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2\n&END\n0.5 1 1\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("write_fcidump of zero tensors is the header and the core line") {
  IntegralSet zero(3, 2, 1, 1.5);
  const std::string text = write_fcidump(zero);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> body;
  bool after = false;
  while (std::getline(in, line)) {
    if (after) body.push_back(line);
    if (line.find("&END") != std::string::npos) after = true;
  }
  REQUIRE(body.size() == 1);
  CHECK(body[0] == "1.5 0 0 0 0");
}

TEST_CASE("parse and write round-trip on every fixture") {
  for (const std::string mol : {"H2", "H4_linear", "H4_ring", "H6", "LiH", "H2O"}) {
    for (const auto& pt : fixtures::grid(mol)) {
      const IntegralSet a = fixtures::load(pt.fcidump);
      const IntegralSet b = parse_fcidump(std::string_view(write_fcidump(a)));
      const IntegralSet c = parse_fcidump(std::string_view(write_fcidump(b)));
      CHECK(max_tensor_diff(a, b) < 1e-12);
      CHECK(max_tensor_diff(b, c) == 0.0);
      CHECK(a.symmetry_residual() < 1e-12);
    }
  }
}

TEST_CASE("hf_energy and orbital energies") {
  IntegralSet zero(3, 2, 1, -3.0);
  CHECK(hf_energy(zero) == -3.0);
  IntegralSet odd(3, 3);
  CHECK_THROWS_AS(hf_energy(odd), PreconditionError);
  CHECK_THROWS_AS(mp2(odd, nullptr), PreconditionError);

  IntegralSet one(3, 2);
  one.set_h1(0, 0, -1.0);
  one.set_h1(1, 1, 0.5);
  one.set_h1(2, 2, 0.75);
  const auto eps = orbital_energies(one);
  CHECK(eps == std::vector<double>({-1.0, 0.5, 0.75}));
}

TEST_CASE("HF and MP2 energies match the fixture sidecars") {
  for (const std::string mol : {"H2", "H4_linear", "H4_ring", "H6", "LiH", "H2O"}) {
    for (const auto& pt : fixtures::grid(mol)) {
      const IntegralSet ints = fixtures::load(pt.fcidump);
      const ReferenceState ref = mp2(ints, nullptr);
      CHECK(ref.e_hf == Approx(pt.meta["e_hf"].get<double>()).margin(1e-8));
      CHECK(ref.e_mp2 == Approx(pt.meta["e_mp2_corr"].get<double>()).margin(1e-8));
      CHECK(ref.e_mp2 <= 0.0);
      CHECK(ref.e_mp2 == Approx(mp2_energy_spin_orbital(ints)).margin(1e-10));
    }
  }
  CHECK(fixtures::load(fixtures::grid("H2O")[0].fcidump).n_spatial() == 7);
  CHECK(fixtures::load(fixtures::grid("LiH")[0].fcidump).n_spatial() == 6);
}

TEST_CASE("MP2 without occupied-virtual coupling is zero") {
  IntegralSet ints(4, 4);
  for (int p = 0; p < 4; ++p) ints.set_h1(p, p, -1.0 + p);
  ints.set_h2(0, 0, 1, 1, 0.3);
  ints.set_h2(2, 2, 3, 3, 0.2);
  const ReferenceState ref = mp2(ints, nullptr);
  CHECK(ref.e_mp2 == 0.0);
  for (double t : ref.mp2_amplitudes) CHECK(t == 0.0);
}

TEST_CASE("MP2 clamps degenerate denominators with a warning") {
  IntegralSet ints(2, 2);
  ints.set_h1(1, 1, 0.1);
  ints.set_h2(0, 1, 0, 1, 0.1);
  std::ostringstream warn;
  const ReferenceState ref = mp2(ints, &warn);
  CHECK(ref.clamped_denominators == 1);
  CHECK(ref.t(0, 0, 0, 0) == 0.0);
  CHECK(warn.str().find("clamped") != std::string::npos);
}

TEST_CASE("freeze_orbitals folds occupied orbitals into the core") {
  for (const std::string mol : {"LiH", "H2O", "H6"}) {
    for (const auto& pt : fixtures::grid(mol)) {
      const IntegralSet ints = fixtures::load(pt.fcidump);
      CHECK(max_tensor_diff(freeze_orbitals(ints, {}), ints) == 0.0);
      const double e = hf_energy(ints);
      for (const std::set<int>& f : {std::set<int>{0}, std::set<int>{0, ints.n_occupied() - 1}}) {
        const IntegralSet fr = freeze_orbitals(ints, f);
        CHECK(fr.n_spatial() == ints.n_spatial() - static_cast<int>(f.size()));
        CHECK(fr.n_electrons() == ints.n_electrons() - 2 * static_cast<int>(f.size()));
        CHECK(hf_energy(fr) == Approx(e).margin(1e-10));
        CHECK(fr.symmetry_residual() < 1e-12);
      }
    }
  }
  const IntegralSet h2o = fixtures::load(fixtures::grid("H2O")[4].fcidump);
  CHECK_THROWS_AS(freeze_orbitals(h2o, {5}), PreconditionError);
}
