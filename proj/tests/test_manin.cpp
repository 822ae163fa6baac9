#include <doctest.h>

#include "cybelab/errors.hpp"
#include "cybelab/manin.hpp"
#include "cybelab/series.hpp"

using namespace cybelab;

namespace {

const PencilCoeffs kAnchor = PencilCoeffs::of(1, 0, -1);
// Fewest calibration failures; see the certificate test.
const ConventionProfile kBest{1, BPoint::Infinity, LegOrder::SecondInFirstOut};

LoopElt mono(Basis x, int k, const Scalar& c = 1) { return LoopElt::monomial(x, k, c); }

// res at infinity with sigma = +1 equals minus the classical residue, which is
// the sum of the finite residues. For l^n / (1 - l^2): -1/2 at 1, (-1)^n / 2 at
// -1, and the l^{-1-n} coefficient of 1 + l^2 + l^4 + ... at 0.
Scalar anchor_moment(int n) {
  Scalar s = Scalar(-1, 2) + (n % 2 == 0 ? Scalar(1, 2) : Scalar(-1, 2));
  if (n <= -1 && (-1 - n) % 2 == 0) s += 1;
  return s;
}

}  // namespace

TEST_CASE("pairing examples") {
  CHECK(pairing_eval(mono(Basis::E, -1), mono(Basis::F, 0), PairingSpec::indexed(1)) == 1);
  CHECK(pairing_eval(mono(Basis::H, 0), mono(Basis::H, 0), PairingSpec::indexed(2)) == 1);
  CHECK(pairing_eval(mono(Basis::E, 1), mono(Basis::F, 0), PairingSpec::indexed(3)) == 1);
  const auto g100 = PairingSpec::general(PencilCoeffs::of(1, 0, 0), kBest);
  CHECK(pairing_eval(mono(Basis::E, -1), mono(Basis::F, 0), g100) == 1);
  CHECK_THROWS_AS(PairingSpec::indexed(4), std::invalid_argument);
  CHECK_THROWS_AS(PairingSpec::general(PencilCoeffs::symbolic(), kBest), std::invalid_argument);
}

TEST_CASE("general pairing against partial fractions") {
  const auto spec = PairingSpec::general(kAnchor, kBest);
  for (int i = -6; i <= 6; ++i)
    for (int j = -6; j <= 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(pairing_eval(mono(Basis::E, i), mono(Basis::F, j), spec) == anchor_moment(i + j));
      CHECK(pairing_eval(mono(Basis::H, i), mono(Basis::H, j), spec) == 2 * anchor_moment(i + j));
    }
  // sigma flips the sign of the residue at infinity
  auto flipped = kBest;
  flipped.sigma_inf = -1;
  CHECK(pairing_eval(mono(Basis::E, 1), mono(Basis::F, 0), PairingSpec::general(kAnchor, flipped)) == 1);
}

TEST_CASE("pairing invariance for indexed pairings") {
  for (int idx = 1; idx <= 3; ++idx) {
    const auto spec = PairingSpec::indexed(idx);
    for (Basis x : kBasis)
      for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
          for (Basis y : kBasis)
            for (Basis z : kBasis) {
              const auto X = mono(x, 0), A = mono(y, i), B = mono(z, j);
              const Scalar s =
                  pairing_eval(loop_bracket(X, A), B, spec) + pairing_eval(A, loop_bracket(X, B), spec);
              CHECK(s == 0);
            }
  }
}

TEST_CASE("b coefficients") {
  auto b = b_coeffs(PencilCoeffs::of(1, 0, 0), -6, 6, BPoint::Infinity);
  CHECK(b.size() == 1);
  CHECK(b.at(-1) == RatFn(1));
  b = b_coeffs(kAnchor, -7, 7, BPoint::Infinity);
  for (int n = -7; n <= 7; ++n) {
    const RatFn expect = (n >= 1 && n % 2 == 1) ? RatFn(-1) : RatFn(0);
    CHECK((b.count(n) ? b.at(n) : RatFn()) == expect);
  }
  b = b_coeffs(kAnchor, -7, 7, BPoint::Zero);
  for (int n = -7; n <= 7; ++n) {
    const RatFn expect = (n <= -1 && n % 2 != 0) ? RatFn(1) : RatFn(0);
    CHECK((b.count(n) ? b.at(n) : RatFn()) == expect);
  }
  // against expand of l / (a1 + 2 a2 l + a3 l^2) at both points
  for (const auto& a : {PencilCoeffs::of(1, 1, 1), PencilCoeffs::of(2, -1, 3), PencilCoeffs::of(0, 1, 0)}) {
    const RatFn f = RatFn::fraction(MPoly::var(Var::L), density(a));
    for (auto [pt, point] : {std::pair{BPoint::Infinity, Point::infinity()}, std::pair{BPoint::Zero, Point::zero()}}) {
      const auto w = expand(f, Var::L, point, -6, 6);
      const auto bb = b_coeffs(a, -6, 6, pt);
      for (int n = -6; n <= 6; ++n) CHECK((bb.count(n) ? bb.at(n) : RatFn()) == w.coefficient(-n));
    }
  }
}

TEST_CASE("gram inverse band") {
  CHECK(gram_inverse_check(PencilCoeffs::of(1, 0, 0), 10, BPoint::Infinity).identity);
  const auto g = gram_inverse_check(kAnchor, 12, BPoint::Infinity);
  CHECK(g.identity);
  CHECK(g.checked == 13 * 13);
  // both expansion points invert the band on the interior
  CHECK(gram_inverse_check(kAnchor, 12, BPoint::Zero).identity);
  CHECK(gram_inverse_check(PencilCoeffs::symbolic(), 6, BPoint::Infinity).identity);
  CHECK(gram_inverse_check(PencilCoeffs::symbolic(), 6, BPoint::Zero).identity);
}

TEST_CASE("R operator: two routes agree") {
  const std::vector<PencilCoeffs> pencils{kAnchor, PencilCoeffs::of(0, 0, 1), PencilCoeffs::of(1, 1, 1),
                                          PencilCoeffs::of(2, 0, 1), PencilCoeffs::of(1, 0, 0)};
  for (const auto& a : pencils)
    for (const auto& p : all_profiles()) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const LoopElt A = random_loop(seed, 4);
        CAPTURE(a.to_string());
        CAPTURE(p.to_string());
        CHECK(r_operator(A, a, p) == r_operator_series(A, a, p, -10, 10));
      }
    }
}

TEST_CASE("R operator values under the best profile") {
  CHECK(r_operator(mono(Basis::H, 0), kAnchor, kBest) == mono(Basis::H, 0));
  CHECK(r_operator(mono(Basis::F, 2), kAnchor, kBest) == mono(Basis::F, 2, -1));
  CHECK(r_operator(mono(Basis::H, 2), kAnchor, kBest) == mono(Basis::H, 0, 2) - mono(Basis::H, 2));
  // fixed-point claim fails on the constant f
  CHECK(r_operator(mono(Basis::F, 0), kAnchor, kBest) == mono(Basis::F, 0, -1));
  CHECK(r_operator(mono(Basis::E, 1), kAnchor, kBest) == mono(Basis::E, 1));
  CHECK(r_operator(mono(Basis::E, 3), kAnchor, kBest) == mono(Basis::E, 1, 2) - mono(Basis::E, 3));
  // swapping the leg order negates R, since r-bar is skew
  auto other = kBest;
  other.leg_order = LegOrder::FirstInSecondOut;
  const LoopElt A = random_loop(7, 5);
  CHECK(r_operator(A, kAnchor, other) == Scalar(-1) * r_operator(A, kAnchor, kBest));
}

TEST_CASE("R squares to the identity on degrees [-8, 8]") {
  for (int k = -8; k <= 8; ++k)
    for (Basis x : kBasis) {
      const auto A = mono(x, k);
      CHECK(r_operator(r_operator(A, kAnchor, kBest), kAnchor, kBest) == A);
    }
}

TEST_CASE("calibration certificate") {
  const auto cal = calibrate_conventions(kAnchor);
  REQUIRE(cal.certificates.size() == 8);
  CHECK(cal.status == CalibrationResult::Status::None);
  CHECK(cal.chosen == kBest);
  CHECK_THROWS_AS(cal.calibrated(), NoProfile);
  for (const auto& c : cal.certificates) {
    REQUIRE(c.checks.size() == 3);
    // (i) fixes sigma = +1
    CHECK(c.checks[0].pass == (c.profile.sigma_inf == 1));
    // (ii) fixes the b expansion point given sigma = +1
    if (c.profile.sigma_inf == 1) CHECK(c.checks[1].pass == (c.profile.b_point == BPoint::Infinity));
    CHECK_FALSE(c.checks[2].pass);
    for (const auto& k : c.checks)
      if (!k.pass) CHECK_FALSE(k.witness.empty());
  }
  const auto& best = cal.certificates[1];
  CHECK(best.profile == kBest);
  CHECK(best.failed_items() == 1);
  CHECK(best.checks[2].witness.find("R(f)") != std::string::npos);
}

TEST_CASE("explicit stable formulas") {
  StableCoords c;
  c.alpha[0] = 1;
  auto r = r_explicit_stable(c);
  CHECK(r.value.alpha.at(0) == 1);
  StableCoords d;
  d.beta[-1] = 1;
  d.beta[1] = 1;
  r = r_explicit_stable(d);
  CHECK(r.value.beta.at(1) == 3);
  StableCoords h2;
  h2.alpha[2] = 1;
  r = r_explicit_stable(h2);
  CHECK(r.value.alpha.at(0) == 2);
  CHECK(r.value.to_loop() == r_operator(mono(Basis::H, 2), kAnchor, kBest));
  CHECK_FALSE(r.note.empty());
  CHECK_FALSE(StableCoords::of(mono(Basis::F, 1)).has_value());
  CHECK_FALSE(StableCoords::of(mono(Basis::E, -2)).has_value());
}

TEST_CASE("explicit formulas against the operator on the stable subspace") {
  const auto printed = compare_stable(kAnchor, kBest, 8, IndexReading::Printed);
  CHECK(printed.checked == 19);
  // disagreement sits exactly at e l^{-1} and e l
  REQUIRE(printed.disagreements.size() == 2);
  CHECK(printed.disagreements[0].rfind("e*l^-1:", 0) == 0);
  CHECK(printed.disagreements[1].rfind("e*l^1:", 0) == 0);
  const auto reindexed = compare_stable(kAnchor, kBest, 8, IndexReading::Reindexed);
  CHECK(reindexed.disagreements.size() == 4);
}

TEST_CASE("stable subspace eigenspaces") {
  for (int n : {2, 4, 8}) {
    const auto e = stable_eigenspaces(kAnchor, kBest, n);
    CHECK(e.diagonalizable);
    CHECK(e.minus_conditions_hold);
    // h, e, e l^{-1} and also e l
    CHECK(e.plus_dim == 4);
  }
}

TEST_CASE("g+ membership") {
  CHECK(gplus_membership(mono(Basis::E, 1) - mono(Basis::E, -1)).member);
  const auto h = gplus_membership(mono(Basis::H, 0));
  CHECK_FALSE(h.member);
  REQUIRE(h.violated.size() == 1);
  CHECK(h.violated[0].find("H(1) + H(-1) = 2") != std::string::npos);
  for (int k = 1; k <= 6; ++k) CHECK(gplus_membership(mono(Basis::F, k)).member);
  CHECK_FALSE(gplus_membership(mono(Basis::F, -1)).member);
  CHECK_FALSE(gplus_membership(mono(Basis::F, 0)).member);
  CHECK_FALSE(gplus_membership(mono(Basis::E, -2) - mono(Basis::E, 2)).member);
}

TEST_CASE("g+ spanning family") {
  const auto b = gplus_spanning(6);
  CHECK(b.elements.size() == 18);
  CHECK(basis_rank(b) == 18);
  for (const auto& x : b.elements) CHECK(gplus_membership(x).member);
  const auto br = loop_bracket(mono(Basis::E, 1) - mono(Basis::E, -1), mono(Basis::F, 1));
  CHECK(br == mono(Basis::H, 2) - mono(Basis::H, 0));
  CHECK(loop_bracket(mono(Basis::H, 1), mono(Basis::F, 1)) == mono(Basis::F, 2, -2));
  const auto closure = bracket_closure(b, gplus_membership);
  CHECK(closure.pairs == 153);
  CHECK(closure.closed());
  // g+ and the negative truncation are complementary on [-n, n]
  for (int n : {2, 5}) {
    SubspaceBasis u{"union", gplus_spanning(n).elements};
    for (const auto& x : negative_truncation(n).elements) u.elements.push_back(x);
    CHECK(basis_rank(u) == static_cast<std::size_t>(6 * n + 3));
    CHECK(u.elements.size() == static_cast<std::size_t>(6 * n + 3));
  }
  CHECK_THROWS_AS(gplus_spanning(1), std::invalid_argument);
}

TEST_CASE("h projection") {
  using V = Sl2Vec<Scalar>;
  CHECK(h_projection(V::basis(Basis::H, 1) + V::basis(Basis::F, 1)) == V::basis(Basis::H, 1));
  CHECK(h_projection(V::basis(Basis::F, 1)).is_zero());
  CHECK(h_projection(V::basis(Basis::H, 3) + V::basis(Basis::F, -2)) == V::basis(Basis::H, 3));
  CHECK_THROWS_AS(h_projection(V::basis(Basis::E, 1)), NotInBminus);
}

TEST_CASE("isotropy and duality") {
  const auto spec = PairingSpec::general(kAnchor, kBest);
  CHECK(pairing_eval(mono(Basis::E, -1) - mono(Basis::E, 1), mono(Basis::F, 1) - mono(Basis::F, 3), spec) == 0);
  CHECK(isotropy_check(gplus_spanning(6), spec).isotropic());
  CHECK(isotropy_check(negative_truncation(6), spec).isotropic());
  CHECK(pairing_eval(mono(Basis::E, 1) - mono(Basis::E, -1), mono(Basis::F, 0), spec) == -1);
  // h is in neither half and pairs with itself
  SubspaceBasis bad{"bad", {mono(Basis::H, 1), mono(Basis::H, 0)}};
  CHECK_FALSE(isotropy_check(bad, spec).isotropic());
  for (int n : {4, 6}) {
    const auto d = duality_rank(n, spec);
    CHECK(d.rows == static_cast<std::size_t>(3 * n));
    CHECK(d.full());
    CHECK(d.zero_rows.empty());
  }
}

TEST_CASE("decomposition") {
  auto both = decompose_both(mono(Basis::H, 0), kAnchor, kBest);
  CHECK(both.agree());
  CHECK(both.by_solve.plus.is_zero());
  CHECK(both.by_solve.minus == mono(Basis::H, 0));
  both = decompose_both(mono(Basis::H, 2), kAnchor, kBest);
  CHECK(both.agree());
  CHECK(both.by_solve.plus == mono(Basis::H, 2) - mono(Basis::H, 0));
  CHECK(both.by_solve.minus == mono(Basis::H, 0));
  both = decompose_both(mono(Basis::F, 1), kAnchor, kBest);
  CHECK(both.agree());
  CHECK(both.by_solve.plus == mono(Basis::F, 1));
  // R(f) = -f puts f in the wrong half under the operator method
  CHECK_THROWS_AS(decompose(mono(Basis::F, 0), kAnchor, kBest), DecompositionMismatch);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LoopElt A = random_loop(seed, 6);
    const auto d = decompose_both(A, kAnchor, kBest);
    CHECK(d.by_solve.plus + d.by_solve.minus == A);
    CHECK(d.by_operator.plus + d.by_operator.minus == A);
    CHECK(gplus_membership(d.by_solve.plus).member);
    if (!d.by_solve.minus.is_zero()) CHECK(d.by_solve.minus.max_degree() <= 0);
  }
  CHECK(random_loop(5, 3) == random_loop(5, 3));
}

TEST_CASE("generalized g+ conditions") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LoopElt A = random_loop(seed, 3);
    CHECK(generalized_gplus_membership(A, 1, -1).member == gplus_membership(A).member);
  }
  for (auto [z1, z2] : {std::pair<int, int>{2, 3}, {-1, 5}, {1, 4}}) {
    // e (l - z1)(l - z2) / l
    LoopElt x = mono(Basis::E, 1) - mono(Basis::E, 0, z1 + z2) + mono(Basis::E, -1, z1 * z2);
    CHECK(generalized_gplus_membership(x, z1, z2).member);
  }
  const auto b = generalized_gplus_basis(6, 2, 3);
  CHECK(b.elements.size() == 18);
  CHECK(basis_rank(b) == 18);
  for (const auto& x : b.elements) CHECK(generalized_gplus_membership(x, 2, 3).member);
  // at (1, -1) the solution space is the span of the explicit family
  SubspaceBasis u{"u", generalized_gplus_basis(6, 1, -1).elements};
  for (const auto& x : gplus_spanning(6).elements) u.elements.push_back(x);
  CHECK(basis_rank(u) == 18);
}
