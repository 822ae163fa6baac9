#include <doctest.h>

#include <array>
#include <optional>

#include "cybelab/series.hpp"
#include "cybelab/sl2.hpp"

using namespace cybelab;

namespace {

// Fundamental representation: independent oracle for structure constants.
using Mat = std::array<std::array<Scalar, 2>, 2>;

Mat matrix_of(Basis b) {
  Mat m{};
  for (auto& row : m)
    for (auto& x : row) x = 0;
  if (b == Basis::E) m[0][1] = 1;
  if (b == Basis::F) m[1][0] = 1;
  if (b == Basis::H) {
    m[0][0] = 1;
    m[1][1] = -1;
  }
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      c[i][j] = 0;
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat sub(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][j] - b[i][j];
  return c;
}

// Coordinates of a traceless matrix in (e, f, h).
Sl2Vec<Scalar> coords(const Mat& m) { return {m[0][1], m[1][0], m[0][0]}; }

Sl2Vec<Scalar> oracle_bracket(Basis x, Basis y) {
  return coords(sub(mul(matrix_of(x), matrix_of(y)), mul(matrix_of(y), matrix_of(x))));
}

Scalar oracle_trace(Basis x, Basis y) {
  Mat p = mul(matrix_of(x), matrix_of(y));
  return p[0][0] + p[1][1];
}

using V = Sl2Vec<Scalar>;
V bv(Basis b) { return V::basis(b); }

// Brute-force [a^{legs}, b^{legs}] through explicit 3-leg placement, using the matrix oracle.
Tensor3<Scalar> oracle_leg_bracket(const Tensor2<Scalar>& a, Legs la, const Tensor2<Scalar>& b, Legs lb) {
  Tensor3<Scalar> out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      // a-term as three slots with identity marked by nullopt.
      std::array<std::optional<Basis>, 3> sa, sb;
      sa[la.first - 1] = ka[0];
      sa[la.second - 1] = ka[1];
      sb[lb.first - 1] = kb[0];
      sb[lb.second - 1] = kb[1];
      for (int s = 0; s < 3; ++s) {
        if (!sa[s] || !sb[s]) continue;
        V br = oracle_bracket(*sa[s], *sb[s]);
        for (Basis z : kBasis) {
          if (sgn(br.at(z)) == 0) continue;
          std::array<Basis, 3> key{};
          for (int i = 0; i < 3; ++i) key[i] = i == s ? z : (sa[i] ? *sa[i] : *sb[i]);
          out.add(key, ca * cb * br.at(z));
        }
      }
    }
  return out;
}

}  // namespace

TEST_CASE("bracket examples and matrix oracle") {
  CHECK(bracket(bv(Basis::H), bv(Basis::E)) == Scalar(2) * bv(Basis::E));
  CHECK(bracket(bv(Basis::E), bv(Basis::F)) == bv(Basis::H));
  CHECK(bracket(bv(Basis::E), bv(Basis::E)).is_zero());
  for (Basis x : kBasis)
    for (Basis y : kBasis) CHECK(bracket(bv(x), bv(y)) == oracle_bracket(x, y));
}

TEST_CASE("trace form matches the fundamental representation") {
  CHECK(trace_form(bv(Basis::H), bv(Basis::H)) == 2);
  CHECK(trace_form(bv(Basis::E), bv(Basis::F)) == 1);
  CHECK(trace_form(bv(Basis::E), bv(Basis::H)) == 0);
  for (Basis x : kBasis)
    for (Basis y : kBasis) {
      CHECK(trace_form(bv(x), bv(y)) == oracle_trace(x, y));
      CHECK(basis_trace(x, y) == oracle_trace(x, y));
    }
}

TEST_CASE("Jacobi identity and invariance on all basis triples") {
  for (Basis x : kBasis)
    for (Basis y : kBasis)
      for (Basis z : kBasis) {
        V jac = bracket(bv(x), bracket(bv(y), bv(z))) + bracket(bv(y), bracket(bv(z), bv(x))) +
                bracket(bv(z), bracket(bv(x), bv(y)));
        CHECK(jac.is_zero());
        CHECK(trace_form(bracket(bv(x), bv(y)), bv(z)) + trace_form(bv(y), bracket(bv(x), bv(z))) == 0);
      }
}

TEST_CASE("casimir symmetry and ad-invariance") {
  const auto t = casimir<Scalar>();
  CHECK(swap_legs(t) == t);
  for (Basis x : kBasis) {
    // [x (x) 1 + 1 (x) x, t]
    Tensor2<Scalar> acc;
    for (const auto& [k, c] : t.terms()) {
      V a = bracket(bv(x), bv(k[0]));
      V b = bracket(bv(x), bv(k[1]));
      for (Basis z : kBasis) {
        acc.add({z, k[1]}, c * a.at(z));
        acc.add({k[0], z}, c * b.at(z));
      }
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("leg_bracket examples") {
  auto ef = elementary<Scalar>(Basis::E, Basis::F);
  auto fe = elementary<Scalar>(Basis::F, Basis::E);
  Tensor3<Scalar> want;
  want.add({Basis::H, Basis::F, Basis::E}, 1);
  CHECK(leg_bracket(ef, {1, 2}, fe, {1, 3}) == want);
  auto hh = elementary<Scalar>(Basis::H, Basis::H);
  CHECK(leg_bracket(hh, {1, 2}, hh, {1, 3}).is_zero());
  CHECK_THROWS_AS(leg_bracket(hh, {1, 2}, hh, {1, 2}), LegClash);
  CHECK_THROWS_AS(leg_bracket(hh, {1, 2}, hh, {2, 1}), LegClash);
}

TEST_CASE("leg_bracket agrees with the brute-force oracle") {
  const auto t = casimir<Scalar>();
  Tensor2<Scalar> skew;
  skew.add({Basis::E, Basis::F}, 2);
  skew.add({Basis::F, Basis::E}, -2);
  Tensor2<Scalar> mixed = t + Scalar(3) * elementary<Scalar>(Basis::H, Basis::E) - elementary<Scalar>(Basis::F, Basis::H);
  const std::array<std::pair<Legs, Legs>, 6> layouts{{{{1, 2}, {1, 3}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 3}},
                                                       {{1, 3}, {1, 2}}, {{2, 3}, {1, 2}}, {{2, 3}, {1, 3}}}};
  const std::array<const Tensor2<Scalar>*, 3> samples{&t, &skew, &mixed};
  for (const auto* a : samples)
    for (const auto* b : samples)
      for (const auto& [la, lb] : layouts) CHECK(leg_bracket(*a, la, *b, lb) == oracle_leg_bracket(*a, la, *b, lb));
  // [t^12, t^13] is nonzero and matches the oracle.
  CHECK_FALSE(leg_bracket(t, {1, 2}, t, {1, 3}).is_zero());
}

TEST_CASE("pair_first_leg examples") {
  ConventionProfile p = kClassicalProfile;
  auto T = casimir<Scalar>().map_coefficients([](const Scalar& c) { return RatFn(c); });
  LoopElt h = LoopElt::monomial(Basis::H, 0);
  const RatFn inv_l = RatFn::var(Var::L).inverse();
  CHECK(pair_first_leg(T, h, inv_l, Point::zero(), p) == Scalar(2) * h);

  auto ef = elementary<RatFn>(Basis::E, Basis::F);
  CHECK(pair_first_leg(ef, h, inv_l, Point::zero(), p).is_zero());

  auto fe = elementary<RatFn>(Basis::F, Basis::E);
  const RatFn density = RatFn::fraction(MPoly(1), MPoly(1) - MPoly::var(Var::L, 2));
  LoopElt e_inv = LoopElt::monomial(Basis::E, -1);
  // l^{-1}/(1-l^2) = -l^{-3} - l^{-5} - ... at infinity: no l^{-1} term, whatever the sign.
  // At zero it is l^{-1} + l + ..., with residue 1.
  for (int sigma : {-1, 1}) {
    p.sigma_inf = sigma;
    CHECK(pair_first_leg(fe, e_inv, density, Point::infinity(), p).is_zero());
    CHECK(pair_first_leg(fe, e_inv, density, Point::zero(), p) == LoopElt::monomial(Basis::E, 0));
  }
  // The sign does show at infinity once the integrand has an l^{-1} term: l/(1-l^2).
  for (int sigma : {-1, 1}) {
    p.sigma_inf = sigma;
    CHECK(pair_first_leg(fe, LoopElt::monomial(Basis::E, 1), density, Point::infinity(), p) ==
          Scalar(-sigma) * LoopElt::monomial(Basis::E, 0));
  }
}

TEST_CASE("pair_first_leg with swapped legs contracts the second leg") {
  ConventionProfile p = kClassicalProfile;
  p.leg_order = LegOrder::SecondInFirstOut;
  auto T = elementary<RatFn>(Basis::E, Basis::F, RatFn::var(Var::L) * RatFn::var(Var::M).inverse());
  LoopElt A = LoopElt::monomial(Basis::E, 0);
  // <f, e> = 1 and res_m (l/m) dm = l.
  CHECK(pair_first_leg(T, A, RatFn(1), Point::zero(), p) == LoopElt::monomial(Basis::E, 1));
}

TEST_CASE("loop elements") {
  LoopElt a = LoopElt::monomial(Basis::E, 1) - LoopElt::monomial(Basis::E, -1);
  LoopElt b = LoopElt::monomial(Basis::F, 1);
  LoopElt want = LoopElt::monomial(Basis::H, 2) - LoopElt::monomial(Basis::H, 0);
  CHECK(loop_bracket(a, b) == want);
  CHECK(a.evaluate(1).is_zero());
  CHECK(a.evaluate(-1).is_zero());
  auto tr = loop_trace(a, b);
  CHECK(tr.size() == 2);
  CHECK(tr.at(2) == 1);
  CHECK(tr.at(0) == -1);
  CHECK(laurent_of(a.component_fn(Basis::E), Var::L) == a.component(Basis::E));
}
