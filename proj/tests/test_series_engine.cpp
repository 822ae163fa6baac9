#include <doctest.h>

#include "cybelab/completed.hpp"
#include "cybelab/errors.hpp"
#include "cybelab/series.hpp"

using namespace cybelab;

namespace {

Tensor2<MPoly> t_scaled(const Scalar& c) {
  Tensor2<MPoly> t;
  t.add({Basis::H, Basis::H}, MPoly(c));
  t.add({Basis::E, Basis::F}, MPoly(2 * c));
  t.add({Basis::F, Basis::E}, MPoly(2 * c));
  return t;
}

bool equal_on(const CompletedTensor2& a, const CompletedTensor2& b, const Rect& r) {
  for (int i = r.lo1; i <= r.hi1; ++i)
    for (int j = r.lo2; j <= r.hi2; ++j)
      if (!(a.at(i, j) == b.at(i, j))) return false;
  return true;
}

// Bidegree coefficients of a rational function of (l, m) expanded at `first` = infinity:
// coefficient of first^k is a Laurent polynomial in the other variable.
std::map<std::pair<int, int>, Scalar> regional_expansion(const RatFn& f, Var first, int n) {
  const Var other = first == Var::L ? Var::M : Var::L;
  std::map<std::pair<int, int>, Scalar> out;
  SeriesWindow w = expand(f, first, Point::infinity(), -n, n);
  for (const auto& [k, c] : w.coeffs())
    for (const auto& [j, v] : laurent_of(c, other)) {
      if (std::abs(j) > n) continue;
      if (first == Var::L)
        out[{k, j}] += v;
      else
        out[{j, k}] += v;
    }
  return out;
}

const std::array<MPoly, 3> kShapes{MPoly(1), MPoly::var(Var::L) + MPoly::var(Var::M),
                                   MPoly::var(Var::L) * MPoly::var(Var::M)};

Tensor2<MPoly> tail_of(int i, int u, int v) {
  Tensor2<MPoly> t;
  if (i == 2 && u == 0 && v == 0) {
    t.add({Basis::E, Basis::F}, MPoly(2));
    t.add({Basis::F, Basis::E}, MPoly(-2));
  }
  if (i == 3 && u == 1 && v == 0) t.add({Basis::E, Basis::F}, MPoly(2));
  if (i == 3 && u == 0 && v == 1) t.add({Basis::F, Basis::E}, MPoly(-2));
  return t;
}

// Naive oracle: all stored coefficient pairs, every ordered leg pair, kept if inside the box.
CompletedTensor3 brute_mixed(const CompletedTensor2& a, const CompletedTensor2& b, const Box& box) {
  static const std::array<std::pair<Legs, Legs>, 3> pairs{{{{1, 2}, {1, 3}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 3}}}};
  CompletedTensor3 out(box);
  auto place = [](Legs l, std::pair<int, int> d) {
    std::array<int, 3> e{0, 0, 0};
    e[static_cast<std::size_t>(l.first - 1)] += d.first;
    e[static_cast<std::size_t>(l.second - 1)] += d.second;
    return e;
  };
  for (const auto& [p, q] : pairs)
    for (const auto* x : {&a, &b}) {
      const auto* y = x == &a ? &b : &a;
      for (const auto& [dx, tx] : x->coeffs())
        for (const auto& [dy, ty] : y->coeffs()) {
          auto ex = place(p, dx), ey = place(q, dy);
          std::array<int, 3> d{ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]};
          if (box.contains(d)) out.add(d, leg_bracket(tx, p, ty, q));
        }
    }
  return out;
}

bool same3(const CompletedTensor3& a, const CompletedTensor3& b) { return (a - b).is_zero(); }

}  // namespace

TEST_CASE("build_rbar and build_t examples") {
  const Rect w = Rect::square(8);
  auto r1 = build_rbar(1, w);
  CHECK(r1.at(-1, 0) == t_scaled(Scalar(1, 2)));
  CHECK(r1.at(0, -1) == t_scaled(Scalar(-1, 2)));
  auto r3 = build_rbar(3, w);
  // Tail 2l e(x)f plus the lower-region term -1/2 t at (1, 0).
  CHECK((r3.at(1, 0) - t_scaled(Scalar(-1, 2))).coefficient({Basis::E, Basis::F}) == MPoly(2));
  auto t1 = build_t(1, w);
  CHECK(t1.at(-1, 0) == t_scaled(Scalar(1, 2)));
  CHECK(t1.at(0, -1) == t_scaled(Scalar(1, 2)));
  auto t2 = build_t(2, w);
  for (int k = -7; k <= 7; ++k) CHECK(t2.at(k, -k) == t_scaled(1));
  CHECK_THROWS_AS(r1.at(9, 0), WindowTooNarrow);
}

TEST_CASE("homogeneity of rbar_i and t_i") {
  const Rect w = Rect::square(8);
  for (int i = 1; i <= 3; ++i) {
    CAPTURE(i);
    REQUIRE(homogeneity_degree(build_rbar(i, w)).has_value());
    CHECK(*homogeneity_degree(build_rbar(i, w)) == i - 2);
    CHECK(*homogeneity_degree(build_t(i, w)) == i - 2);
  }
  CompletedTensor2 mixed = build_t(1, w) + build_t(2, w);
  CHECK_FALSE(homogeneity_degree(mixed).has_value());
}

TEST_CASE("regional expansions agree with exact-arith expand") {
  const int n = 6;
  const Rect w = Rect::square(n);
  const MPoly diff = MPoly::var(Var::L) - MPoly::var(Var::M);
  for (int i = 1; i <= 3; ++i) {
    CAPTURE(i);
    const auto& p = kShapes[static_cast<std::size_t>(i - 1)];
    auto up = regional_expansion(RatFn::fraction(p, diff), Var::L, n);
    auto down = regional_expansion(RatFn::fraction(p, -diff), Var::M, n);
    auto rbar = build_rbar(i, w), t = build_t(i, w);
    for (int u = -n; u <= n; ++u)
      for (int v = -n; v <= n; ++v) {
        const Scalar a = up.count({u, v}) ? up[{u, v}] : Scalar(0);
        const Scalar b = down.count({u, v}) ? down[{u, v}] : Scalar(0);
        CHECK(rbar.at(u, v) - tail_of(i, u, v) == t_scaled((a - b) / 2));
        CHECK(t.at(u, v) == t_scaled((a + b) / 2));
      }
  }
}

TEST_CASE("series_mixed_bracket against the naive double sum") {
  const Rect w = Rect::square(8);
  const Box box = Box::cube(2);
  const std::array<CompletedTensor2, 4> ops{build_rbar(1, w), build_rbar(3, w), build_t(1, w),
                                            rbar_pencil(PencilCoeffs::symbolic(), w)};
  for (const auto& a : ops)
    for (const auto& b : ops) CHECK(same3(series_mixed_bracket(a, b, box), brute_mixed(a, b, box)));
  // Symmetry on rbar1, rbar3.
  CHECK(same3(series_mixed_bracket(ops[0], ops[1], box), series_mixed_bracket(ops[1], ops[0], box)));
  CompletedTensor2 zero(w, std::set<int>{});
  CHECK(series_mixed_bracket(zero, ops[1], box).is_zero());
}

TEST_CASE("[t1^12, t1^13] at (-2,0,0) has one contributing pair") {
  const Rect w = Rect::square(6);
  auto t1 = build_t(1, w);
  // Only t1 at (-1,0) on legs (1,2) and t1 at (-1,0) on legs (1,3) reach (-2,0,0).
  const auto got = leg_product_at(t1, {1, 2}, t1, {1, 3}, {-2, 0, 0});
  const auto want = leg_bracket(t_scaled(Scalar(1, 2)), {1, 2}, t_scaled(Scalar(1, 2)), {1, 3});
  CHECK(got == want);
  CHECK_FALSE(got.is_zero());
}

TEST_CASE("finiteness and window guards") {
  CompletedTensor2 unknown(Rect::square(4), std::nullopt);
  auto t1 = build_t(1, Rect::square(4));
  CHECK_THROWS_AS(series_mixed_bracket(unknown, t1, Box::cube(1)), InfiniteSum);
  CHECK_THROWS_AS(series_mixed_bracket(t1, t1, Box::cube(4)), WindowTooNarrow);
  CHECK_NOTHROW(series_mixed_bracket(t1, t1, Box::cube(1)));
}

TEST_CASE("each regional expansion solves CYBE in the completion") {
  // rbar + t and t - rbar are single-region expansions of the rational pencil.
  const Box box = Box::cube(4);
  for (const auto& a : {PencilCoeffs::of(1, 0, -1), PencilCoeffs::of(1, 1, 1), PencilCoeffs::symbolic()}) {
    const CompletedTensor2 probe = rbar_pencil(PencilCoeffs::symbolic(), Rect::square(0));
    const Rect w = operand_window(box, probe, probe);
    const auto r = rbar_pencil(a, w), t = t_pencil(a, w);
    CHECK(series_mixed_bracket(r + t, r + t, box).is_zero());
    CHECK(series_mixed_bracket(t - r, t - r, box).is_zero());
  }
}

TEST_CASE("lemma3_check") {
  auto zero = lemma3_check(PencilCoeffs::of(0, 0, 0), 4);
  CHECK(zero.equal);
  CHECK(zero.nonzero_lhs == 0);
  // Expanding the two single-region identities gives [[r,r]] = -[[t,t]], so the
  // two sides agree only where both vanish.
  for (const auto& a : {PencilCoeffs::of(1, 0, -1), PencilCoeffs::of(0, 0, 1), PencilCoeffs::of(1, 1, 1)}) {
    auto rep = lemma3_check(a, 8);
    CHECK(rep.opposite);
    CHECK(rep.equal == (rep.nonzero_lhs == 0));
    CHECK(rep.checked == 17u * 17u * 17u);
  }
  auto sym = lemma3_check(PencilCoeffs::symbolic(), 5);
  CHECK(sym.opposite);
  CHECK(sym.diff_count == sym.nonzero_lhs);
}

TEST_CASE("cyclic identities") {
  for (auto shape : {CyclicShape::Rational, CyclicShape::Inverse}) {
    auto common = cyclic_identity_check(shape, 6, CyclicReading::CommonRegion);
    CHECK(common.vanishes);
    auto literal = cyclic_identity_check(shape, 6, CyclicReading::Literal);
    CHECK_FALSE(literal.vanishes);
    CHECK(sgn(cyclic_single_term(shape, {0, 1, 1})) != 0);
  }
}

TEST_CASE("cyclic terms against exact-arith expansion") {
  const int n = 3;
  const MPoly l = MPoly::var(Var::L), m = MPoly::var(Var::M);
  // x y/(x - y) at |x| > |y| as (deg x, deg y) -> coefficient.
  auto factor = regional_expansion(RatFn::fraction(l * m, l - m), Var::L, 2 * n + 2);
  auto coeff = [&](int u, int v) { return factor.count({u, v}) ? factor[{u, v}] : Scalar(0); };
  // First term F(l,m)F(m,n); the literal sum adds F(m,n)F(n,l) + F(n,l)F(l,m).
  for (int p = -n; p <= n; ++p)
    for (int q = -n; q <= n; ++q)
      for (int s = -n; s <= n; ++s) {
        Scalar first = 0;
        for (int a = -2 * n - 2; a <= 2 * n + 2; ++a) first += coeff(p, a) * coeff(q - a, s);
        CHECK(cyclic_single_term(CyclicShape::Rational, {p, q, s}) == first);
        CHECK(cyclic_single_term(CyclicShape::Inverse, {p, q, s}) == first);
      }
  auto lit = cyclic_identity_check(CyclicShape::Rational, n);
  std::size_t nonzero = 0;
  for (int p = -n; p <= n; ++p)
    for (int q = -n; q <= n; ++q)
      for (int s = -n; s <= n; ++s) {
        Scalar total = 0;
        for (int a = -2 * n - 2; a <= 2 * n + 2; ++a)
          total += coeff(p, a) * coeff(q - a, s) + coeff(q, a) * coeff(s - a, p) + coeff(s, a) * coeff(p - a, q);
        if (sgn(total) != 0) ++nonzero;
      }
  CHECK(lit.nonzero == nonzero);
}

TEST_CASE("shift compatibility on windows") {
  const Rect src = Rect::square(7), out = Rect::square(5);
  const MPoly E = MPoly::var(Var::E);
  auto shifted_t = shift_series(build_t(3, src), out);
  auto want_t = build_t(3, out) + E * build_t(2, out) + (E * E) * build_t(1, out);
  CHECK(equal_on(shifted_t, want_t, out));
  auto shifted_r = shift_series(build_rbar(3, src), out);
  auto want_r = build_rbar(3, out) + E * build_rbar(2, out) + (E * E) * build_rbar(1, out);
  CHECK(equal_on(shifted_r, want_r, out));
  CHECK_THROWS_AS(shift_series(build_t(3, Rect::square(3)), out), WindowTooNarrow);
}
