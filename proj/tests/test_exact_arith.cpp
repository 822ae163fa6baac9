#include <random>

#include "doctest.h"

#include "cybelab/errors.hpp"
#include "cybelab/ratfn.hpp"
#include "cybelab/series.hpp"

using namespace cybelab;

namespace {

const RatFn l = RatFn::var(Var::L);
const RatFn m = RatFn::var(Var::M);
const RatFn E = RatFn::var(Var::E);

RatFn x_minus_y(const RatFn& a, const RatFn& b) { return a - b; }

}  // namespace

TEST_CASE("ratfn arithmetic cancels") {
  CHECK((RatFn(1) / (l - m) + RatFn(1) / (m - l)).is_zero());
  CHECK((l + m) / (l - m) * (l - m) == l + m);
  CHECK(l * m / (l - m) - m * m / (l - m) == m);
  RatFn r = l * m / (l - m) - m * m / (l - m);
  CHECK(r.is_polynomial());
}

TEST_CASE("canonical form is idempotent and numerator is reduced") {
  RatFn f = RatFn::fraction((MPoly::var(Var::L) - MPoly::var(Var::M)) * MPoly::var(Var::L),
                            (MPoly::var(Var::L) - MPoly::var(Var::M)).pow(2) * MPoly::var(Var::M));
  // (l-m) l / ((l-m)^2 m) = l / ((l-m) m)
  CHECK(f.den().size() == 2);
  CHECK(f.num() == MPoly::var(Var::L));
  CHECK(f.normalized().num() == f.num());
  CHECK(f.normalized().den() == f.den());
}

TEST_CASE("density 1 - l^2 splits into linear atoms") {
  RatFn d = RatFn(1) / (RatFn(1) - l * l);
  CHECK(d.den().size() == 2);
  CHECK(d * (RatFn(1) - l) * (RatFn(1) + l) == RatFn(1));
}

TEST_CASE("irreducible quadratic is an admissible atom") {
  MPoly q = MPoly::var(Var::L).pow(2) + MPoly(1);
  CHECK(is_admissible_atom(q));
  RatFn f = RatFn::fraction(MPoly(1), q);
  CHECK(f.den().size() == 1);
}

TEST_CASE("AtomEscape on a non-atom denominator") {
  // 1 + l*m is neither linear nor univariate.
  CHECK_THROWS_AS(RatFn::fraction(MPoly(1), MPoly(1) + MPoly::var(Var::L) * MPoly::var(Var::M)), AtomEscape);
}

TEST_CASE("substitute: reciprocal and affine shifts") {
  CHECK((RatFn(1) / l).substitute({{Var::L, reciprocal_image(Var::L)}}) == l);
  auto shift = std::map<Var, RatFn>{{Var::L, l + E}, {Var::M, m + E}};
  CHECK((l * m / (l - m)).substitute(shift) == (l * m + E * (l + m) + E * E) / (l - m));
  CHECK((RatFn(1) / (l - m)).substitute(shift) == RatFn(1) / (l - m));
  // simultaneous inversion keeps l - m admissible: 1/(1/l - 1/m) = l m / (m - l)
  auto inv = std::map<Var, RatFn>{{Var::L, reciprocal_image(Var::L)}, {Var::M, reciprocal_image(Var::M)}};
  CHECK((RatFn(1) / (l - m)).substitute(inv) == l * m / (m - l));
}

TEST_CASE("expand 1/(l-m) at infinity") {
  SeriesWindow s = expand(RatFn(1) / (l - m), Var::L, Point::infinity(), -4, -1);
  CHECK(s.coefficient(-1) == RatFn(1));
  CHECK(s.coefficient(-2) == m);
  CHECK(s.coefficient(-3) == m * m);
  CHECK(s.coefficient(-4) == m * m * m);
  CHECK(s.complete_high());
  CHECK(s.coefficient(3).is_zero());
  CHECK_THROWS_AS(s.coefficient(-5), WindowTooNarrow);
}

TEST_CASE("expand 1/(1-l^2) at zero") {
  SeriesWindow s = expand(RatFn(1) / (RatFn(1) - l * l), Var::L, Point::zero(), 0, 4);
  CHECK(s.coefficient(0) == RatFn(1));
  CHECK(s.coefficient(1).is_zero());
  CHECK(s.coefficient(2) == RatFn(1));
  CHECK(s.coefficient(3).is_zero());
  CHECK(s.coefficient(4) == RatFn(1));
  CHECK(s.coeffs().size() == 3);
}

TEST_CASE("expand reciprocal of l^{-1} is exactly l") {
  // (a1 l^{-1} + a2 + a3 l)^{-1} at a = (1,0,0)
  SeriesWindow s = expand(RatFn(1) / (RatFn(1) / l), Var::L, Point::infinity(), -6, 6);
  CHECK(s.coeffs().size() == 1);
  CHECK(s.coefficient(1) == RatFn(1));
}

TEST_CASE("residues") {
  CHECK(residue(RatFn(1) / l, Var::L, Point::zero(), -1) == RatFn(1));
  CHECK(residue(RatFn(1) / (l - RatFn(1)), Var::L, Point::at(1), -1) == RatFn(1));
  // (l - 1/l)/(1 - l^2) = -1/l: residue at infinity is sigma * (-1).
  RatFn f = (l - RatFn(1) / l) / (RatFn(1) - l * l);
  CHECK(f == RatFn(-1) / l);
  CHECK(residue(f, Var::L, Point::infinity(), -1) == RatFn(1));
  CHECK(residue(f, Var::L, Point::infinity(), +1) == RatFn(-1));
  SeriesWindow narrow = expand(f, Var::L, Point::zero(), 0, 3);
  CHECK_THROWS_AS(residue(narrow, -1), WindowTooNarrow);
}

namespace {

// Random catalog-flavoured sub-expressions.
RatFn random_ratfn(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, 5);
  const RatFn pieces[] = {l, m, l - m, l + m, l * m, RatFn(1)};
  const RatFn dens[] = {l - m, l, m, l + RatFn(1), l - RatFn(1), RatFn(1)};
  RatFn out;
  for (int i = 0; i < 2; ++i) out += RatFn(coef(rng)) * pieces[pick(rng)] / dens[pick(rng)];
  return out;
}

}  // namespace

TEST_CASE("field laws on randomized catalog sub-expressions") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    RatFn a = random_ratfn(rng), b = random_ratfn(rng), c = random_ratfn(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(((a + b) - b) == a);
    RatFn n = (a * b + c).normalized();
    CHECK(n.num() == (a * b + c).num());
  }
}

TEST_CASE("expansion correctness: multiply back by the denominator") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    RatFn f = random_ratfn(rng);
    if (f.is_zero()) continue;
    for (Point pt : {Point::zero(), Point::infinity()}) {
      SeriesWindow s = expand(f, Var::L, pt, -5, 5);
      RatFn den_poly(f.den_poly());
      // den is a polynomial in l: a Laurent polynomial, complete on both sides
      std::map<int, RatFn> d;
      for (auto& [k, c] : f.den_poly().coefficients_in(Var::L)) d[static_cast<int>(k)] = RatFn(c);
      SeriesWindow dw = SeriesWindow::laurent(Var::L, pt, d);
      SeriesWindow back = s * dw;
      std::map<int, RatFn> n;
      for (auto& [k, c] : f.num().coefficients_in(Var::L)) n[static_cast<int>(k)] = RatFn(c);
      for (int k = back.lo(); k <= back.hi(); ++k) {
        auto it = n.find(k);
        RatFn expect = it == n.end() ? RatFn() : it->second;
        CHECK(back.coefficient(k) == expect);
      }
    }
  }
}

TEST_CASE("residue theorem for the isotropy one-forms") {
  // <A,B>/(1 - l^2) for A = e(l - 1/l), B = f l^k: integrand (l^{k+1} - l^{k-1})/(1-l^2)
  for (int k = 0; k < 5; ++k) {
    RatFn integrand = (l.pow(k + 1) - l.pow(k - 1)) / (RatFn(1) - l * l) + RatFn(3) * l.pow(k) / (RatFn(1) - l * l);
    RatFn total = residue(integrand, Var::L, Point::zero(), -1);
    for (const auto& c : rational_poles(integrand, Var::L))
      if (sgn(c) != 0) total += residue(integrand, Var::L, Point::at(c), -1);
    total += residue(integrand, Var::L, Point::infinity(), -1);
    CHECK(total.is_zero());
  }
}
