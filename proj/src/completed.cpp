#include "cybelab/completed.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cybelab/errors.hpp"

namespace cybelab {

Rect Rect::intersect(const Rect& o) const {
  return {std::max(lo1, o.lo1), std::min(hi1, o.hi1), std::max(lo2, o.lo2), std::min(hi2, o.hi2)};
}

bool Box::contains(const std::array<int, 3>& d) const {
  for (int k = 0; k < 3; ++k)
    if (d[k] < lo[k] || d[k] > hi[k]) return false;
  return true;
}

std::size_t Box::size() const {
  std::size_t n = 1;
  for (int k = 0; k < 3; ++k) n *= static_cast<std::size_t>(std::max(0, hi[k] - lo[k] + 1));
  return n;
}

namespace {

std::string bidegree_string(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

std::optional<std::set<int>> support_union(const std::optional<std::set<int>>& a, const std::optional<std::set<int>>& b) {
  if (!a || !b) return std::nullopt;
  std::set<int> out = *a;
  out.insert(b->begin(), b->end());
  return out;
}

}  // namespace

Tensor2<MPoly> CompletedTensor2::at(int i, int j) const {
  if (!window_.contains(i, j)) throw WindowTooNarrow("bidegree " + bidegree_string(i, j) + " outside completed-tensor window");
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? Tensor2<MPoly>() : it->second;
}

void CompletedTensor2::add(int i, int j, const Tensor2<MPoly>& t) {
  if (!window_.contains(i, j)) throw std::out_of_range("bidegree " + bidegree_string(i, j) + " outside window");
  if (t.is_zero()) return;
  auto& slot = coeffs_[{i, j}];
  slot += t;
  if (slot.is_zero()) coeffs_.erase({i, j});
}

bool CompletedTensor2::is_zero() const { return coeffs_.empty(); }

CompletedTensor2 operator+(const CompletedTensor2& a, const CompletedTensor2& b) {
  CompletedTensor2 out(a.window_.intersect(b.window_), support_union(a.support_, b.support_));
  for (const auto* s : {&a, &b})
    for (const auto& [d, t] : s->coeffs_)
      if (out.window_.contains(d.first, d.second)) out.add(d.first, d.second, t);
  return out;
}

CompletedTensor2 operator-(const CompletedTensor2& a, const CompletedTensor2& b) { return a + MPoly(Scalar(-1)) * b; }

CompletedTensor2 operator*(const MPoly& c, const CompletedTensor2& a) {
  if (c.is_zero()) return CompletedTensor2(a.window_, std::set<int>{});
  CompletedTensor2 out(a.window_, a.support_);
  for (const auto& [d, t] : a.coeffs_) out.add(d.first, d.second, c * t);
  return out;
}

CompletedTensor2 CompletedTensor2::restricted(const Rect& r) const {
  CompletedTensor2 out(window_.intersect(r), support_);
  for (const auto& [d, t] : coeffs_)
    if (out.window_.contains(d.first, d.second)) out.coeffs_.emplace(d, t);
  return out;
}

Tensor3<MPoly> CompletedTensor3::at(const std::array<int, 3>& d) const {
  if (!window_.contains(d)) throw WindowTooNarrow("tridegree outside completed-tensor window");
  auto it = coeffs_.find(d);
  return it == coeffs_.end() ? Tensor3<MPoly>() : it->second;
}

void CompletedTensor3::add(const std::array<int, 3>& d, const Tensor3<MPoly>& t) {
  if (t.is_zero()) return;
  auto& slot = coeffs_[d];
  slot += t;
  if (slot.is_zero()) coeffs_.erase(d);
}

CompletedTensor3 operator-(const CompletedTensor3& a, const CompletedTensor3& b) {
  Box w;
  for (int k = 0; k < 3; ++k) {
    w.lo[k] = std::max(a.window_.lo[k], b.window_.lo[k]);
    w.hi[k] = std::min(a.window_.hi[k], b.window_.hi[k]);
  }
  CompletedTensor3 out(w);
  for (const auto& [d, t] : a.coeffs_)
    if (w.contains(d)) out.add(d, t);
  for (const auto& [d, t] : b.coeffs_)
    if (w.contains(d)) out.add(d, MPoly(Scalar(-1)) * t);
  return out;
}

namespace {

// Numerator monomials l^a m^b of the rational shapes 1, l + m, l m.
std::vector<std::pair<int, int>> shape_numerator(int i) {
  switch (i) {
    case 1: return {{0, 0}};
    case 2: return {{1, 0}, {0, 1}};
    case 3: return {{1, 1}};
  }
  throw std::invalid_argument("pencil index must be 1, 2 or 3");
}

// 1/(l - m) at |l| > |m|: sum_{k>=0} m^k l^{-k-1}.
bool upper_region(int u, int v) { return u <= -1 && v >= 0 && u + v == -1; }
// 1/(m - l) at |m| > |l|: sum_{k>=0} l^k m^{-k-1}.
bool lower_region(int u, int v) { return u >= 0 && v <= -1 && u + v == -1; }

// Expansion of p_i/(l - m) in the upper region and of p_i/(m - l) in the lower one.
std::pair<int, int> regional(int shape, int i, int j) {
  int plus = 0, minus = 0;
  for (const auto& [a, b] : shape_numerator(shape)) {
    plus += upper_region(i - a, j - b) ? 1 : 0;
    minus += lower_region(i - a, j - b) ? 1 : 0;
  }
  return {plus, minus};
}

Tensor2<MPoly> casimir_scaled(const Scalar& c) {
  return casimir<Scalar>().map_coefficients([&](const Scalar& s) { return MPoly(s * c); });
}

CompletedTensor2 build_shape(int shape, const Rect& window, int sign) {
  CompletedTensor2 out(window, std::set<int>{shape - 2});
  for (int i = window.lo1; i <= window.hi1; ++i)
    for (int j = window.lo2; j <= window.hi2; ++j) {
      if (i + j != shape - 2) continue;
      const auto [plus, minus] = regional(shape, i, j);
      const int c = plus + sign * minus;
      if (c != 0) out.add(i, j, casimir_scaled(Scalar(c, 2)));
    }
  return out;
}

}  // namespace

CompletedTensor2 build_rbar(int i, const Rect& window) {
  CompletedTensor2 out = build_shape(i, window, -1);
  auto put = [&](int u, int v, Basis x, Basis y, int c) {
    if (window.contains(u, v)) out.add(u, v, elementary<MPoly>(x, y, MPoly(Scalar(c))));
  };
  if (i == 2) {
    put(0, 0, Basis::E, Basis::F, 2);
    put(0, 0, Basis::F, Basis::E, -2);
  }
  if (i == 3) {
    put(1, 0, Basis::E, Basis::F, 2);
    put(0, 1, Basis::F, Basis::E, -2);
  }
  return out;
}

CompletedTensor2 build_t(int i, const Rect& window) { return build_shape(i, window, 1); }

CompletedTensor2 rbar_pencil(const PencilCoeffs& a, const Rect& window) {
  return a.a1 * build_rbar(1, window) + a.a2 * build_rbar(2, window) + a.a3 * build_rbar(3, window);
}

CompletedTensor2 t_pencil(const PencilCoeffs& a, const Rect& window) {
  return a.a1 * build_t(1, window) + a.a2 * build_t(2, window) + a.a3 * build_t(3, window);
}

std::optional<int> homogeneity_degree(const CompletedTensor2& s) {
  std::optional<int> d;
  for (const auto& [bd, t] : s.coeffs()) {
    const int k = bd.first + bd.second;
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

Rect operand_window(const Box& out, const CompletedTensor2& a, const CompletedTensor2& b) {
  int reach = 0, dmax = 0;
  for (int k = 0; k < 3; ++k) reach = std::max({reach, std::abs(out.lo[k]), std::abs(out.hi[k])});
  for (const auto* s : {&a, &b}) {
    if (!s->degree_support()) throw InfiniteSum("operand without degree support");
    for (int d : *s->degree_support()) dmax = std::max(dmax, std::abs(d));
  }
  return Rect::square(2 * reach + dmax);
}

Tensor3<MPoly> leg_product_at(const CompletedTensor2& x, Legs lx, const CompletedTensor2& y, Legs ly,
                              const std::array<int, 3>& d) {
  if (!x.degree_support() || !y.degree_support())
    throw InfiniteSum("intermediate-degree sum is not bounded: operand has no degree support");
  int shared = 0;
  for (int p : {lx.first, lx.second})
    if (p == ly.first || p == ly.second) shared = p;
  if (shared == 0) throw LegClash("leg products need one shared leg");
  const int fx = lx.first == shared ? lx.second : lx.first;
  const int fy = ly.first == shared ? ly.second : ly.first;
  const auto deg = [&](int leg) { return d[static_cast<std::size_t>(leg - 1)]; };
  Tensor3<MPoly> out;
  for (int D : *x.degree_support()) {
    const int xs = D - deg(fx);
    const int ys = deg(shared) - xs;
    const int xi = lx.first == shared ? xs : deg(fx);
    const int xj = lx.first == shared ? deg(fx) : xs;
    const Tensor2<MPoly> xt = x.at(xi, xj);
    if (xt.is_zero()) continue;
    const int yi = ly.first == shared ? ys : deg(fy);
    const int yj = ly.first == shared ? deg(fy) : ys;
    const Tensor2<MPoly> yt = y.at(yi, yj);
    if (yt.is_zero()) continue;
    out += leg_bracket(xt, lx, yt, ly);
  }
  return out;
}

CompletedTensor3 series_mixed_bracket(const CompletedTensor2& a, const CompletedTensor2& b, const Box& out) {
  static constexpr std::array<std::pair<Legs, Legs>, 3> kPairs{{{{1, 2}, {1, 3}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 3}}}};
  CompletedTensor3 res(out);
  std::array<int, 3> d{};
  for (d[0] = out.lo[0]; d[0] <= out.hi[0]; ++d[0])
    for (d[1] = out.lo[1]; d[1] <= out.hi[1]; ++d[1])
      for (d[2] = out.lo[2]; d[2] <= out.hi[2]; ++d[2]) {
        Tensor3<MPoly> acc;
        for (const auto& [p, q] : kPairs) {
          acc += leg_product_at(a, p, b, q, d);
          acc += leg_product_at(b, p, a, q, d);
        }
        res.add(d, acc);
      }
  return res;
}

Lemma3Report lemma3_check(const PencilCoeffs& a, int n) {
  const Box box = Box::cube(n);
  const CompletedTensor2 probe = rbar_pencil(PencilCoeffs::symbolic(), Rect::square(0));
  const Rect w = operand_window(box, probe, probe);
  const CompletedTensor2 r = rbar_pencil(a, w), t = t_pencil(a, w);
  const CompletedTensor3 lhs = series_mixed_bracket(r, r, box);
  const CompletedTensor3 rhs = series_mixed_bracket(t, t, box);
  Lemma3Report rep;
  rep.window = n;
  rep.checked = box.size();
  rep.nonzero_lhs = lhs.coeffs().size();
  const CompletedTensor3 diff = lhs - rhs;
  rep.diff_count = diff.coeffs().size();
  for (const auto& [d, t3] : diff.coeffs()) {
    if (rep.diffs.size() >= 5) break;
    rep.diffs.push_back({d, lhs.at(d).to_string(), rhs.at(d).to_string()});
  }
  rep.equal = rep.diff_count == 0;
  std::set<std::array<int, 3>> keys;
  for (const auto& [d, t3] : lhs.coeffs()) keys.insert(d);
  for (const auto& [d, t3] : rhs.coeffs()) keys.insert(d);
  for (const auto& d : keys)
    if (!(lhs.at(d) + rhs.at(d)).is_zero()) ++rep.opposite_diff_count;
  rep.opposite = rep.opposite_diff_count == 0;
  return rep;
}

namespace {

// A factor x y/(x - y), or 1/(y^{-1} - x^{-1}), expanded as sum_k c x^{-k} y^{k+1}.
struct Factor {
  int x, y;  // variable slots 0, 1, 2
  int sign;  // +1 or -1
};

// Literal: the factor as written. CommonRegion: reoriented so that x precedes y in l > m > n.
Factor orient(int x, int y, CyclicReading reading) {
  if (reading == CyclicReading::CommonRegion && x > y) return {y, x, -1};
  return {x, y, 1};
}

// Exponent contribution of term k of the factor; the rational and inverse shapes
// produce it through different expansions.
std::array<int, 3> factor_term(CyclicShape shape, const Factor& f, int k) {
  std::array<int, 3> e{0, 0, 0};
  if (shape == CyclicShape::Rational) {
    // x y * sum_k y^k x^{-k-1}
    e[static_cast<std::size_t>(f.x)] += 1 - (k + 1);
    e[static_cast<std::size_t>(f.y)] += 1 + k;
  } else {
    // 1/(A - B) = sum_k B^k / A^{k+1} with A = y^{-1}, B = x^{-1}
    e[static_cast<std::size_t>(f.x)] += -k;
    e[static_cast<std::size_t>(f.y)] += k + 1;
  }
  return e;
}

void accumulate_product(CyclicShape shape, const Factor& f, const Factor& g, int n, std::map<std::array<int, 3>, Scalar>& acc) {
  const int kmax = n + 2;
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = 0; k2 <= kmax; ++k2) {
      auto a = factor_term(shape, f, k1), b = factor_term(shape, g, k2);
      std::array<int, 3> d{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
      if (!Box::cube(n).contains(d)) continue;
      acc[d] += Scalar(f.sign * g.sign);
    }
}

std::array<std::pair<Factor, Factor>, 3> cyclic_terms(CyclicReading reading) {
  // (l,m)(m,n) + (m,n)(n,l) + (n,l)(l,m)
  return {{{orient(0, 1, reading), orient(1, 2, reading)},
           {orient(1, 2, reading), orient(2, 0, reading)},
           {orient(2, 0, reading), orient(0, 1, reading)}}};
}

}  // namespace

CyclicReport cyclic_identity_check(CyclicShape shape, int n, CyclicReading reading) {
  std::map<std::array<int, 3>, Scalar> acc;
  for (const auto& [f, g] : cyclic_terms(reading)) accumulate_product(shape, f, g, n, acc);
  CyclicReport rep{shape, reading, n, true, 0, {}};
  for (const auto& [d, c] : acc) {
    if (sgn(c) == 0) continue;
    ++rep.nonzero;
    if (rep.samples.size() < 5) rep.samples.emplace_back(d, c);
  }
  rep.vanishes = rep.nonzero == 0;
  return rep;
}

Scalar cyclic_single_term(CyclicShape shape, const std::array<int, 3>& d, CyclicReading reading) {
  std::map<std::array<int, 3>, Scalar> acc;
  int n = 0;
  for (int x : d) n = std::max(n, std::abs(x));
  const auto terms = cyclic_terms(reading);
  accumulate_product(shape, terms[0].first, terms[0].second, n, acc);
  auto it = acc.find(d);
  return it == acc.end() ? Scalar(0) : it->second;
}

namespace {

// binom(a, k) for integer a and k >= 0.
Scalar binomial(int a, int k) {
  Scalar out = 1;
  for (int r = 0; r < k; ++r) out = out * Scalar(a - r) / Scalar(r + 1);
  return out;
}

}  // namespace

CompletedTensor2 shift_series(const CompletedTensor2& s, const Rect& out) {
  if (!s.degree_support()) throw InfiniteSum("shift of a tensor without degree support");
  CompletedTensor2 res(out, std::nullopt);
  for (int i = out.lo1; i <= out.hi1; ++i)
    for (int j = out.lo2; j <= out.hi2; ++j)
      for (int D : *s.degree_support()) {
        const int n = D - i - j;
        if (n < 0) continue;
        const MPoly en = MPoly::var(Var::E, static_cast<unsigned>(n));
        for (int n1 = 0; n1 <= n; ++n1) {
          const int n2 = n - n1;
          const Tensor2<MPoly> src = s.at(i + n1, j + n2);
          if (src.is_zero()) continue;
          const Scalar c = binomial(i + n1, n1) * binomial(j + n2, n2);
          if (sgn(c) != 0) res.add(i, j, (MPoly(c) * en) * src);
        }
      }
  return res;
}

}  // namespace cybelab
