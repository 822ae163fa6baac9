#include "cybelab/series.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <vector>

#include "cybelab/errors.hpp"

namespace cybelab {

std::string ConventionProfile::to_string() const {
  std::ostringstream os;
  os << "sigma_inf=" << (sigma_inf > 0 ? "+1" : "-1")
     << ";b_point=" << (b_point == BPoint::Zero ? "zero" : "infinity")
     << ";leg_order=" << (leg_order == LegOrder::FirstInSecondOut ? "first-in-second-out"
                                                                  : "second-in-first-out");
  return os.str();
}

std::string Point::to_string() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Infinity: return "inf";
    case Kind::Finite: return value.get_str();
  }
  return "?";
}

SeriesWindow::SeriesWindow(Var var, Point point, int lo, int hi, bool complete_low, bool complete_high)
    : var_(var), point_(std::move(point)), lo_(lo), hi_(hi), complete_low_(complete_low),
      complete_high_(complete_high) {}

SeriesWindow SeriesWindow::laurent(Var var, Point point, const std::map<int, RatFn>& coeffs) {
  int lo = 0, hi = -1;
  if (!coeffs.empty()) {
    lo = coeffs.begin()->first;
    hi = coeffs.rbegin()->first;
  }
  SeriesWindow w(var, std::move(point), lo, hi, true, true);
  for (const auto& [k, c] : coeffs) w.set(k, c);
  return w;
}

bool SeriesWindow::knows(int k) const {
  if (k >= lo_ && k <= hi_) return true;
  if (k < lo_ && complete_low_) return true;
  if (k > hi_ && complete_high_) return true;
  return false;
}

RatFn SeriesWindow::coefficient(int k) const {
  if (!knows(k)) {
    std::ostringstream os;
    os << "degree " << k << " outside validity window [" << lo_ << "," << hi_ << "]";
    throw WindowTooNarrow(os.str());
  }
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? RatFn() : it->second;
}

void SeriesWindow::set(int k, RatFn c) {
  if (k < lo_ || k > hi_) throw std::out_of_range("coefficient degree outside window");
  if (c.is_zero())
    coeffs_.erase(k);
  else
    coeffs_[k] = std::move(c);
}

SeriesWindow SeriesWindow::restricted(int lo, int hi) const {
  const int nlo = std::max(lo, lo_), nhi = std::min(hi, hi_);
  SeriesWindow out(var_, point_, nlo, nhi, complete_low_ && nlo == lo_, complete_high_ && nhi == hi_);
  for (const auto& [k, c] : coeffs_)
    if (k >= nlo && k <= nhi) out.coeffs_.emplace(k, c);
  return out;
}

namespace {

void check_compatible(const SeriesWindow& a, const SeriesWindow& b) {
  if (a.var() != b.var() || !(a.point() == b.point()))
    throw std::invalid_argument("series windows expanded in different variables or points");
}

}  // namespace

SeriesWindow operator+(const SeriesWindow& a, const SeriesWindow& b) {
  check_compatible(a, b);
  int lo, hi;
  if (a.complete_low_ && b.complete_low_)
    lo = std::min(a.lo_, b.lo_);
  else if (a.complete_low_)
    lo = b.lo_;
  else if (b.complete_low_)
    lo = a.lo_;
  else
    lo = std::max(a.lo_, b.lo_);
  if (a.complete_high_ && b.complete_high_)
    hi = std::max(a.hi_, b.hi_);
  else if (a.complete_high_)
    hi = b.hi_;
  else if (b.complete_high_)
    hi = a.hi_;
  else
    hi = std::min(a.hi_, b.hi_);
  SeriesWindow out(a.var_, a.point_, lo, hi, a.complete_low_ && b.complete_low_,
                   a.complete_high_ && b.complete_high_);
  for (int k = lo; k <= hi; ++k) {
    RatFn c = a.coefficient(k) + b.coefficient(k);
    if (!c.is_zero()) out.coeffs_.emplace(k, std::move(c));
  }
  return out;
}

SeriesWindow operator-(const SeriesWindow& a, const SeriesWindow& b) { return a + b * RatFn(-1); }

SeriesWindow SeriesWindow::operator*(const RatFn& c) const {
  SeriesWindow out = *this;
  out.coeffs_.clear();
  for (const auto& [k, v] : coeffs_) {
    RatFn p = v * c;
    if (!p.is_zero()) out.coeffs_.emplace(k, std::move(p));
  }
  return out;
}

SeriesWindow operator*(const SeriesWindow& a, const SeriesWindow& b) {
  check_compatible(a, b);
  // A coefficient of the product is a finite sum only if both operands are
  // bounded on a common side.
  const bool low_ok = a.complete_low_ && b.complete_low_;
  const bool high_ok = a.complete_high_ && b.complete_high_;
  if (!low_ok && !high_ok)
    throw InfiniteSum("product of series bounded on opposite sides is not defined");
  int lo, hi;
  if (low_ok && high_ok) {
    lo = a.lo_ + b.lo_;
    hi = a.hi_ + b.hi_;
  } else if (low_ok) {
    lo = a.lo_ + b.lo_;
    hi = INT_MAX;
    if (!a.complete_high_) hi = std::min(hi, a.hi_ + b.lo_);
    if (!b.complete_high_) hi = std::min(hi, b.hi_ + a.lo_);
  } else {
    hi = a.hi_ + b.hi_;
    lo = INT_MIN;
    if (!a.complete_low_) lo = std::max(lo, a.lo_ + b.hi_);
    if (!b.complete_low_) lo = std::max(lo, b.lo_ + a.hi_);
  }
  SeriesWindow out(a.var_, a.point_, lo, hi, low_ok, high_ok);
  std::map<int, std::vector<RatFn>> acc;
  for (const auto& [i, ca] : a.coeffs_)
    for (const auto& [j, cb] : b.coeffs_)
      if (i + j >= lo && i + j <= hi) acc[i + j].push_back(ca * cb);
  for (auto& [k, parts] : acc) {
    RatFn c = sum(parts);
    if (!c.is_zero()) out.coeffs_.emplace(k, std::move(c));
  }
  return out;
}

std::string SeriesWindow::to_string() const {
  std::ostringstream os;
  os << "[" << var_name(var_) << " @ " << point_.to_string() << ", " << lo_ << ".." << hi_ << "] ";
  if (coeffs_.empty()) os << "0";
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << var_name(var_) << "^" << k;
  }
  return os.str();
}

namespace {

// Laurent polynomial in the local parameter x, coefficients free of var.
using LocalPoly = std::map<int, MPoly>;

LocalPoly to_local(const MPoly& p, Var var, const Point& point) {
  LocalPoly out;
  MPoly q = p;
  if (point.kind == Point::Kind::Finite && sgn(point.value) != 0)
    q = q.substitute(var, MPoly::var(var) + MPoly(point.value));
  for (auto& [k, c] : q.coefficients_in(var)) {
    const int deg = point.kind == Point::Kind::Infinity ? -static_cast<int>(k) : static_cast<int>(k);
    out[deg] += c;
  }
  return out;
}

// Dense series x^val * sum_{i < n} c[i] x^i.
struct LocalSeries {
  int val = 0;
  std::vector<RatFn> c;
};

LocalSeries from_local(const LocalPoly& p, int terms) {
  LocalSeries s;
  s.val = p.begin()->first;
  s.c.assign(static_cast<std::size_t>(terms), RatFn());
  for (const auto& [k, v] : p)
    if (k - s.val < terms) s.c[static_cast<std::size_t>(k - s.val)] = RatFn(v);
  return s;
}

LocalSeries inverse(const LocalPoly& p, int terms) {
  LocalSeries a = from_local(p, terms);
  LocalSeries s;
  s.val = -a.val;
  s.c.assign(static_cast<std::size_t>(terms), RatFn());
  const RatFn inv0 = a.c[0].inverse();
  s.c[0] = inv0;
  for (int n = 1; n < terms; ++n) {
    std::vector<RatFn> parts;
    for (int j = 1; j <= n; ++j)
      if (!a.c[static_cast<std::size_t>(j)].is_zero())
        parts.push_back(a.c[static_cast<std::size_t>(j)] * s.c[static_cast<std::size_t>(n - j)]);
    s.c[static_cast<std::size_t>(n)] = -(inv0 * sum(parts));
  }
  return s;
}

LocalSeries multiply(const LocalSeries& a, const LocalSeries& b, int terms) {
  LocalSeries out;
  out.val = a.val + b.val;
  out.c.assign(static_cast<std::size_t>(terms), RatFn());
  for (int n = 0; n < terms; ++n) {
    std::vector<RatFn> parts;
    for (int i = 0; i <= n; ++i) {
      const auto& x = a.c[static_cast<std::size_t>(i)];
      const auto& y = b.c[static_cast<std::size_t>(n - i)];
      if (!x.is_zero() && !y.is_zero()) parts.push_back(x * y);
    }
    out.c[static_cast<std::size_t>(n)] = sum(parts);
  }
  return out;
}

}  // namespace

SeriesWindow expand(const RatFn& f, Var var, const Point& point, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("expand: empty degree window");
  const bool at_inf = point.kind == Point::Kind::Infinity;
  if (f.is_zero()) return SeriesWindow(var, point, lo, hi, true, true);

  LocalPoly num = to_local(f.num(), var, point);
  std::vector<std::pair<LocalPoly, int>> atoms;
  int val = num.begin()->first;
  for (const auto& [a, k] : f.den()) {
    LocalPoly la = to_local(a, var, point);
    val -= k * la.begin()->first;
    atoms.emplace_back(std::move(la), k);
  }
  // Highest local degree needed.
  const int top = at_inf ? -lo : hi;
  SeriesWindow out = at_inf ? SeriesWindow(var, point, lo, hi, false, hi >= -val)
                            : SeriesWindow(var, point, lo, hi, lo <= val, false);
  if (top < val) {
    // Window lies entirely in the vanishing region: complete on both sides.
    return at_inf ? SeriesWindow(var, point, lo, hi, false, true) : SeriesWindow(var, point, lo, hi, true, false);
  }
  const int terms = top - val + 1;
  LocalSeries acc = from_local(num, terms);
  for (const auto& [la, k] : atoms) {
    LocalSeries inv = inverse(la, terms);
    for (int i = 0; i < k; ++i) acc = multiply(acc, inv, terms);
  }
  for (int i = 0; i < terms; ++i) {
    const int local_deg = acc.val + i;
    const int deg = at_inf ? -local_deg : local_deg;
    if (deg < lo || deg > hi) continue;
    if (!acc.c[static_cast<std::size_t>(i)].is_zero()) out.set(deg, acc.c[static_cast<std::size_t>(i)]);
  }
  return out;
}

RatFn residue(const SeriesWindow& s, int sigma_inf) {
  if (!s.knows(-1)) throw WindowTooNarrow("residue needs degree -1 inside the series window");
  RatFn c = s.coefficient(-1);
  return s.point().kind == Point::Kind::Infinity ? c * RatFn(sigma_inf) : c;
}

RatFn residue(const RatFn& f, Var var, const Point& point, int sigma_inf) {
  return residue(expand(f, var, point, -1, -1), sigma_inf);
}

RatFn residue(const RatFn& f, Var var, const Point& point, const ConventionProfile& profile) {
  return residue(f, var, point, profile.sigma_inf);
}

std::vector<Scalar> rational_poles(const RatFn& f, Var var) {
  std::vector<Scalar> out;
  for (const auto& [a, k] : f.den()) {
    if (!a.depends_on(var) || a.variables().size() != 1 || a.degree(var) != 1) continue;
    // monic: var + c0
    out.push_back(-a.constant_term());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cybelab
