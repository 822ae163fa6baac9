#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>

#include "cybelab/errors.hpp"
#include "cybelab/mpoly.hpp"
#include "cybelab/ratfn.hpp"

namespace cybelab {

enum class Basis : std::uint8_t { E = 0, F = 1, H = 2 };
inline constexpr std::array<Basis, 3> kBasis{Basis::E, Basis::F, Basis::H};

inline char basis_name(Basis b) { return "efh"[static_cast<int>(b)]; }

inline bool is_zero_value(const Scalar& s) { return sgn(s) == 0; }
inline bool is_zero_value(const MPoly& p) { return p.is_zero(); }
inline bool is_zero_value(const RatFn& f) { return f.is_zero(); }

inline std::string value_string(const Scalar& s) { return s.get_str(); }
inline std::string value_string(const MPoly& p) { return p.to_string(); }
inline std::string value_string(const RatFn& f) { return f.to_string(); }

/// c_e e + c_f f + c_h h over a coefficient ring.
template <class R>
struct Sl2Vec {
  R e{}, f{}, h{};

  static Sl2Vec basis(Basis b, const R& c = R(1)) {
    Sl2Vec v;
    v.at(b) = c;
    return v;
  }

  R& at(Basis b) { return b == Basis::E ? e : (b == Basis::F ? f : h); }
  const R& at(Basis b) const { return b == Basis::E ? e : (b == Basis::F ? f : h); }

  bool is_zero() const { return is_zero_value(e) && is_zero_value(f) && is_zero_value(h); }

  Sl2Vec& operator+=(const Sl2Vec& o) {
    e += o.e;
    f += o.f;
    h += o.h;
    return *this;
  }
  Sl2Vec& operator-=(const Sl2Vec& o) {
    e -= o.e;
    f -= o.f;
    h -= o.h;
    return *this;
  }
  friend Sl2Vec operator+(Sl2Vec a, const Sl2Vec& b) { return a += b; }
  friend Sl2Vec operator-(Sl2Vec a, const Sl2Vec& b) { return a -= b; }
  friend Sl2Vec operator*(const R& c, const Sl2Vec& v) { return {c * v.e, c * v.f, c * v.h}; }
  friend bool operator==(const Sl2Vec& a, const Sl2Vec& b) {
    return is_zero_value(a.e - b.e) && is_zero_value(a.f - b.f) && is_zero_value(a.h - b.h);
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (Basis b : kBasis) {
      if (is_zero_value(at(b))) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << value_string(at(b)) << ")" << basis_name(b);
    }
    if (first) os << "0";
    return os.str();
  }
};

/// [x, y] for basis elements, as a vector with integer coefficients.
/// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
template <class R>
Sl2Vec<R> basis_bracket(Basis x, Basis y) {
  Sl2Vec<R> out;
  if (x == y) return out;
  if (x == Basis::H && y == Basis::E) out.e = R(2);
  if (x == Basis::E && y == Basis::H) out.e = R(-2);
  if (x == Basis::H && y == Basis::F) out.f = R(-2);
  if (x == Basis::F && y == Basis::H) out.f = R(2);
  if (x == Basis::E && y == Basis::F) out.h = R(1);
  if (x == Basis::F && y == Basis::E) out.h = R(-1);
  return out;
}

template <class R>
Sl2Vec<R> bracket(const Sl2Vec<R>& x, const Sl2Vec<R>& y) {
  Sl2Vec<R> out;
  for (Basis a : kBasis) {
    if (is_zero_value(x.at(a))) continue;
    for (Basis b : kBasis) {
      if (is_zero_value(y.at(b))) continue;
      out += (x.at(a) * y.at(b)) * basis_bracket<R>(a, b);
    }
  }
  return out;
}

/// Trace form in the fundamental representation: <h,h> = 2, <e,f> = <f,e> = 1.
inline int basis_trace(Basis x, Basis y) {
  if (x == Basis::H && y == Basis::H) return 2;
  if ((x == Basis::E && y == Basis::F) || (x == Basis::F && y == Basis::E)) return 1;
  return 0;
}

template <class R>
R trace_form(const Sl2Vec<R>& x, const Sl2Vec<R>& y) {
  return x.e * y.f + x.f * y.e + R(2) * (x.h * y.h);
}

/// Sparse element of sl2^{(x) N} with coefficients in R; zero coefficients are never stored.
template <class R, std::size_t N>
class TensorN {
public:
  using Key = std::array<Basis, N>;

  void add(const Key& k, const R& c) {
    if (is_zero_value(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_value(it->second)) terms_.erase(it);
    }
  }

  const std::map<Key, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  R coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? R() : it->second;
  }

  TensorN& operator+=(const TensorN& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  TensorN& operator-=(const TensorN& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend TensorN operator+(TensorN a, const TensorN& b) { return a += b; }
  friend TensorN operator-(TensorN a, const TensorN& b) { return a -= b; }
  friend TensorN operator*(const R& c, const TensorN& t) {
    TensorN out;
    for (const auto& [k, v] : t.terms_) out.add(k, c * v);
    return out;
  }
  friend bool operator==(const TensorN& a, const TensorN& b) { return (a - b).is_zero(); }

  template <class F>
  auto map_coefficients(F&& fn) const {
    using Out = std::decay_t<decltype(fn(std::declval<const R&>()))>;
    TensorN<Out, N> out;
    for (const auto& [k, v] : terms_) out.add(k, fn(v));
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << value_string(v) << ")*";
      for (std::size_t i = 0; i < N; ++i) {
        if (i) os << "(x)";
        os << basis_name(k[i]);
      }
    }
    return os.str();
  }

private:
  std::map<Key, R> terms_;
};

template <class R>
using Tensor2 = TensorN<R, 2>;
template <class R>
using Tensor3 = TensorN<R, 3>;

template <class R>
Tensor2<R> elementary(Basis x, Basis y, const R& c = R(1)) {
  Tensor2<R> t;
  t.add({x, y}, c);
  return t;
}

/// Split Casimir t = h(x)h + 2(e(x)f + f(x)e).
template <class R>
Tensor2<R> casimir() {
  Tensor2<R> t;
  t.add({Basis::H, Basis::H}, R(1));
  t.add({Basis::E, Basis::F}, R(2));
  t.add({Basis::F, Basis::E}, R(2));
  return t;
}

/// Swap the two legs (no variable relabeling).
template <class R>
Tensor2<R> swap_legs(const Tensor2<R>& t) {
  Tensor2<R> out;
  for (const auto& [k, c] : t.terms()) out.add({k[1], k[0]}, c);
  return out;
}

/// Legs occupied by a two-leg factor inside sl2^{(x)3}; values in {1,2,3}.
struct Legs {
  int first;
  int second;
};

/// Commutator [a^{legs_a}, b^{legs_b}] in U(sl2)^{(x)3}. With exactly one shared
/// leg this lands in sl2^{(x)3}: the shared slot carries the sl2 bracket of
/// the a-entry with the b-entry, the other slots pass through.
/// Coefficients are multiplied as given; variable placement is the caller's job.
template <class R>
Tensor3<R> leg_bracket(const Tensor2<R>& a, Legs la, const Tensor2<R>& b, Legs lb) {
  auto valid = [](Legs l) { return l.first >= 1 && l.first <= 3 && l.second >= 1 && l.second <= 3 && l.first != l.second; };
  if (!valid(la) || !valid(lb)) throw LegClash("leg assignment must use two distinct legs from {1,2,3}");
  int shared = 0, count = 0;
  for (int x : {la.first, la.second})
    for (int y : {lb.first, lb.second})
      if (x == y) {
        shared = x;
        ++count;
      }
  if (count != 1) throw LegClash("leg_bracket needs exactly one shared leg");
  Tensor3<R> out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      std::array<Basis, 4> slot_a{}, slot_b{};  // index by leg
      slot_a[static_cast<std::size_t>(la.first)] = ka[0];
      slot_a[static_cast<std::size_t>(la.second)] = ka[1];
      slot_b[static_cast<std::size_t>(lb.first)] = kb[0];
      slot_b[static_cast<std::size_t>(lb.second)] = kb[1];
      Sl2Vec<R> br = basis_bracket<R>(slot_a[static_cast<std::size_t>(shared)], slot_b[static_cast<std::size_t>(shared)]);
      if (br.is_zero()) continue;
      const R coeff = ca * cb;
      std::array<Basis, 3> key{};
      for (int leg = 1; leg <= 3; ++leg) {
        if (leg == shared) continue;
        const bool from_a = leg == la.first || leg == la.second;
        key[static_cast<std::size_t>(leg - 1)] = from_a ? slot_a[static_cast<std::size_t>(leg)] : slot_b[static_cast<std::size_t>(leg)];
      }
      for (Basis z : kBasis) {
        if (is_zero_value(br.at(z))) continue;
        key[static_cast<std::size_t>(shared - 1)] = z;
        out.add(key, br.at(z) * coeff);
      }
    }
  }
  return out;
}

/// sl2-valued Laurent polynomial in l with rational coefficients.
class LoopElt {
public:
  LoopElt() = default;
  static LoopElt monomial(Basis x, int degree, const Scalar& c = 1);

  const std::map<int, Sl2Vec<Scalar>>& coeffs() const { return coeffs_; }
  Sl2Vec<Scalar> coefficient(int k) const;
  void add(int k, const Sl2Vec<Scalar>& v);
  void add(int k, Basis x, const Scalar& c) { add(k, Sl2Vec<Scalar>::basis(x, c)); }
  bool is_zero() const { return coeffs_.empty(); }
  int min_degree() const;  // precondition nonzero
  int max_degree() const;

  /// Component along x as a Laurent polynomial degree -> coefficient.
  std::map<int, Scalar> component(Basis x) const;
  Sl2Vec<Scalar> evaluate(const Scalar& at) const;
  /// Component along x as a rational function of `var`.
  RatFn component_fn(Basis x, Var var = Var::L) const;

  LoopElt& operator+=(const LoopElt& o);
  LoopElt& operator-=(const LoopElt& o);
  friend LoopElt operator+(LoopElt a, const LoopElt& b) { return a += b; }
  friend LoopElt operator-(LoopElt a, const LoopElt& b) { return a -= b; }
  friend LoopElt operator*(const Scalar& c, const LoopElt& a);
  friend bool operator==(const LoopElt& a, const LoopElt& b) { return (a - b).is_zero(); }
  friend bool operator<(const LoopElt& a, const LoopElt& b);

  std::string to_string() const;

private:
  std::map<int, Sl2Vec<Scalar>> coeffs_;
};

LoopElt loop_bracket(const LoopElt& a, const LoopElt& b);

/// Pointwise trace form <A(l), B(l)> as a Laurent polynomial.
std::map<int, Scalar> loop_trace(const LoopElt& a, const LoopElt& b);

/// Laurent polynomial (degree -> coefficient) as a rational function in var.
RatFn laurent_fn(const std::map<int, Scalar>& p, Var var = Var::L);
/// Inverse of laurent_fn; throws std::invalid_argument if f is not a Laurent polynomial in var.
std::map<int, Scalar> laurent_of(const RatFn& f, Var var);

struct ConventionProfile;
struct Point;

/// Contract the first leg of T(l, m) against A(l) under weight(l) dl and a residue in l at
/// `point`; the surviving second leg, a Laurent polynomial in m, is returned relabelled in l.
/// With LegOrder::SecondInFirstOut the roles of the legs (and of l, m) are exchanged.
LoopElt pair_first_leg(const Tensor2<RatFn>& T, const LoopElt& A, const RatFn& weight, const Point& point,
                       const ConventionProfile& profile);

}  // namespace cybelab
