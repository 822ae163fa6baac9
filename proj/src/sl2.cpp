#include "cybelab/sl2.hpp"

#include <stdexcept>

#include "cybelab/series.hpp"

namespace cybelab {

LoopElt LoopElt::monomial(Basis x, int degree, const Scalar& c) {
  LoopElt a;
  a.add(degree, x, c);
  return a;
}

Sl2Vec<Scalar> LoopElt::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Sl2Vec<Scalar>{} : it->second;
}

void LoopElt::add(int k, const Sl2Vec<Scalar>& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

int LoopElt::min_degree() const {
  if (coeffs_.empty()) throw std::logic_error("min_degree of zero loop element");
  return coeffs_.begin()->first;
}

int LoopElt::max_degree() const {
  if (coeffs_.empty()) throw std::logic_error("max_degree of zero loop element");
  return coeffs_.rbegin()->first;
}

std::map<int, Scalar> LoopElt::component(Basis x) const {
  std::map<int, Scalar> out;
  for (const auto& [k, v] : coeffs_)
    if (sgn(v.at(x)) != 0) out.emplace(k, v.at(x));
  return out;
}

Sl2Vec<Scalar> LoopElt::evaluate(const Scalar& at) const {
  if (sgn(at) == 0) throw std::domain_error("loop element evaluated at 0");
  Sl2Vec<Scalar> out;
  for (const auto& [k, v] : coeffs_) {
    Scalar p = 1;
    const Scalar base = k >= 0 ? at : Scalar(1) / at;
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) p *= base;
    out += p * v;
  }
  return out;
}

RatFn LoopElt::component_fn(Basis x, Var var) const { return laurent_fn(component(x), var); }

LoopElt& LoopElt::operator+=(const LoopElt& o) {
  for (const auto& [k, v] : o.coeffs_) add(k, v);
  return *this;
}

LoopElt& LoopElt::operator-=(const LoopElt& o) {
  for (const auto& [k, v] : o.coeffs_) add(k, Scalar(-1) * v);
  return *this;
}

LoopElt operator*(const Scalar& c, const LoopElt& a) {
  LoopElt out;
  if (sgn(c) == 0) return out;
  for (const auto& [k, v] : a.coeffs_) out.coeffs_.emplace(k, c * v);
  return out;
}

bool operator<(const LoopElt& a, const LoopElt& b) {
  auto key = [](const LoopElt& x) {
    std::vector<std::pair<int, std::array<Scalar, 3>>> out;
    for (const auto& [k, v] : x.coeffs_) out.push_back({k, {v.e, v.f, v.h}});
    return out;
  };
  return key(a) < key(b);
}

std::string LoopElt::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : coeffs_) {
    for (Basis b : kBasis) {
      const Scalar& c = v.at(b);
      if (sgn(c) == 0) continue;
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      first = false;
      const Scalar mag = abs(c);
      if (mag != 1) os << mag.get_str() << "*";
      os << basis_name(b);
      if (k != 0) os << "*l^" << k;
    }
  }
  return os.str();
}

LoopElt loop_bracket(const LoopElt& a, const LoopElt& b) {
  LoopElt out;
  for (const auto& [i, x] : a.coeffs())
    for (const auto& [j, y] : b.coeffs()) out.add(i + j, bracket(x, y));
  return out;
}

std::map<int, Scalar> loop_trace(const LoopElt& a, const LoopElt& b) {
  std::map<int, Scalar> out;
  for (const auto& [i, x] : a.coeffs())
    for (const auto& [j, y] : b.coeffs()) {
      Scalar c = trace_form(x, y);
      if (sgn(c) == 0) continue;
      Scalar& slot = out[i + j];
      slot += c;
      if (sgn(slot) == 0) out.erase(i + j);
    }
  return out;
}

RatFn laurent_fn(const std::map<int, Scalar>& p, Var var) {
  if (p.empty()) return RatFn();
  const int lo = std::min(0, p.begin()->first);
  MPoly num;
  for (const auto& [k, c] : p) num += MPoly::var(var, static_cast<unsigned>(k - lo)) * MPoly(c);
  if (lo == 0) return RatFn(num);
  return RatFn::from_parts(std::move(num), AtomPowers{{MPoly::var(var), -lo}});
}

std::map<int, Scalar> laurent_of(const RatFn& f, Var var) {
  std::map<int, Scalar> out;
  if (f.is_zero()) return out;
  int shift = 0;
  for (const auto& [a, k] : f.den()) {
    if (!(a == MPoly::var(var))) throw std::invalid_argument("not a Laurent polynomial in " + std::string(var_name(var)) + ": " + f.to_string());
    shift = k;
  }
  for (const auto& [e, c] : f.num().terms()) {
    Exponents rest = e;
    const int k = static_cast<int>(rest[static_cast<std::size_t>(var)]);
    rest[static_cast<std::size_t>(var)] = 0;
    if (!(rest == Exponents{})) throw std::invalid_argument("Laurent coefficient depends on other variables: " + f.to_string());
    out[k - shift] += c;
  }
  return out;
}

LoopElt pair_first_leg(const Tensor2<RatFn>& T, const LoopElt& A, const RatFn& weight, const Point& point,
                       const ConventionProfile& profile) {
  const bool first_in = profile.leg_order == LegOrder::FirstInSecondOut;
  const Var in_var = first_in ? Var::L : Var::M;
  const Var out_var = first_in ? Var::M : Var::L;
  const RatFn w = first_in ? weight : weight.rename({{Var::L, Var::M}});
  std::array<RatFn, 3> arg;
  for (Basis x : kBasis) arg[static_cast<std::size_t>(x)] = A.component_fn(x, in_var);

  std::array<std::vector<RatFn>, 3> parts;
  for (const auto& [key, c] : T.terms()) {
    const Basis in_leg = first_in ? key[0] : key[1];
    const Basis out_leg = first_in ? key[1] : key[0];
    // <in_leg, A> picks the dual component of A.
    std::vector<RatFn> paired;
    for (Basis x : kBasis) {
      const int g = basis_trace(in_leg, x);
      if (g != 0 && !arg[static_cast<std::size_t>(x)].is_zero()) paired.push_back(RatFn(g) * arg[static_cast<std::size_t>(x)]);
    }
    if (paired.empty()) continue;
    parts[static_cast<std::size_t>(out_leg)].push_back(c * sum(paired) * w);
  }
  LoopElt out;
  for (Basis y : kBasis) {
    const RatFn integrand = sum(parts[static_cast<std::size_t>(y)]);
    if (integrand.is_zero()) continue;
    RatFn r = residue(integrand, in_var, point, profile);
    if (out_var == Var::M) r = r.rename({{Var::M, Var::L}});
    for (const auto& [k, c] : laurent_of(r, Var::L)) out.add(k, y, c);
  }
  return out;
}

}  // namespace cybelab
