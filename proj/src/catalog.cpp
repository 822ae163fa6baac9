#include "cybelab/catalog.hpp"

#include <sstream>

#include "cybelab/errors.hpp"

namespace cybelab {

namespace {

const RatFn& l() {
  static const RatFn v = RatFn::var(Var::L);
  return v;
}
const RatFn& m() {
  static const RatFn v = RatFn::var(Var::M);
  return v;
}
RatFn inv_diff() { return RatFn::fraction(MPoly(1), MPoly::var(Var::L) - MPoly::var(Var::M)); }

Tensor2<RatFn> term(Basis x, Basis y, const RatFn& c) { return elementary<RatFn>(x, y, c); }

Tensor2<RatFn> r1_tensor() { return casimir_over(inv_diff()); }
Tensor2<RatFn> r2_minus_tensor() {
  return casimir_over((l() + m()) * inv_diff()) + term(Basis::E, Basis::F, 2) + term(Basis::F, Basis::E, -2);
}
Tensor2<RatFn> r2_plus_tensor() {
  return casimir_over((l() + m()) * inv_diff()) + term(Basis::E, Basis::F, 2) + term(Basis::F, Basis::E, 2);
}
Tensor2<RatFn> r3_tensor() {
  return casimir_over(l() * m() * inv_diff()) + term(Basis::E, Basis::F, RatFn(2) * l()) +
         term(Basis::F, Basis::E, RatFn(-2) * m());
}
// 2(h (x) e - e (x) h)
Tensor2<RatFn> constant_tail() { return term(Basis::H, Basis::E, 2) + term(Basis::E, Basis::H, -2); }
// 2(m h (x) e - l e (x) h)
Tensor2<RatFn> linear_tail() { return term(Basis::H, Basis::E, RatFn(2) * m()) + term(Basis::E, Basis::H, RatFn(-2) * l()); }

// r3 convention of the catalog: r3 = -invert_weyl(r1); the Stolin r3 forms follow the same sign.
RMatrixDef derive_stolin_r3(const std::string& name, const std::string& source) {
  RMatrixDef src = make(source);
  RMatrixDef out = invert_weyl(src);
  out.tensor = RatFn(-1) * out.tensor;
  out.name = name;
  out.note = "derived as -invert_weyl(" + source + ")";
  return out;
}

int weyl_shift(Basis b) { return b == Basis::E ? 1 : (b == Basis::F ? -1 : 0); }

RatFn power(const RatFn& v, int k) { return k >= 0 ? v.pow(k) : v.inverse().pow(-k); }

}  // namespace

Tensor2<RatFn> casimir_over(const RatFn& c) {
  return casimir<Scalar>().map_coefficients([&](const Scalar& s) { return RatFn(s) * c; });
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"r1",           "r2_plus",       "r2_minus",
                                              "r3",           "r1_stolin_const", "r1_stolin_lin",
                                              "r3_stolin_const", "r3_stolin_lin"};
  return names;
}

std::string r2_name(R2Variant v) { return v == R2Variant::Plus ? "r2_plus" : "r2_minus"; }

RMatrixDef make(const std::string& name) {
  if (name == "r1") return {name, r1_tensor(), "t/(l-m)"};
  if (name == "r2_plus") return {name, r2_plus_tensor(), "(l+m)/(l-m) t + 2(e(x)f + f(x)e)"};
  if (name == "r2_minus") return {name, r2_minus_tensor(), "(l+m)/(l-m) t + 2(e(x)f - f(x)e)"};
  if (name == "r3") return {name, r3_tensor(), "lm/(l-m) t + 2l e(x)f - 2m f(x)e"};
  if (name == "r1_stolin_const") return {name, r1_tensor() + constant_tail(), "t/(l-m) + 2(h(x)e - e(x)h)"};
  if (name == "r1_stolin_lin") return {name, r1_tensor() + linear_tail(), "t/(l-m) + 2(m h(x)e - l e(x)h)"};
  if (name == "r3_stolin_lin") return derive_stolin_r3(name, "r1_stolin_const");
  if (name == "r3_stolin_const") return derive_stolin_r3(name, "r1_stolin_lin");
  throw UnknownName("unknown r-matrix '" + name + "'");
}

RMatrixDef make_printed(const std::string& name) {
  const Tensor2<RatFn> head = casimir_over(l() * m() * inv_diff()) + term(Basis::E, Basis::F, RatFn(2) * l()) +
                              term(Basis::F, Basis::E, RatFn(2) * m());
  if (name == "r3_stolin_lin") return {name, head + linear_tail(), "lm/(l-m) t + 2(l e(x)f + m f(x)e) + 2(m h(x)e - l e(x)h)"};
  if (name == "r3_stolin_const") return {name, head + constant_tail(), "lm/(l-m) t + 2(l e(x)f + m f(x)e) + 2(h(x)e - e(x)h)"};
  return make(name);
}

RMatrixDef invert_weyl(const RMatrixDef& r) {
  const std::map<Var, RatFn> images{{Var::L, l().inverse()}, {Var::M, m().inverse()}};
  Tensor2<RatFn> out;
  for (const auto& [k, c] : r.tensor.terms())
    out.add(k, c.substitute(images) * power(l(), weyl_shift(k[0])) * power(m(), weyl_shift(k[1])));
  return {"invert_weyl(" + r.name + ")", out, "literal inversion and affine Weyl shift"};
}

int weyl_sign(const RMatrixDef& from, const RMatrixDef& to) {
  const Tensor2<RatFn> w = invert_weyl(from).tensor;
  if (w == to.tensor) return 1;
  if (w == RatFn(-1) * to.tensor) return -1;
  return 0;
}

RMatrixDef tau_shift(const RMatrixDef& r, const RatFn& E) {
  const std::map<Var, RatFn> images{{Var::L, l() + E}, {Var::M, m() + E}};
  return {"tau_shift(" + r.name + ")", r.tensor.map_coefficients([&](const RatFn& c) { return c.substitute(images); }),
          "l, m -> l + E, m + E"};
}

std::string PencilCoeffs::to_string() const {
  std::ostringstream os;
  os << "(" << a1.to_string() << "," << a2.to_string() << "," << a3.to_string() << ")";
  return os.str();
}

RMatrixDef pencil(const PencilCoeffs& a, R2Variant variant) {
  const Tensor2<RatFn> r2 = variant == R2Variant::Plus ? r2_plus_tensor() : r2_minus_tensor();
  Tensor2<RatFn> out = RatFn(a.a1) * r1_tensor() + RatFn(a.a2) * r2 + RatFn(a.a3) * r3_tensor();
  return {"pencil" + a.to_string(), out, "a1 r1 + a2 " + r2_name(variant) + " + a3 r3"};
}

PencilCoeffs pencil_shift_action(const PencilCoeffs& a, const MPoly& E) {
  return {a.a1 + MPoly(2) * E * a.a2 + E * E * a.a3, a.a2 + E * a.a3, a.a3};
}

std::optional<Tensor2<MPoly>> polynomial_tail(const RMatrixDef& r) {
  const Tensor2<RatFn> rest = r.tensor - r1_tensor();
  Tensor2<MPoly> out;
  for (const auto& [k, c] : rest.terms()) {
    if (!c.is_polynomial()) return std::nullopt;
    out.add(k, c.num());
  }
  return out;
}

std::vector<Tensor2<RatFn>> split_by_e_power(const Tensor2<RatFn>& t) {
  std::vector<Tensor2<RatFn>> out;
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [a, mult] : c.den())
      if (a.depends_on(Var::E)) throw std::invalid_argument("denominator depends on E");
    for (const auto& [d, p] : c.num().coefficients_in(Var::E)) {
      if (out.size() <= d) out.resize(d + 1);
      out[d].add(k, RatFn::from_parts(p, c.den()));
    }
  }
  return out;
}

std::vector<RMatrixDef> stolin_triple(bool linear_r3) {
  const std::string r1 = linear_r3 ? "r1_stolin_const" : "r1_stolin_lin";
  const std::string r3 = linear_r3 ? "r3_stolin_lin" : "r3_stolin_const";
  const RMatrixDef top = make(r3);
  auto parts = split_by_e_power(tau_shift(top).tensor - top.tensor);
  parts.resize(3);
  RMatrixDef mid{linear_r3 ? "r2_stolin_lin" : "r2_stolin_const", parts[1], "E-linear part of tau_shift(" + r3 + ")"};
  return {make(r1), mid, top};
}

}  // namespace cybelab
