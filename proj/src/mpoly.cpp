#include "cybelab/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cybelab {

const char* var_name(Var v) {
  switch (v) {
    case Var::L: return "l";
    case Var::M: return "m";
    case Var::N: return "n";
    case Var::E: return "E";
    case Var::A1: return "a1";
    case Var::A2: return "a2";
    case Var::A3: return "a3";
  }
  return "?";
}

std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

MPoly::MPoly(const Scalar& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

MPoly MPoly::var(Var v, unsigned power) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(power);
  return monomial(e, Scalar(1));
}

MPoly MPoly::monomial(const Exponents& e, const Scalar& c) {
  MPoly p;
  if (sgn(c) != 0) p.terms_.emplace(e, c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Scalar MPoly::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Scalar(0) : it->second;
}

const std::pair<const Exponents, Scalar>& MPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

unsigned MPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[static_cast<std::size_t>(v)]);
  return d;
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

unsigned MPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  unsigned d = ~0u;
  for (const auto& [e, c] : terms_) d = std::min<unsigned>(d, e[static_cast<std::size_t>(v)]);
  return d;
}

bool MPoly::depends_on(Var v) const { return degree(v) > 0; }

std::vector<Var> MPoly::variables() const {
  std::vector<Var> out;
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (depends_on(static_cast<Var>(i))) out.push_back(static_cast<Var>(i));
  return out;
}

std::map<unsigned, MPoly> MPoly::coefficients_in(Var v) const {
  std::map<unsigned, MPoly> out;
  const auto slot = static_cast<std::size_t>(v);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    const unsigned k = rest[slot];
    rest[slot] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

void MPoly::add_term(const Exponents& e, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Scalar& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result(1);
  MPoly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  MPoly rem = *this;
  MPoly quot;
  const auto& [lead_e, lead_c] = divisor.leading();
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading();
    Exponents qe;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      qe[i] = static_cast<std::uint16_t>(re[i] - lead_e[i]);
    }
    MPoly step = MPoly::monomial(qe, rc / lead_c);
    quot += step;
    rem -= step * divisor;
  }
  return quot;
}

MPoly MPoly::shift_down(Var v, unsigned k) const {
  MPoly out;
  const auto slot = static_cast<std::size_t>(v);
  for (const auto& [e, c] : terms_) {
    if (e[slot] < k) throw std::logic_error("shift_down below zero exponent");
    Exponents f = e;
    f[slot] = static_cast<std::uint16_t>(f[slot] - k);
    out.terms_.emplace(f, c);
  }
  return out;
}

MPoly MPoly::substitute(Var v, const MPoly& image) const {
  return substitute(std::map<Var, MPoly>{{v, image}});
}

MPoly MPoly::substitute(const std::map<Var, MPoly>& images) const {
  // Power cache per substituted variable.
  std::map<std::pair<Var, unsigned>, MPoly> cache;
  auto power_of = [&](Var v, unsigned k) -> const MPoly& {
    auto key = std::make_pair(v, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, images.at(v).pow(k)).first->second;
  };
  MPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents kept = e;
    MPoly factor(c);
    for (const auto& [v, img] : images) {
      const auto slot = static_cast<std::size_t>(v);
      if (kept[slot] == 0) continue;
      factor *= power_of(v, kept[slot]);
      kept[slot] = 0;
    }
    out += factor * MPoly::monomial(kept, Scalar(1));
  }
  return out;
}

MPoly MPoly::rename(const std::map<Var, Var>& mapping) const {
  MPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents f{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      auto it = mapping.find(static_cast<Var>(i));
      const std::size_t target = it == mapping.end() ? i : static_cast<std::size_t>(it->second);
      f[target] = static_cast<std::uint16_t>(f[target] + e[i]);
    }
    out.add_term(f, c);
  }
  return out;
}

MPoly MPoly::evaluate(const std::map<Var, Scalar>& point) const {
  MPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents kept = e;
    Scalar value = c;
    for (const auto& [v, x] : point) {
      const auto slot = static_cast<std::size_t>(v);
      for (unsigned k = 0; k < kept[slot]; ++k) value *= x;
      kept[slot] = 0;
    }
    out.add_term(kept, value);
  }
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = e == Exponents{};
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (is_const || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(static_cast<Var>(i));
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace cybelab
