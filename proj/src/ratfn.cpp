#include "cybelab/ratfn.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "cybelab/errors.hpp"

namespace cybelab {

namespace {

bool rational_sqrt(const Scalar& x, Scalar& out) {
  if (sgn(x) < 0) return false;
  mpz_class n = x.get_num();
  mpz_class d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Scalar(rn, rd);
  out.canonicalize();
  return true;
}

// Variable of a univariate polynomial, or nullopt.
std::optional<Var> sole_variable(const MPoly& p) {
  auto vs = p.variables();
  if (vs.size() != 1) return std::nullopt;
  return vs.front();
}

std::vector<Atom> default_trial_atoms(const MPoly& p) {
  std::vector<Atom> out;
  auto vs = p.variables();
  for (Var v : vs) {
    out.push_back(MPoly::var(v) - MPoly(1));
    out.push_back(MPoly::var(v) + MPoly(1));
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      out.push_back(MPoly::var(vs[i]) - MPoly::var(vs[j]));
      out.push_back(MPoly::var(vs[i]) + MPoly::var(vs[j]));
    }
  }
  return out;
}

}  // namespace

Scalar make_monic(MPoly& p) {
  Scalar lead = p.leading().second;
  p *= Scalar(1) / lead;
  return lead;
}

bool is_admissible_atom(const MPoly& p) {
  if (p.is_zero() || p.is_constant()) return false;
  if (p.total_degree() == 1) return true;
  auto v = sole_variable(p);
  if (!v || p.degree(*v) != 2) return false;
  auto c = p.coefficients_in(*v);
  Scalar a = c[2].constant_term(), b = c[1].constant_term(), k = c[0].constant_term();
  Scalar root;
  return !rational_sqrt(b * b - 4 * a * k, root);
}

Atomized atomize(const MPoly& p, const std::vector<Atom>& hints) {
  if (p.is_zero()) throw std::domain_error("cannot atomize the zero polynomial");
  Atomized out{Scalar(1), {}};
  std::deque<MPoly> todo{p};
  while (!todo.empty()) {
    MPoly q = std::move(todo.front());
    todo.pop_front();
    if (q.is_constant()) {
      out.content *= q.constant_term();
      continue;
    }
    out.content *= make_monic(q);
    // Monomial factors first: each variable is itself an atom.
    for (std::size_t i = 0; i < kNumVars; ++i) {
      const Var v = static_cast<Var>(i);
      const unsigned k = q.min_degree(v);
      if (k > 0) {
        out.atoms[MPoly::var(v)] += static_cast<int>(k);
        q = q.shift_down(v, k);
      }
    }
    if (q.is_constant()) {
      out.content *= q.constant_term();
      continue;
    }
    if (q.total_degree() == 1) {
      out.atoms[q] += 1;
      continue;
    }
    if (auto v = sole_variable(q); v && q.degree(*v) == 2) {
      auto c = q.coefficients_in(*v);
      Scalar b = c[1].constant_term(), k = c[0].constant_term();
      Scalar root;
      if (rational_sqrt(b * b - 4 * k, root)) {
        // monic: x^2 + b x + k = (x - r1)(x - r2)
        Scalar r1 = (-b + root) / 2, r2 = (-b - root) / 2;
        out.atoms[MPoly::var(*v) - MPoly(r1)] += 1;
        out.atoms[MPoly::var(*v) - MPoly(r2)] += 1;
      } else {
        out.atoms[q] += 1;
      }
      continue;
    }
    bool split = false;
    std::vector<Atom> trials = hints;
    auto extra = default_trial_atoms(q);
    trials.insert(trials.end(), extra.begin(), extra.end());
    for (Atom a : trials) {
      if (a.is_constant()) continue;
      make_monic(a);
      if (auto quot = q.divide_exact(a)) {
        todo.push_back(a);
        todo.push_back(*quot);
        split = true;
        break;
      }
    }
    if (!split) throw AtomEscape("denominator factor '" + q.to_string() + "' is not an admissible atom");
  }
  return out;
}

RatFn RatFn::fraction(const MPoly& num, const MPoly& den) {
  Atomized a = atomize(den);
  MPoly n = num;
  n *= Scalar(1) / a.content;
  return from_parts(std::move(n), std::move(a.atoms));
}

RatFn RatFn::from_parts(MPoly num, AtomPowers den) {
  RatFn out;
  out.num_ = std::move(num);
  for (auto& [atom, k] : den) {
    if (k == 0) continue;
    if (k < 0) throw std::invalid_argument("negative atom multiplicity");
    if (is_admissible_atom(atom) && atom.leading().second == 1) {
      out.den_[atom] += k;
      continue;
    }
    Atomized split = atomize(atom);
    Scalar c = 1;
    for (int i = 0; i < k; ++i) c *= split.content;
    out.num_ *= Scalar(1) / c;
    for (auto& [a, m] : split.atoms) out.den_[a] += m * k;
  }
  out.canonicalize();
  return out;
}

void RatFn::canonicalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.divide_exact(it->first);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
}

MPoly RatFn::den_poly() const {
  MPoly d(1);
  for (const auto& [a, k] : den_) d *= a.pow(static_cast<unsigned>(k));
  return d;
}

Scalar RatFn::constant_value() const {
  if (!is_constant()) throw std::logic_error("RatFn is not constant: " + to_string());
  return num_.constant_term();
}

bool RatFn::depends_on(Var v) const {
  if (num_.depends_on(v)) return true;
  for (const auto& [a, k] : den_)
    if (a.depends_on(v)) return true;
  return false;
}

namespace {

AtomPowers lcm(const AtomPowers& a, const AtomPowers& b) {
  AtomPowers out = a;
  for (const auto& [atom, k] : b) {
    auto& slot = out[atom];
    slot = std::max(slot, k);
  }
  return out;
}

MPoly cofactor(const AtomPowers& full, const AtomPowers& part) {
  MPoly c(1);
  for (const auto& [atom, k] : full) {
    auto it = part.find(atom);
    const int have = it == part.end() ? 0 : it->second;
    if (k > have) c *= atom.pow(static_cast<unsigned>(k - have));
  }
  return c;
}

}  // namespace

RatFn& RatFn::operator+=(const RatFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    AtomPowers l = lcm(den_, o.den_);
    num_ = num_ * cofactor(l, den_) + o.num_ * cofactor(l, o.den_);
    den_ = std::move(l);
  }
  canonicalize();
  return *this;
}

RatFn& RatFn::operator-=(const RatFn& o) { return *this += -o; }

RatFn& RatFn::operator*=(const RatFn& o) {
  if (is_zero() || o.is_zero()) {
    num_ = MPoly();
    den_.clear();
    return *this;
  }
  num_ *= o.num_;
  for (const auto& [a, k] : o.den_) den_[a] += k;
  canonicalize();
  return *this;
}

RatFn RatFn::operator-() const {
  RatFn out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  std::vector<Atom> hints;
  for (const auto& [a, k] : den_) hints.push_back(a);
  Atomized split = atomize(num_, hints);
  MPoly n = den_poly();
  n *= Scalar(1) / split.content;
  return from_parts(std::move(n), std::move(split.atoms));
}

RatFn RatFn::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFn out(1);
  for (int i = 0; i < n; ++i) out *= *this;
  return out;
}

bool operator==(const RatFn& a, const RatFn& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  AtomPowers l = lcm(a.den_, b.den_);
  return a.num_ * cofactor(l, a.den_) == b.num_ * cofactor(l, b.den_);
}

namespace {

RatFn poly_image(const MPoly& p, const std::map<Var, RatFn>& images) {
  // Polynomial images go through the faster MPoly path.
  bool all_poly = true;
  for (const auto& [v, img] : images)
    if (p.depends_on(v) && !img.is_polynomial()) all_poly = false;
  if (all_poly) {
    std::map<Var, MPoly> pm;
    for (const auto& [v, img] : images)
      if (p.depends_on(v)) pm.emplace(v, img.num());
    return RatFn(p.substitute(pm));
  }
  std::map<std::pair<Var, unsigned>, RatFn> cache;
  std::vector<RatFn> parts;
  for (const auto& [e, c] : p.terms()) {
    Exponents kept = e;
    RatFn term(c);
    for (const auto& [v, img] : images) {
      const auto slot = static_cast<std::size_t>(v);
      if (kept[slot] == 0) continue;
      auto key = std::make_pair(v, static_cast<unsigned>(kept[slot]));
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, img.pow(kept[slot])).first;
      term *= it->second;
      kept[slot] = 0;
    }
    term *= RatFn(MPoly::monomial(kept, Scalar(1)));
    parts.push_back(std::move(term));
  }
  return sum(parts);
}

}  // namespace

RatFn RatFn::substitute(const std::map<Var, RatFn>& images) const {
  RatFn out = poly_image(num_, images);
  for (const auto& [a, k] : den_) {
    RatFn img = poly_image(a, images);
    if (img.is_zero()) throw std::domain_error("substitution hits a pole at atom " + a.to_string());
    out *= img.inverse().pow(k);
  }
  return out;
}

RatFn RatFn::rename(const std::map<Var, Var>& mapping) const {
  MPoly n = num_.rename(mapping);
  AtomPowers d;
  for (const auto& [a, k] : den_) {
    MPoly r = a.rename(mapping);
    Scalar lead = make_monic(r);
    Scalar c = 1;
    for (int i = 0; i < k; ++i) c *= lead;
    n *= Scalar(1) / c;
    d[r] += k;
  }
  return from_parts(std::move(n), std::move(d));
}

RatFn RatFn::evaluate(const std::map<Var, Scalar>& point) const {
  std::map<Var, RatFn> images;
  for (const auto& [v, x] : point) images.emplace(v, RatFn(x));
  return substitute(images);
}

std::string RatFn::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/(";
  bool first = true;
  for (const auto& [a, k] : den_) {
    if (!first) os << "*";
    first = false;
    os << "(" << a.to_string() << ")";
    if (k > 1) os << "^" << k;
  }
  os << ")";
  return os.str();
}

RatFn sum(const std::vector<RatFn>& parts) {
  AtomPowers l;
  for (const auto& p : parts)
    if (!p.is_zero()) l = lcm(l, p.den());
  MPoly n;
  for (const auto& p : parts)
    if (!p.is_zero()) n += p.num() * cofactor(l, p.den());
  return RatFn::from_parts(std::move(n), std::move(l));
}

RatFn affine_image(Var v, const Scalar& a, const RatFn& b) { return RatFn(a) * RatFn::var(v) + b; }

RatFn reciprocal_image(Var v) { return RatFn::var(v).inverse(); }

}  // namespace cybelab
