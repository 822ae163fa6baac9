#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cybelab {

/// Exact rational; gmp keeps it canonical (coprime, positive denominator).
using Scalar = mpq_class;

/// The fixed variable alphabet. Spectral parameters first, then the shift
/// parameter and the pencil coefficients.
enum class Var : std::uint8_t { L = 0, M, N, E, A1, A2, A3 };

inline constexpr std::size_t kNumVars = 7;

const char* var_name(Var v);

using Exponents = std::array<std::uint16_t, kNumVars>;

/// Sparse multivariate polynomial over Q with a fixed alphabet.
/// Terms are kept in lex order on the exponent vector (L > M > N > E > ...),
/// and no stored coefficient is zero.
class MPoly {
public:
  using Terms = std::map<Exponents, Scalar>;

  MPoly() = default;
  MPoly(const Scalar& c);  // NOLINT: constants convert implicitly
  MPoly(int c) : MPoly(Scalar(c)) {}

  static MPoly var(Var v, unsigned power = 1);
  static MPoly monomial(const Exponents& e, const Scalar& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value (0 if absent).
  Scalar constant_term() const;
  std::size_t size() const { return terms_.size(); }

  /// Lex-leading term; precondition: nonzero.
  const std::pair<const Exponents, Scalar>& leading() const;

  unsigned degree(Var v) const;
  unsigned total_degree() const;
  /// Minimum exponent of v across all terms (0 for the zero polynomial).
  unsigned min_degree(Var v) const;
  bool depends_on(Var v) const;
  /// Variables actually occurring.
  std::vector<Var> variables() const;

  /// Coefficients with respect to v: p = sum_k c_k v^k, c_k free of v.
  std::map<unsigned, MPoly> coefficients_in(Var v) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Scalar& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Scalar& c) { return a *= c; }
  friend MPoly operator*(const Scalar& c, MPoly a) { return a *= c; }
  MPoly operator-() const;

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
  /// Total order used for keying atoms in maps.
  friend bool operator<(const MPoly& a, const MPoly& b) { return a.terms_ < b.terms_; }

  MPoly pow(unsigned n) const;

  /// Exact division: the quotient if `divisor` divides *this, otherwise nullopt.
  std::optional<MPoly> divide_exact(const MPoly& divisor) const;

  /// Monomial division by v^k; precondition: min_degree(v) >= k.
  MPoly shift_down(Var v, unsigned k) const;

  /// Replace v by an arbitrary polynomial image.
  MPoly substitute(Var v, const MPoly& image) const;
  /// Simultaneous substitution of several variables.
  MPoly substitute(const std::map<Var, MPoly>& images) const;
  /// Variable renaming (a permutation or injective relabeling of slots).
  MPoly rename(const std::map<Var, Var>& mapping) const;

  /// Evaluate variables at rationals; unspecified variables stay symbolic.
  MPoly evaluate(const std::map<Var, Scalar>& point) const;

  std::string to_string() const;

private:
  void add_term(const Exponents& e, const Scalar& c);
  Terms terms_;
};

std::string scalar_to_string(const Scalar& s);

}  // namespace cybelab
