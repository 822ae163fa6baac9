#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cybelab/catalog.hpp"
#include "cybelab/mpoly.hpp"
#include "cybelab/sl2.hpp"

namespace cybelab {

/// Closed degree rectangle [lo1, hi1] x [lo2, hi2].
struct Rect {
  int lo1 = 0, hi1 = -1, lo2 = 0, hi2 = -1;
  static Rect square(int n) { return {-n, n, -n, n}; }
  bool contains(int i, int j) const { return i >= lo1 && i <= hi1 && j >= lo2 && j <= hi2; }
  Rect intersect(const Rect& o) const;
};

/// Closed box of tridegrees.
struct Box {
  std::array<int, 3> lo{0, 0, 0}, hi{-1, -1, -1};
  static Box cube(int n) { return {{-n, -n, -n}, {n, n, n}}; }
  bool contains(const std::array<int, 3>& d) const;
  std::size_t size() const;
};

/// Windowed element of the completed tensor square: bidegree (i, j) carries the
/// coefficient of l^i m^j, a Tensor2 with coefficients polynomial in the
/// symbolic parameters. Every bidegree inside `window` is exact.
///
/// `degree_support` lists the total degrees i + j that can be nonzero anywhere,
/// inside or outside the window; it is what makes products finite sums.
class CompletedTensor2 {
public:
  CompletedTensor2() = default;
  CompletedTensor2(Rect window, std::optional<std::set<int>> degree_support)
      : window_(window), support_(std::move(degree_support)) {}

  const Rect& window() const { return window_; }
  const std::optional<std::set<int>>& degree_support() const { return support_; }
  const std::map<std::pair<int, int>, Tensor2<MPoly>>& coeffs() const { return coeffs_; }

  /// WindowTooNarrow outside the window.
  Tensor2<MPoly> at(int i, int j) const;
  void add(int i, int j, const Tensor2<MPoly>& t);
  bool is_zero() const;

  friend CompletedTensor2 operator+(const CompletedTensor2& a, const CompletedTensor2& b);
  friend CompletedTensor2 operator-(const CompletedTensor2& a, const CompletedTensor2& b);
  friend CompletedTensor2 operator*(const MPoly& c, const CompletedTensor2& a);
  CompletedTensor2 restricted(const Rect& r) const;

private:
  Rect window_;
  std::optional<std::set<int>> support_;
  std::map<std::pair<int, int>, Tensor2<MPoly>> coeffs_;
};

/// Tridegree (p, q, s) carries the coefficient of l^p m^q n^s.
class CompletedTensor3 {
public:
  CompletedTensor3() = default;
  explicit CompletedTensor3(Box window) : window_(window) {}
  const Box& window() const { return window_; }
  const std::map<std::array<int, 3>, Tensor3<MPoly>>& coeffs() const { return coeffs_; }
  Tensor3<MPoly> at(const std::array<int, 3>& d) const;
  void add(const std::array<int, 3>& d, const Tensor3<MPoly>& t);
  bool is_zero() const { return coeffs_.empty(); }
  friend CompletedTensor3 operator-(const CompletedTensor3& a, const CompletedTensor3& b);

private:
  Box window_;
  std::map<std::array<int, 3>, Tensor3<MPoly>> coeffs_;
};

/// rbar_i: half the difference of the two regional expansions times t, plus
/// the constant tails 2(e(x)f - f(x)e) for i = 2 and 2l e(x)f - 2m f(x)e for i = 3.
CompletedTensor2 build_rbar(int i, const Rect& window);
/// t_i: half the sum of the two regional expansions times t.
CompletedTensor2 build_t(int i, const Rect& window);

/// sum a_i rbar_i and sum a_i t_i.
CompletedTensor2 rbar_pencil(const PencilCoeffs& a, const Rect& window);
CompletedTensor2 t_pencil(const PencilCoeffs& a, const Rect& window);

/// The common total degree of all nonzero stored coefficients, nullopt if they
/// differ or if there are none.
std::optional<int> homogeneity_degree(const CompletedTensor2& s);

/// Operand window that makes series_mixed_bracket exact on `out`.
Rect operand_window(const Box& out, const CompletedTensor2& a, const CompletedTensor2& b);

/// [a12,b13] + [b12,a13] + [a12,b23] + [b12,a23] + [a13,b23] + [b13,a23] on
/// the box. InfiniteSum if an operand has no degree support; WindowTooNarrow if
/// a needed operand coefficient lies outside its window.
CompletedTensor3 series_mixed_bracket(const CompletedTensor2& a, const CompletedTensor2& b, const Box& out);

/// One coefficient of a single ordered leg bracket [x^{legs_x}, y^{legs_y}].
Tensor3<MPoly> leg_product_at(const CompletedTensor2& x, Legs lx, const CompletedTensor2& y, Legs ly,
                              const std::array<int, 3>& d);

struct TridegreeDiff {
  std::array<int, 3> degree;
  std::string lhs, rhs;
};

struct Lemma3Report {
  int window = 0;
  bool equal = false;
  std::size_t checked = 0;
  std::size_t nonzero_lhs = 0;
  std::vector<TridegreeDiff> diffs;  // first few differing tridegrees
  std::size_t diff_count = 0;
  /// lhs + rhs vanishes on the whole cube.
  bool opposite = false;
  std::size_t opposite_diff_count = 0;
};

/// [[sum a_i rbar_i, same]] against [[sum a_i t_i, same]] on the cube |deg| <= n.
Lemma3Report lemma3_check(const PencilCoeffs& a, int n);

enum class CyclicShape { Rational, Inverse };
/// Literal: each factor 1/(x - y) expanded where |x| > |y| as written in that
/// factor. CommonRegion: every factor expanded in the single region |l| > |m| > |n|.
enum class CyclicReading { Literal, CommonRegion };

struct CyclicReport {
  CyclicShape shape{};
  CyclicReading reading{};
  int window = 0;
  bool vanishes = false;
  std::size_t nonzero = 0;
  std::vector<std::pair<std::array<int, 3>, Scalar>> samples;  // first few nonzero coefficients
};

CyclicReport cyclic_identity_check(CyclicShape shape, int n, CyclicReading reading = CyclicReading::Literal);

/// Coefficient of l^p m^q n^s in the first cyclic term alone.
Scalar cyclic_single_term(CyclicShape shape, const std::array<int, 3>& d, CyclicReading reading = CyclicReading::Literal);

/// l, m -> l + E, m + E applied to a homogeneous completed tensor, exact on `out`.
/// The coefficient at (i, j) is a polynomial in E.
CompletedTensor2 shift_series(const CompletedTensor2& s, const Rect& out);

}  // namespace cybelab
