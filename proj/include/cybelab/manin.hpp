#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cybelab/catalog.hpp"
#include "cybelab/conventions.hpp"
#include "cybelab/linalg.hpp"
#include "cybelab/sl2.hpp"

namespace cybelab {

// ---------------------------------------------------------------- pairings

struct PairingSpec {
  enum class Kind { Indexed, General };
  Kind kind = Kind::Indexed;
  int index = 1;  // Indexed: 1, 2 or 3
  PencilCoeffs a = PencilCoeffs::of(1, 0, 0);
  ConventionProfile profile{};

  static PairingSpec indexed(int i);
  /// Requires numeric a whose density a1 + 2 a2 l + a3 l^2 is nonzero.
  static PairingSpec general(const PencilCoeffs& a, const ConventionProfile& profile);
  std::string to_string() const;
};

/// a1 + 2 a2 l + a3 l^2.
MPoly density(const PencilCoeffs& a, Var var = Var::L);

Scalar pairing_eval(const LoopElt& A, const LoopElt& B, const PairingSpec& spec);

// ---------------------------------------------------------------- Gram band

/// b_n = coefficient of l^{-n} in (a1 l^{-1} + 2 a2 + a3 l)^{-1} = l / density,
/// expanded at `point`. Coefficients are rational functions of symbolic a.
std::map<int, RatFn> b_coeffs(const PencilCoeffs& a, int lo, int hi, BPoint point);

struct GramReport {
  int n = 0;
  int interior = 0;  // block is [-interior, interior]
  bool identity = false;
  std::size_t checked = 0;
  std::vector<std::string> failures;  // first few (i,k,value)
};

/// (A B)_{ik} = delta_{ik} on the interior block, A_{ij} = a'_{i+j+2}, B_{jk} = b_{j+k}.
GramReport gram_inverse_check(const PencilCoeffs& a, int n, BPoint point);

// ---------------------------------------------------------------- R operator

/// Four-term evaluation: antisymmetrized delta term plus the three
/// density-weighted residue terms. Requires numeric a.
LoopElt r_operator(const LoopElt& A, const PencilCoeffs& a, const ConventionProfile& profile);

/// Second route: contracts the completed r-bar pencil series degree by degree
/// against A with weight 1/density. Output degrees limited to [lo, hi].
LoopElt r_operator_series(const LoopElt& A, const PencilCoeffs& a, const ConventionProfile& profile, int lo,
                          int hi);

// ---------------------------------------------------------------- calibration

struct ConstraintCheck {
  std::string name;
  bool pass = false;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string witness;  // first failure, both values
};

struct ProfileCertificate {
  ConventionProfile profile;
  std::vector<ConstraintCheck> checks;  // (i), (ii), (iii)
  bool all_pass() const;
  std::size_t failed_items() const;
};

struct CalibrationResult {
  enum class Status { Unique, None, Ambiguous };
  Status status = Status::None;
  /// The unique passing profile, or else the one with fewest failed items.
  ConventionProfile chosen;
  std::vector<ProfileCertificate> certificates;  // all 8 profiles, fixed order

  /// chosen, or throws NoProfile / AmbiguousProfile with the witnesses.
  ConventionProfile calibrated() const;
  std::string summary() const;
};

std::vector<ConventionProfile> all_profiles();
ProfileCertificate certify_profile(const PencilCoeffs& a, const ConventionProfile& profile);
CalibrationResult calibrate_conventions(const PencilCoeffs& a);
const char* status_name(CalibrationResult::Status s);

// ---------------------------------------------------------------- stable subspace

struct StableCoords {
  std::map<int, Scalar> alpha;  // h l^i, i >= 0
  std::map<int, Scalar> beta;   // e l^i, i >= -1

  LoopElt to_loop() const;
  /// nullopt if x leaves h C[l] + e l^{-1} C[l].
  static std::optional<StableCoords> of(const LoopElt& x);
  friend bool operator==(const StableCoords&, const StableCoords&) = default;
};

enum class IndexReading {
  Printed,    // beta'_1 = beta_{-1} + 2(beta_1 + beta_3 + ...), beta'_{-1} = -beta_{-1}
  Reindexed,  // beta'_{-1} = beta_{-1} + 2(beta_1 + beta_3 + ...), beta'_1 = -beta_1
};

struct ExplicitStable {
  StableCoords value;
  std::string note;
};

ExplicitStable r_explicit_stable(const StableCoords& c, IndexReading reading = IndexReading::Printed);

struct StableComparison {
  std::size_t checked = 0;
  std::vector<std::string> disagreements;  // "input: explicit vs operator"
  bool agree() const { return disagreements.empty(); }
};

/// Compares r_explicit_stable with r_operator on the monomial basis of the
/// stable subspace up to `max_degree`.
StableComparison compare_stable(const PencilCoeffs& a, const ConventionProfile& profile, int max_degree,
                                IndexReading reading);

struct StableEigen {
  std::size_t plus_dim = 0;
  std::size_t minus_dim = 0;
  bool diagonalizable = false;  // plus_dim + minus_dim == dimension
  bool minus_conditions_hold = false;
  std::vector<std::string> violations;
};

/// Eigenspaces of R restricted to the stable subspace truncated at degree n.
StableEigen stable_eigenspaces(const PencilCoeffs& a, const ConventionProfile& profile, int n);

// ---------------------------------------------------------------- g+ and complements

struct SubspaceBasis {
  std::string label;
  std::vector<LoopElt> elements;
};

struct Membership {
  bool member = false;
  std::vector<std::string> violated;
};

Membership gplus_membership(const LoopElt& A);
/// Conditions with the points 1, -1 replaced by z1, z2.
Membership generalized_gplus_membership(const LoopElt& A, const Scalar& z1, const Scalar& z2);

SubspaceBasis gplus_spanning(int n);
/// Solution space of the generalized conditions on degrees [-1, n].
SubspaceBasis generalized_gplus_basis(int n, const Scalar& z1, const Scalar& z2);
/// {x l^{-k} : x in {e,f,h}, 0 <= k <= n}.
SubspaceBasis negative_truncation(int n);

/// Keeps c_h; NotInBminus if c_e != 0.
Sl2Vec<Scalar> h_projection(const Sl2Vec<Scalar>& x);

/// Coordinates of a loop element on degrees [lo, hi]; (k - lo) * 3 + basis.
QVector loop_coords(const LoopElt& x, int lo, int hi);
LoopElt loop_from_coords(const QVector& v, int lo);
std::size_t basis_rank(const SubspaceBasis& b);

struct IsotropyReport {
  std::size_t pairs = 0;
  std::vector<std::string> nonzero;  // "i,j: value"
  bool isotropic() const { return nonzero.empty(); }
};
IsotropyReport isotropy_check(const SubspaceBasis& basis, const PairingSpec& spec);

struct ClosureReport {
  std::size_t pairs = 0;
  std::vector<std::string> failures;
  bool closed() const { return failures.empty(); }
};
/// Brackets of all pairs must satisfy `member`.
ClosureReport bracket_closure(const SubspaceBasis& basis, Membership (*member)(const LoopElt&));

struct DualityReport {
  std::size_t rows = 0, cols = 0, rank = 0;
  std::vector<std::size_t> zero_rows;
  bool full() const { return rank == rows && rank == cols; }
};
/// gplus_spanning(n) against x l^{-k}, 0 <= k <= n - 1.
DualityReport duality_rank(int n, const PairingSpec& spec);

// ---------------------------------------------------------------- decomposition

struct Decomposition {
  LoopElt plus;   // g+ part
  LoopElt minus;  // part supported in degrees <= 0
};

struct DecompositionPair {
  Decomposition by_operator;  // (1 -+ R)/2
  Decomposition by_solve;     // coordinates on gplus_spanning + negative_truncation
  bool agree() const;
};

DecompositionPair decompose_both(const LoopElt& A, const PencilCoeffs& a, const ConventionProfile& profile);
/// by_solve result; throws DecompositionMismatch when the two methods differ.
Decomposition decompose(const LoopElt& A, const PencilCoeffs& a, const ConventionProfile& profile);

/// Deterministic pseudo-random loop element with degrees in [-n, n].
LoopElt random_loop(std::uint64_t seed, int n);

}  // namespace cybelab
