#pragma once

// Partial derivatives of radial fields in terms of D^j f, and the inverse
// direction: recovering |x|^n (D^n f)(|x|) from the order-n partials through
// the Gram matrix of the polynomials p^j_I(e_d).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "radsob/index_poly.hpp"
#include "radsob/profile.hpp"

namespace radsob {

inline constexpr std::uint64_t kDefaultIndexBudget = 10'000'000;

/// poly(x) * (D^order f)(|x|); poly is homogeneous.
struct ExpansionTerm {
  int order;
  MonomialPoly poly;
};

/// sum of ExpansionTerms: a smooth function built from a radial profile.
struct RadialExpansion {
  int dim;
  std::vector<ExpansionTerm> terms;

  int max_order() const noexcept;
};

/// d^alpha phi = sum_{j=ceil(n/2)}^{n} Delta^{n-j} x^alpha / (2^{n-j} (n-j)!) D^j f,
/// n = |alpha|. Zero polynomial terms are dropped.
RadialExpansion partial_expansion(const MultiIndex& alpha);

/// The profiles D^0 f, ..., D^K f.
class DerivativeTower {
 public:
  DerivativeTower(const Profile& f, int max_order);

  int max_order() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const Profile& operator[](int j) const { return levels_.at(static_cast<std::size_t>(j)); }
  /// (D^0 f)(rho), ..., (D^K f)(rho).
  std::vector<double> values(double rho) const;

 private:
  std::vector<Profile> levels_;
};

/// Evaluates an expansion at x given precomputed (D^j f)(|x|).
double eval_expansion(const RadialExpansion& e, std::span<const double> x, std::span<const double> dvals);

/// d^alpha phi (x). Defined at x = 0.
double partial_derivative(const RadialField& phi, const MultiIndex& alpha, std::span<const double> x);

/// f^{(j)}(|x|) = sum_{|alpha| = j} d^alpha phi(x) (j!/alpha!) x^alpha / |x|^j. Rejects x = 0.
double profile_derivative_from_partials(const RadialField& phi, int j, std::span<const double> x);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact Gauss-Jordan; throws ConfigError if singular.
RationalMatrix invert_exact(const RationalMatrix& m);
std::vector<Rational> solve_exact(const RationalMatrix& m, std::span<const Rational> rhs);
/// det of the leading k x k blocks, k = 1..size.
std::vector<Rational> leading_principal_minors(const RationalMatrix& m);

/// gamma_ij(d, n) = sum_{I in {1..d}^n} p^i_I(e_d) p^j_I(e_d), i, j = 0..floor(n/2),
/// with its exact inverse.
class GramMatrix {
 public:
  GramMatrix(int dim, int order, RationalMatrix entries);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(entries_.size()); }
  const RationalMatrix& entries() const noexcept { return entries_; }
  const RationalMatrix& inverse() const noexcept { return inverse_; }

  bool is_symmetric() const;
  bool is_positive_definite() const;

 private:
  int dim_;
  int order_;
  RationalMatrix entries_;
  RationalMatrix inverse_;
};

/// Enumerates all dim^order d-indices; throws BudgetExceeded past `budget`.
GramMatrix gram_matrix(int dim, int order, std::uint64_t budget = kDefaultIndexBudget);

/// Same sum with p^i_I evaluated at an arbitrary unit vector, in doubles.
std::vector<std::vector<double>> gram_matrix_at(int dim, int order, std::span<const double> unit,
                                                std::uint64_t budget = kDefaultIndexBudget);

/// Exact solution of Gamma y = lhs, where y_j stands for |x|^{n-2j} (D^{n-j} f)(|x|).
std::vector<Rational> solve_linear_system(const GramMatrix& gram, std::span<const Rational> lhs);
std::vector<Rational> solve_linear_system(int dim, int order, std::span<const Rational> lhs);

/// q_alpha for |alpha| = n:
///   q_alpha(w) = sum_{I -> alpha} sum_j gamma^{0j} p^j_I(w) |w|^{2j},
/// summed over the n!/alpha! d-indices I that collapse to alpha. The |w|^{2j}
/// factor makes q_alpha homogeneous of degree n without changing its values
/// on the unit sphere.
class RecoveryCoeffs {
 public:
  RecoveryCoeffs(int dim, int order, std::map<MultiIndex, MonomialPoly> coeffs);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  const std::map<MultiIndex, MonomialPoly>& coeffs() const noexcept { return coeffs_; }
  const MonomialPoly& operator[](const MultiIndex& alpha) const { return coeffs_.at(alpha); }

 private:
  int dim_;
  int order_;
  std::map<MultiIndex, MonomialPoly> coeffs_;
};

RecoveryCoeffs recovery_coeffs(int dim, int order, std::uint64_t budget = kDefaultIndexBudget);

/// |x|^n (D^n f)(|x|) = sum_{|alpha| = n} q_alpha(x/|x|) d^alpha phi(x). Rejects x = 0.
double recover_Dn(const RadialField& phi, int order, std::span<const double> x);
double recover_Dn(const RadialField& phi, const RecoveryCoeffs& q, std::span<const double> x);

/// Precomputed expansions and tower for repeated pointwise evaluation.
class RadialDerivatives {
 public:
  RadialDerivatives(const RadialField& phi, int max_order);

  int dim() const noexcept { return dim_; }
  double partial(const MultiIndex& alpha, std::span<const double> x) const;
  const DerivativeTower& tower() const noexcept { return tower_; }

 private:
  int dim_;
  DerivativeTower tower_;
  std::map<MultiIndex, RadialExpansion> expansions_;
};

}  // namespace radsob
