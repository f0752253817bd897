#pragma once

// Multi-indices, d-indices and exact sparse polynomials in monomial form.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radsob {

using Rational = mpq_class;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Exponent tuple (alpha_1, ..., alpha_d). Positions are 0-based.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(int dim);
  /// e_i, 0-based position.
  static MultiIndex unit(int dim, int i);

  int dim() const noexcept { return static_cast<int>(entries_.size()); }
  int order() const noexcept;
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  std::span<const int> entries() const noexcept { return entries_; }

  /// alpha! = prod alpha_i!
  mpz_class factorial() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// alpha - e_i, or nullopt when alpha_i == 0.
  std::optional<MultiIndex> minus_unit(int i) const;

  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// Coordinate tuple (i_1, ..., i_n), each value in {1, ..., dim}.
class DIndex {
 public:
  DIndex(int dim, std::vector<int> entries);

  int dim() const noexcept { return dim_; }
  int length() const noexcept { return static_cast<int>(entries_.size()); }
  std::span<const int> entries() const noexcept { return entries_; }

  /// Occurrence counts of each coordinate value.
  MultiIndex collapse() const;

  auto operator<=>(const DIndex&) const = default;

 private:
  int dim_;
  std::vector<int> entries_;
};

/// All alpha with |alpha| = n, lexicographically increasing.
std::vector<MultiIndex> enumerate_multi(int dim, int n);

/// All alpha with |alpha| <= n, grouped by order then lexicographic.
std::vector<MultiIndex> enumerate_multi_upto(int dim, int n);

/// Visits all dim^n d-indices in lexicographic order.
void for_each_dindex(int dim, int n, const std::function<void(const DIndex&)>& visit);

/// All dim^n d-indices. Intended for small cases; see for_each_dindex.
std::vector<DIndex> enumerate_dindex(int dim, int n);

/// Finite sum of c_alpha x^alpha with exact rational coefficients.
/// No stored coefficient is zero; the zero polynomial has no terms.
class MonomialPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  explicit MonomialPoly(int dim);

  static MonomialPoly constant(int dim, const Rational& c);
  static MonomialPoly monomial(const MultiIndex& alpha, const Rational& c = 1);
  /// x_{i_1} ... x_{i_n}
  static MonomialPoly coordinate_product(const DIndex& index);
  /// |x|^2 = sum_i x_i^2
  static MonomialPoly squared_norm(int dim);

  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }
  Rational coefficient(const MultiIndex& alpha) const;

  /// Degree if every term has the same order; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree() const;

  MonomialPoly& operator+=(const MonomialPoly& other);
  MonomialPoly& operator-=(const MonomialPoly& other);
  MonomialPoly& operator*=(const Rational& c);

  friend MonomialPoly operator+(MonomialPoly a, const MonomialPoly& b) { return a += b; }
  friend MonomialPoly operator-(MonomialPoly a, const MonomialPoly& b) { return a -= b; }
  friend MonomialPoly operator*(MonomialPoly a, const Rational& c) { return a *= c; }
  friend MonomialPoly operator*(const Rational& c, MonomialPoly a) { return a *= c; }
  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b);

  bool operator==(const MonomialPoly& other) const;

  double eval(std::span<const double> x) const;

 private:
  void add_term(const MultiIndex& alpha, const Rational& c);

  int dim_;
  TermMap terms_;
};

MonomialPoly pow(const MonomialPoly& base, int exponent);

/// Term-by-term Laplacian: x^alpha -> sum_i alpha_i (alpha_i - 1) x^{alpha - 2 e_i}.
MonomialPoly laplacian(const MonomialPoly& poly);

/// Laplacian applied j times.
MonomialPoly laplacian_power(const MonomialPoly& poly, int j);

/// p^j_I = Delta^j (x_{i_1} ... x_{i_n}) / (2^j j!), 0 <= j <= floor(n/2).
MonomialPoly p_poly(const DIndex& index, int j);

/// Same polynomial keyed by the collapsed multi-index (p^j_I depends on I only
/// through its collapse).
MonomialPoly p_poly(const MultiIndex& alpha, int j);

/// Multiplies term j of degree m by |x|^{degree - m} so the result is
/// homogeneous of the given degree. Requires degree - m even and >= 0 for
/// every term.
MonomialPoly homogenize(const MonomialPoly& poly, int degree);

/// Double-precision copy of a MonomialPoly for repeated evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const MonomialPoly& poly);

  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Sum of absolute coefficients, bounds |P| on the unit sphere.
  double abs_coefficient_sum() const noexcept;
  double eval(std::span<const double> x) const;

 private:
  int dim_ = 0;
  int max_exponent_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exponents_;  // row-major, dim_ per term
};

}  // namespace radsob
