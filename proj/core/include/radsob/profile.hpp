#pragma once

// Closed-form radial profiles.
//
//   Profile        f(rho) = sum c rho^a exp(-b rho^2)
//   SquaredProfile g(s)   = sum c s^a   exp(-b s)
//
// Both are closed under differentiation. An even Profile (all powers even)
// and its SquaredProfile satisfy f(rho) = g(rho^2).

#include <span>
#include <string>
#include <vector>

#include "radsob/quad.hpp"

namespace radsob {

struct Term {
  double coeff;
  int power;
  double decay;

  bool operator==(const Term&) const = default;
};

struct RadiusVariable {
  static constexpr bool gaussian = true;
};
struct SquaredVariable {
  static constexpr bool gaussian = false;
};

/// Canonical term list: terms with equal (power, decay) merged, zero
/// coefficients dropped, sorted by (decay, power).
template <class Variable>
class BasicProfile {
 public:
  BasicProfile() = default;
  explicit BasicProfile(std::vector<Term> terms);

  static BasicProfile constant(double c) { return BasicProfile({{c, 0, 0.0}}); }

  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_even() const noexcept;
  /// Every term decays (b > 0); required on the half-line.
  bool has_decay() const noexcept;
  int max_power() const noexcept;

  double operator()(double x) const;

  BasicProfile derivative(int order = 1) const;

  /// |f(x)| <= envelope(x), for half-line tail bounds.
  Envelope envelope() const;

  BasicProfile& operator+=(const BasicProfile& other);
  friend BasicProfile operator+(BasicProfile a, const BasicProfile& b) { return a += b; }
  friend BasicProfile operator*(double c, const BasicProfile& a) { return a.scaled(c); }
  BasicProfile scaled(double c) const;

  bool operator==(const BasicProfile&) const = default;

  std::string str() const;

 private:
  void canonicalize();

  std::vector<Term> terms_;
};

using Profile = BasicProfile<RadiusVariable>;
using SquaredProfile = BasicProfile<SquaredVariable>;

extern template class BasicProfile<RadiusVariable>;
extern template class BasicProfile<SquaredVariable>;

/// (c, a, b) -> (c, a/2, b). Throws ConfigError unless f is even.
SquaredProfile to_squared(const Profile& f);

/// (c, a, b) -> (c, 2a, b); the result is even.
Profile from_squared(const SquaredProfile& g);

/// D^j f with (D f)(rho) = f'(rho) / rho, computed as 2^j g^{(j)}(rho^2)
/// through the squared representative. Requires f even.
Profile d_op(const Profile& f, int j);

/// g^{(n)}(rho^2) by quadrature of
///   (1 / (2^{2n-1} (n-1)!)) int_0^1 (1 - t^2)^{n-1} f^{(2n)}(t rho) dt.
QuadResult whitney_derivative(const Profile& f, int n, double rho, double tol);

/// phi(x) = f(|x|) on R^d, d >= 2, f even.
class RadialField {
 public:
  RadialField(int dim, Profile profile);

  int dim() const noexcept { return dim_; }
  const Profile& profile() const noexcept { return profile_; }

  double operator()(std::span<const double> x) const;

 private:
  int dim_;
  Profile profile_;
};

double euclidean_norm(std::span<const double> x);

}  // namespace radsob
