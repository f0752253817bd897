#pragma once

// Deterministic numerical integration: adaptive composite Gauss-Legendre on
// intervals and the half-line, sphere areas and monomial moments, and a seeded
// Monte Carlo sphere integrator.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "radsob/index_poly.hpp"

namespace radsob {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  /// Maximum bisection depth of any panel.
  int max_depth = 40;
  /// Hard cap on the number of leaf panels.
  int max_panels = 20000;
  /// Points where g may be non-smooth (kinks of |h|^p at sign changes of h).
  /// Those inside (a, b) start their own panels, so no Gauss rule straddles one.
  std::vector<double> breakpoints;
};

struct Panel {
  double a;
  double b;
};

using Integrand = std::function<double(double)>;

/// 15-node Gauss-Legendre rule on [-1, 1] (exact for degree <= 29).
std::span<const double> gauss_legendre_nodes();
std::span<const double> gauss_legendre_weights();

/// Integral of g over [a, b] by globally adaptive bisection of 15-node
/// Gauss-Legendre panels. A panel's error estimate is the difference between
/// its one-panel and two-half-panel values. Converged when the summed estimate
/// is below max(rel_tol |I|, abs_tol) or below the rounding floor of the
/// absolute integral. Unconverged results carry the best estimate.
QuadResult integrate_1d(const Integrand& g, double a, double b, const QuadOptions& options,
                        std::vector<Panel>* partition = nullptr);

/// Convenience form with rel_tol = tol.
QuadResult integrate_1d(const Integrand& g, double a, double b, double tol);

/// Pointwise upper bound sum_i C_i x^{M_i} exp(-b_i x^2) (gaussian) or
/// exp(-b_i x) (exponential), b_i > 0. Supplies rigorous tail bounds.
class Envelope {
 public:
  struct Term {
    double coeff;
    double power;
    double rate;
    bool gaussian;
  };

  Envelope() = default;
  explicit Envelope(std::vector<Term> terms);

  /// C (1 + x^M) exp(-b x^2).
  static Envelope gaussian(double coeff, double power, double rate);

  std::span<const Term> terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  double operator()(double x) const;
  /// Upper bound for the integral over [t, inf).
  double tail(double t) const;
  /// Integral over [0, inf).
  double mass() const { return tail(0.0); }

  Envelope scaled(double c) const;
  Envelope times_power(double w) const;
  /// Bound for |sum|^p given bounds of each term: m^{p-1} sum |t|^p.
  Envelope pow(double p) const;

  friend Envelope operator+(const Envelope& a, const Envelope& b);
  friend Envelope operator*(const Envelope& a, const Envelope& b);

 private:
  std::vector<Term> terms_;
};

/// Integral over [0, inf) of g, which must satisfy |g| <= envelope. The
/// truncation point is chosen so the envelope tail is below tol/2 of the
/// integral's size. Throws ConfigError for an envelope without decay.
QuadResult integrate_halfline(const Integrand& g, double tol, const Envelope& envelope,
                              std::vector<Panel>* partition = nullptr, double* cutoff = nullptr,
                              const std::vector<double>& breakpoints = {});

/// Envelope-parameter overload: |g| <= C (1 + x^M) exp(-b_min x^2).
QuadResult integrate_halfline(const Integrand& g, double tol, double b_min, double coeff = 1.0,
                              double power = 0.0);

/// Integral of x^e g(x) over [0, b], e > -1, b finite or +inf. Non-integer
/// exponents are removed by x = u^q with integral q(e+1) when such q <= 12
/// exists. For b = inf, `envelope` must bound |x^e g(x)|.
QuadResult integrate_power_weighted(const Integrand& g, double exponent, double b, double tol,
                                    const Envelope* envelope = nullptr, const std::vector<double>& breakpoints = {});

/// Points of (a, b) where h changes sign: a uniform scan of `cells` cells,
/// then bisection to full precision. Exact zeros on the scan grid are
/// reported as well. Misses roots of even multiplicity between grid points
/// and pairs of roots inside one cell.
std::vector<double> sign_changes(const Integrand& h, double a, double b, int cells = 1024);

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// Integral of omega^beta over S^{d-1}.
double sphere_monomial_moment(const MultiIndex& beta);

/// Integral of a polynomial over S^{d-1} via monomial moments.
double sphere_integral(const MonomialPoly& poly);

/// Seeded stream of uniform points on S^{d-1}: d standard normals
/// normalized. (dim, seed, count, task) fully determine the stream.
class SphereSampler {
 public:
  SphereSampler(int dim, std::uint64_t seed, std::size_t count, std::uint64_t task = 0);

  int dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t count() const noexcept { return count_; }
  std::uint64_t task() const noexcept { return task_; }

  /// Independent stream for a sub-task, same seed and dimension.
  SphereSampler substream(std::uint64_t task, std::size_t count) const;

  void for_each(const std::function<void(std::span<const double>)>& visit) const;
  std::vector<std::vector<double>> samples() const;

 private:
  int dim_;
  std::uint64_t seed_;
  std::size_t count_;
  std::uint64_t task_;
};

using SphereIntegrand = std::function<double(std::span<const double>)>;

/// |S^{d-1}| mean g(omega_k); error = |S^{d-1}| std / sqrt(N).
QuadResult mc_sphere_integral(const SphereIntegrand& g, const SphereSampler& sampler);

}  // namespace radsob
