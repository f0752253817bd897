#pragma once

// Sobolev norms of radial fields and corotational maps by three routes:
//   definition       sum over multi-indices of ||d^alpha phi||_{L^p(B^d_r)}^p
//   profile_d        weighted norms of D^j f on (0, r)
//   profile_squared  weighted norms of f~^{(j)} on (0, r^2)
// plus the Hardy-type inequalities with explicit constants.
//
// Ball integrals factor into radius x sphere. For p = 2 the angular part is
// exact (monomial moments of the expansion polynomials). Otherwise the sphere
// is sampled: an adaptive radial partition is fixed from a deterministic
// 64-direction pilot, and each Gauss node of the refined partition gets
// its own seeded sphere batch (stratified estimator).

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "radsob/corpus.hpp"
#include "radsob/derivcalc.hpp"
#include "radsob/profile.hpp"
#include "radsob/report.hpp"

namespace radsob {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class AngularMethod { ExactAngular, MonteCarlo };
enum class Aggregation { SumOfNorms, PPower };

std::string to_string(AngularMethod m);
std::string to_string(Aggregation a);

struct NormOptions {
  double tol = 1e-10;
  AngularMethod method = AngularMethod::ExactAngular;
  std::uint64_t seed = 20240001;
  std::size_t samples = 200000;
  /// Sub-stream id; distinct tasks draw independent sphere samples.
  std::uint64_t task = 0;
};

struct NormValue {
  double value = 0.0;
  double error = 0.0;
  std::string method;
  bool converged = true;
};

/// Weight exponents of the two profile routes.
struct WeightFamily {
  int dim;
  int k;
  double p;

  /// (d-1)/p + j, on (0, r).
  double radius_exponent(int j) const;
  /// (d-2)/(2p) + j/2, on (0, r^2).
  double squared_exponent(int j) const;
};

/// sum over components of int_{B_r} |component|^p dx, raw (not p-th root).
/// r may be kInfinity when the profile decays. ExactAngular needs p = 2.
NormValue ball_power_integral(std::span<const RadialExpansion> components, const Profile& f, int dim, double p,
                              double r, const NormOptions& options);

struct LpRoutes {
  NormValue definition;
  NormValue profile_d;
  NormValue profile_squared;
};

/// ||phi||_{L^p(B_r)} = (|S| ||rho^{(d-1)/p} f||^p)^{1/p} = (|S|/2 ||s^{(d-2)/(2p)} f~||^p)^{1/p}.
LpRoutes lp_radial(const RadialField& phi, double p, double r, const NormOptions& options);

/// (sum_{|alpha| <= k} ||d^alpha phi||_p^p)^{1/p}.
NormValue sobolev_ball_definition(const RadialField& phi, int k, double p, double r, const NormOptions& options);

/// Aggregated ||rho^{(d-1)/p + j} D^j f||_{L^p(0,r)}, j = 0..k.
NormValue sobolev_profile_d(const Profile& f, int dim, int k, double p, double r, Aggregation aggregation,
                            double tol);

/// Aggregated ||s^{(d-2)/(2p) + j/2} g^{(j)}||_{L^p(0,r2)}, j = 0..k, r2 = r^2.
NormValue sobolev_profile_squared(const SquaredProfile& g, int dim, int k, double p, double r2,
                                  Aggregation aggregation, double tol);

struct HomogeneousRoutes {
  NormValue definition;  // only |alpha| = k, over R^d
  NormValue profile_d;
  NormValue profile_squared;
};

/// Top-order norms on R^d / (0, inf). Requires every term to decay and
/// D^k f != 0.
HomogeneousRoutes homogeneous_norm(const Profile& f, int dim, int k, double p, const NormOptions& options);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs_boundary = 0.0;
  double rhs_integral = 0.0;
  double error = 0.0;

  double rhs() const { return rhs_boundary + rhs_integral; }
  double slack() const { return rhs() - lhs; }
};

/// int_0^r x^{ps}|f|^p <= p/(ps+1) r^{ps+1}|f(r)|^p + (p/(ps+1))^p int_0^r x^{p(s+1)}|f'|^p.
/// r = kInfinity drops the boundary term (requires decay). Requires p >= 1, s > -1/p.
InequalityCheck hardy_check(const Profile& f, double p, double r, double s, double tol);
InequalityCheck hardy_check(const SquaredProfile& f, double p, double r, double s, double tol);

/// |f(r)|^p <= 2^{p-1}(s+1)^p / r^{ps+1} int x^{ps}|f|^p + 2^{p-1} / r^{ps+1} int x^{p(s+1)}|f'|^p.
InequalityCheck boundary_check(const Profile& f, double p, double r, double s, double tol);
InequalityCheck boundary_check(const SquaredProfile& f, double p, double r, double s, double tol);

/// F_i(x) = x_i f(|x|), i = 1..d.
class CorotField {
 public:
  CorotField(int dim, Profile profile);

  int dim() const noexcept { return dim_; }
  const Profile& profile() const noexcept { return profile_; }
  /// F_i(x), 0-based i.
  double component(int i, std::span<const double> x) const;

 private:
  int dim_;
  Profile profile_;
};

/// d^alpha F_i = x_i d^alpha phi + alpha_i d^{alpha - e_i} phi, expanded in D^j f.
RadialExpansion corot_expansion(int dim, int i, const MultiIndex& alpha);

/// ||F||_{H^k(B^d_r)}.
NormValue corot_lhs(const CorotField& field, int k, double r, double tol);
/// ||f(|.|)||_{H^k(B^{d+2}_r)} by the exact-angular definition route.
NormValue corot_rhs(const Profile& f, int dim, int k, double r, double tol);
/// Same right-hand side by the weighted profile route at dimension d+2.
NormValue corot_rhs_profile(const Profile& f, int dim, int k, double r, double tol);

/// Integrated form of
///   |x|^2 |d^a phi|^2 = sum_i |d^a F_i|^2 - sum_i d_i(a_i x_i |d^{a-e_i} phi|^2)
///                       - sum_i a_i(a_i-1) |d^{a-e_i} phi|^2
/// over B^d_r; the divergence term becomes a sphere integral at radius r.
struct DivergenceIdentity {
  double weighted_lhs = 0.0;  // || |x| d^a phi ||^2
  double corot_sum = 0.0;     // sum_i ||d^a F_i||^2
  double boundary = 0.0;      // sum_i a_i r^d int_S w_i^2 |d^{a-e_i} phi(r w)|^2
  double interior = 0.0;      // sum_i a_i(a_i-1) ||d^{a-e_i} phi||^2
  double error = 0.0;

  double residual() const { return weighted_lhs - (corot_sum - boundary - interior); }
};
DivergenceIdentity corot_divergence_identity(const Profile& f, const MultiIndex& alpha, double r, double tol);

struct EquivalenceParams {
  int dim = 3;
  int k = 2;
  double p = 2.0;
  double r = 1.0;  // kInfinity selects the homogeneous norms
  AngularMethod method = AngularMethod::ExactAngular;
  std::uint64_t seed = 20240001;
  std::size_t samples = 200000;
  double tol = 1e-10;
  Aggregation aggregation = Aggregation::SumOfNorms;
  std::string corpus_name = "builtin";
};

/// Routes definition / profile_d / profile_squared per profile and their ratios.
NormReport equivalence_report(const Corpus& corpus, const EquivalenceParams& params);

/// Routes corot_lhs / corot_rhs / corot_rhs_profile_d per profile and ratios.
/// p must be 2.
NormReport corot_report(const Corpus& corpus, const EquivalenceParams& params);

/// Shared parameter block of a report.
std::vector<ReportParam> report_params(const EquivalenceParams& params);

}  // namespace radsob
