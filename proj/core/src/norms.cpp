#include "radsob/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <type_traits>

#include "radsob/errors.hpp"
#include "radsob/quad.hpp"

namespace radsob {

std::string to_string(AngularMethod m) {
  return m == AngularMethod::ExactAngular ? "exact-angular" : "monte-carlo";
}

std::string to_string(Aggregation a) { return a == Aggregation::SumOfNorms ? "sum-of-norms" : "p-power"; }

double WeightFamily::radius_exponent(int j) const { return (dim - 1) / p + j; }
double WeightFamily::squared_exponent(int j) const { return (dim - 2) / (2.0 * p) + 0.5 * j; }

namespace {

constexpr const char* kRadialMethod = "radial-quadrature";
constexpr std::size_t kPilotDirections = 64;
constexpr std::size_t kMinSamplesPerNode = 8;

void require_p(double p) {
  if (!(p >= 1) || !std::isfinite(p)) throw ConfigError("p must be a finite number >= 1");
}

void require_radius(double r) {
  if (!(r > 0)) throw ConfigError("radius must be > 0");
}

double abs_pow(double v, double p) {
  if (p == 2) return v * v;
  if (p == 1) return std::abs(v);
  return std::pow(std::abs(v), p);
}

/// |v|^p is smooth in v exactly when p is an even integer.
bool smooth_power(double p) { return std::fmod(p, 2.0) == 0.0; }

/// Where |h|^p has kinks: the sign changes of h on (0, upper). On the
/// half-line the scan stops once h's envelope is negligible.
template <class Variable>
std::vector<double> kinks(const BasicProfile<Variable>& h, double p, double upper) {
  if (h.is_zero() || smooth_power(p)) return {};
  double limit = upper;
  if (!std::isfinite(limit)) {
    const Envelope env = h.envelope();
    limit = 1.0;
    while (limit < 1e4 && env(limit) > 1e-60) limit *= 2;
  }
  return sign_changes([&](double x) { return h(x); }, 0.0, limit);
}

/// x^{1/p} with first-order error propagation.
NormValue root(double integral, double error, double p, std::string method, bool converged) {
  NormValue out;
  out.method = std::move(method);
  out.converged = converged;
  const double v = std::max(integral, 0.0);
  out.value = std::pow(v, 1.0 / p);
  out.error = v > 0 ? out.value * error / (p * v) : std::pow(error, 1.0 / p);
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t subtask(std::uint64_t task, std::uint64_t node) { return splitmix(splitmix(task) ^ node); }

// ---------------------------------------------------------------------------
// exact angular path

/// int_S w P_j P_l, grouped by (j, l, deg P_j + deg P_l).
struct KernelEntry {
  int j;
  int l;
  int degree;
  double coeff;
};

class MomentCache {
 public:
  double operator()(const MultiIndex& beta) {
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    const double v = sphere_monomial_moment(beta);
    cache_.emplace(beta, v);
    return v;
  }

 private:
  std::map<MultiIndex, double> cache_;
};

int term_degree(const ExpansionTerm& t) {
  auto deg = t.poly.homogeneous_degree();
  if (!deg) throw std::logic_error("expansion term is not homogeneous");
  return *deg;
}

std::vector<KernelEntry> angular_kernel(std::span<const RadialExpansion> components, const MonomialPoly* weight) {
  MomentCache moments;
  std::map<std::tuple<int, int, int>, double> acc;
  for (const auto& comp : components) {
    for (const auto& a : comp.terms) {
      const int da = term_degree(a);
      const MonomialPoly wa = weight ? *weight * a.poly : a.poly;
      for (const auto& b : comp.terms) {
        const MonomialPoly prod = wa * b.poly;
        double s = 0;
        for (const auto& [beta, c] : prod.terms()) s += c.get_d() * moments(beta);
        if (s != 0) acc[{a.order, b.order, da + term_degree(b)}] += s;
      }
    }
  }
  std::vector<KernelEntry> out;
  for (const auto& [key, c] : acc) {
    if (c != 0) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  }
  return out;
}

int kernel_max_order(std::span<const KernelEntry> kernel) {
  int m = 0;
  for (const auto& e : kernel) m = std::max({m, e.j, e.l});
  return m;
}

/// int_0^r rho^{d-1+shift+deg} sum K D^j f D^l f d rho.
QuadResult exact_radial(std::span<const KernelEntry> kernel, const Profile& f, int dim, int shift, double r,
                        double tol) {
  if (kernel.empty() || f.is_zero()) return {};
  const DerivativeTower tower(f, kernel_max_order(kernel));
  auto h = [&](double rho) {
    const auto dv = tower.values(rho);
    double s = 0;
    for (const auto& e : kernel) {
      s += e.coeff * std::pow(rho, dim - 1 + shift + e.degree) * dv[static_cast<std::size_t>(e.j)] *
           dv[static_cast<std::size_t>(e.l)];
    }
    return s;
  };
  if (std::isfinite(r)) {
    QuadOptions opt;
    opt.rel_tol = tol;
    return integrate_1d(h, 0.0, r, opt);
  }
  Envelope env;
  for (const auto& e : kernel) {
    env = env + (tower[e.j].envelope() * tower[e.l].envelope())
                    .scaled(std::abs(e.coeff))
                    .times_power(dim - 1 + shift + e.degree);
  }
  return integrate_halfline(h, tol, env);
}

/// sum K r^deg D^j f(r) D^l f(r): the angular integral at radius r.
double exact_sphere(std::span<const KernelEntry> kernel, const Profile& f, double r) {
  if (kernel.empty() || f.is_zero()) return 0.0;
  const DerivativeTower tower(f, kernel_max_order(kernel));
  const auto dv = tower.values(r);
  double s = 0;
  for (const auto& e : kernel) {
    s += e.coeff * std::pow(r, e.degree) * dv[static_cast<std::size_t>(e.j)] * dv[static_cast<std::size_t>(e.l)];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Monte Carlo path

class AngularIntegrand {
 public:
  AngularIntegrand(std::span<const RadialExpansion> components, const Profile& f, double p)
      : p_(p), tower_(f, max_order(components)) {
    for (std::size_t c = 0; c < components.size(); ++c) {
      for (const auto& t : components[c].terms) {
        const int deg = term_degree(t);
        if (deg > 0) angle_free_ = false;
        terms_.push_back({c, t.order, deg, NumericPoly(t.poly)});
      }
    }
    radial_.resize(terms_.size());
    acc_.resize(components.size());
  }

  bool angle_free() const noexcept { return angle_free_; }
  int max_order() const noexcept { return tower_.max_order(); }

  void set_radius(double rho) {
    const auto dv = tower_.values(rho);
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      radial_[t] = std::pow(rho, terms_[t].degree) * dv[static_cast<std::size_t>(terms_[t].order)];
    }
  }

  double operator()(std::span<const double> omega) {
    std::fill(acc_.begin(), acc_.end(), 0.0);
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      if (radial_[t] == 0) continue;
      acc_[terms_[t].comp] += terms_[t].poly.eval(omega) * radial_[t];
    }
    double s = 0;
    for (double v : acc_) s += abs_pow(v, p_);
    return s;
  }

  /// Bound of the angular integral as a function of rho.
  Envelope envelope(int dim) const {
    std::vector<Envelope> per(acc_.size());
    for (const auto& t : terms_) {
      per[t.comp] = per[t.comp] + tower_[t.order].envelope().scaled(t.poly.abs_coefficient_sum()).times_power(t.degree);
    }
    Envelope out;
    for (const auto& e : per) out = out + e.pow(p_);
    return out.scaled(sphere_area(dim));
  }

 private:
  struct Flat {
    std::size_t comp;
    int order;
    int degree;
    NumericPoly poly;
  };

  static int max_order(std::span<const RadialExpansion> components) {
    int m = 0;
    for (const auto& c : components) m = std::max(m, c.max_order());
    return m;
  }

  double p_;
  DerivativeTower tower_;
  std::vector<Flat> terms_;
  std::vector<double> radial_;
  std::vector<double> acc_;
  bool angle_free_ = true;
};

NormValue monte_carlo_ball(std::span<const RadialExpansion> components, const Profile& f, int dim, double p,
                           double r, const NormOptions& options) {
  if (options.samples == 0) throw ConfigError("monte-carlo needs samples > 0");
  AngularIntegrand g(components, f, p);
  const double area = sphere_area(dim);
  const SphereSampler base(dim, options.seed, 0, options.task);
  const auto pilot = base.substream(subtask(options.task, 0), kPilotDirections).samples();

  // Pilot: deterministic directions fix the radial partition.
  auto pilot_h = [&](double rho) {
    g.set_radius(rho);
    double s = 0;
    for (const auto& w : pilot) s += g(w);
    return std::pow(rho, dim - 1) * area * s / static_cast<double>(pilot.size());
  };
  std::vector<double> breaks;
  for (int j = 0; j <= g.max_order(); ++j) {
    const auto more = kinks(d_op(f, j), p, r);
    breaks.insert(breaks.end(), more.begin(), more.end());
  }
  std::vector<Panel> partition;
  QuadResult pilot_result;
  if (std::isfinite(r)) {
    QuadOptions opt;
    opt.rel_tol = options.tol;
    opt.breakpoints = breaks;
    pilot_result = integrate_1d(pilot_h, 0.0, r, opt, &partition);
  } else {
    pilot_result =
        integrate_halfline(pilot_h, options.tol, g.envelope(dim).times_power(dim - 1), &partition, nullptr, breaks);
  }

  const auto nodes = gauss_legendre_nodes();
  const auto weights = gauss_legendre_weights();
  const std::size_t total_nodes = partition.size() * 2 * nodes.size();
  const std::size_t per_node =
      total_nodes == 0 ? 0
                       : std::max(kMinSamplesPerNode, (options.samples + total_nodes - 1) / total_nodes);

  double value = 0;
  double variance = 0;
  std::uint64_t q = 0;
  for (const auto& panel : partition) {
    const double mid = 0.5 * (panel.a + panel.b);
    for (const auto& [a, b] : {std::pair{panel.a, mid}, std::pair{mid, panel.b}}) {
      const double c = 0.5 * (a + b);
      const double h = 0.5 * (b - a);
      for (std::size_t i = 0; i < nodes.size(); ++i, ++q) {
        const double rho = c + h * nodes[i];
        const double w = h * weights[i] * std::pow(rho, dim - 1) * area;
        g.set_radius(rho);
        if (g.angle_free()) {
          // Constant on the sphere: every sample returns the same value.
          value += w * g(pilot.front());
          continue;
        }
        double mean = 0;
        double m2 = 0;
        std::size_t n = 0;
        base.substream(subtask(options.task, q + 1), per_node).for_each([&](std::span<const double> omega) {
          const double v = g(omega);
          ++n;
          const double delta = v - mean;
          mean += delta / static_cast<double>(n);
          m2 += delta * (v - mean);
        });
        value += w * mean;
        variance += w * w * m2 / (static_cast<double>(n - 1) * static_cast<double>(n));
      }
    }
  }
  NormValue out;
  out.value = value;
  out.error = std::sqrt(variance) + pilot_result.error_estimate;
  out.method = to_string(AngularMethod::MonteCarlo);
  out.converged = pilot_result.converged;
  return out;
}

std::vector<RadialExpansion> definition_components(int dim, int k, bool top_only) {
  std::vector<RadialExpansion> out;
  const auto alphas = top_only ? enumerate_multi(dim, k) : enumerate_multi_upto(dim, k);
  for (const auto& alpha : alphas) out.push_back(partial_expansion(alpha));
  return out;
}

NormValue ball_root(std::span<const RadialExpansion> components, const Profile& f, int dim, double p, double r,
                    const NormOptions& options) {
  const NormValue raw = ball_power_integral(components, f, dim, p, r, options);
  return root(raw.value, raw.error, p, raw.method, raw.converged);
}

/// int_0^r x^e |f|^p, r finite or kInfinity.
template <class Variable>
QuadResult weighted_power(const BasicProfile<Variable>& f, double p, double e, double r, double tol) {
  if (f.is_zero()) return {};
  auto g = [&](double x) { return abs_pow(f(x), p); };
  const auto breaks = kinks(f, p, r);
  if (std::isfinite(r)) return integrate_power_weighted(g, e, r, tol, nullptr, breaks);
  const Envelope env = f.envelope().pow(p).times_power(e);
  return integrate_power_weighted(g, e, r, tol, &env, breaks);
}

/// Each weighted term of a profile route as a raw p-th power integral.
template <class Variable>
std::vector<QuadResult> weighted_terms(const BasicProfile<Variable>& f, int k, double p, double upper,
                                       const std::function<double(int)>& exponent, double tol) {
  std::vector<QuadResult> out;
  for (int j = 0; j <= k; ++j) {
    BasicProfile<Variable> dj;
    if constexpr (std::is_same_v<Variable, RadiusVariable>) {
      dj = d_op(f, j);
    } else {
      dj = f.derivative(j);
    }
    out.push_back(weighted_power(dj, p, p * exponent(j), upper, tol));
  }
  return out;
}

NormValue aggregate(const std::vector<QuadResult>& terms, double p, Aggregation aggregation) {
  bool converged = true;
  for (const auto& t : terms) converged = converged && t.converged;
  if (aggregation == Aggregation::PPower) {
    double s = 0, e = 0;
    for (const auto& t : terms) {
      s += t.value;
      e += t.error_estimate;
    }
    return root(s, e, p, kRadialMethod, converged);
  }
  NormValue out;
  out.method = kRadialMethod;
  out.converged = converged;
  for (const auto& t : terms) {
    const NormValue n = root(t.value, t.error_estimate, p, kRadialMethod, t.converged);
    out.value += n.value;
    out.error += n.error;
  }
  return out;
}

NormValue scaled(NormValue v, double c) {
  v.value *= c;
  v.error *= c;
  return v;
}

// ---------------------------------------------------------------------------
// Hardy-type inequalities

template <class Variable>
void validate_hardy(const BasicProfile<Variable>&, double p, double r, double s) {
  require_p(p);
  if (!(r > 0)) throw ConfigError("radius must be > 0");
  if (!(s > -1.0 / p)) throw ConfigError("Hardy checks require s > -1/p");
}

template <class Variable>
InequalityCheck hardy_impl(const BasicProfile<Variable>& f, double p, double r, double s, double tol) {
  validate_hardy(f, p, r, s);
  if (!std::isfinite(r) && !f.is_zero() && !f.has_decay()) {
    throw ConfigError("half-line Hardy check needs a decaying profile");
  }
  const double ps1 = p * s + 1.0;
  const double c = p / ps1;
  const auto lhs = weighted_power(f, p, p * s, r, tol);
  const auto rhs = weighted_power(f.derivative(1), p, p * (s + 1.0), r, tol);
  InequalityCheck out;
  out.lhs = lhs.value;
  out.rhs_integral = std::pow(c, p) * rhs.value;
  out.rhs_boundary = std::isfinite(r) ? c * std::pow(r, ps1) * abs_pow(f(r), p) : 0.0;
  out.error = lhs.error_estimate + std::pow(c, p) * rhs.error_estimate;
  return out;
}

template <class Variable>
InequalityCheck boundary_impl(const BasicProfile<Variable>& f, double p, double r, double s, double tol) {
  validate_hardy(f, p, r, s);
  if (!std::isfinite(r)) throw ConfigError("boundary check needs a finite radius");
  const double scale = std::pow(2.0, p - 1.0) / std::pow(r, p * s + 1.0);
  const auto a = weighted_power(f, p, p * s, r, tol);
  const auto b = weighted_power(f.derivative(1), p, p * (s + 1.0), r, tol);
  InequalityCheck out;
  out.lhs = abs_pow(f(r), p);
  out.rhs_boundary = scale * std::pow(s + 1.0, p) * a.value;
  out.rhs_integral = scale * b.value;
  out.error = scale * (std::pow(s + 1.0, p) * a.error_estimate + b.error_estimate);
  return out;
}

// ---------------------------------------------------------------------------
// reports

ParamValue radius_param(double r) {
  if (!std::isfinite(r)) return std::string("inf");
  return r;
}

void validate_params(const EquivalenceParams& params) {
  if (params.dim < 2) throw ConfigError("dimension must be >= 2");
  if (params.k < 0) throw ConfigError("k must be >= 0");
  require_p(params.p);
  require_radius(params.r);
  if (!(params.tol > 0)) throw ConfigError("tol must be > 0");
  if (params.method == AngularMethod::ExactAngular && params.p != 2) {
    throw ConfigError("exact-angular requires p = 2; use monte-carlo");
  }
  if (params.method == AngularMethod::MonteCarlo && params.samples == 0) {
    throw ConfigError("monte-carlo needs samples > 0");
  }
}

void add_entry(NormReport& report, const std::string& label, const std::string& route, const NormValue& v) {
  report.entries.push_back({label, route, v.value, v.error, v.method, v.converged});
}

bool usable(const NormValue& v) { return std::isfinite(v.value) && v.value > 0; }

}  // namespace

// ---------------------------------------------------------------------------

NormValue ball_power_integral(std::span<const RadialExpansion> components, const Profile& f, int dim, double p,
                              double r, const NormOptions& options) {
  require_p(p);
  require_radius(r);
  if (!std::isfinite(r) && !f.is_zero() && !f.has_decay()) {
    throw ConfigError("integration over R^d needs every profile term to decay");
  }
  for (const auto& c : components) {
    if (c.dim != dim) throw ConfigError("component dimension mismatch");
  }
  if (options.method == AngularMethod::ExactAngular) {
    if (p != 2) throw ConfigError("exact-angular requires p = 2");
    const auto kernel = angular_kernel(components, nullptr);
    const QuadResult q = exact_radial(kernel, f, dim, 0, r, options.tol);
    return {q.value, q.error_estimate, to_string(AngularMethod::ExactAngular), q.converged};
  }
  if (f.is_zero()) return {0.0, 0.0, to_string(AngularMethod::MonteCarlo), true};
  return monte_carlo_ball(components, f, dim, p, r, options);
}

LpRoutes lp_radial(const RadialField& phi, double p, double r, const NormOptions& options) {
  require_p(p);
  require_radius(r);
  const int d = phi.dim();
  const auto comps = definition_components(d, 0, false);
  LpRoutes out;
  out.definition = ball_root(comps, phi.profile(), d, p, r, options);
  out.profile_d = scaled(sobolev_profile_d(phi.profile(), d, 0, p, r, Aggregation::PPower, options.tol),
                         std::pow(sphere_area(d), 1.0 / p));
  const double r2 = std::isfinite(r) ? r * r : r;
  out.profile_squared =
      scaled(sobolev_profile_squared(to_squared(phi.profile()), d, 0, p, r2, Aggregation::PPower, options.tol),
             std::pow(0.5 * sphere_area(d), 1.0 / p));
  return out;
}

NormValue sobolev_ball_definition(const RadialField& phi, int k, double p, double r, const NormOptions& options) {
  if (k < 0) throw ConfigError("k must be >= 0");
  const auto comps = definition_components(phi.dim(), k, false);
  return ball_root(comps, phi.profile(), phi.dim(), p, r, options);
}

NormValue sobolev_profile_d(const Profile& f, int dim, int k, double p, double r, Aggregation aggregation,
                            double tol) {
  require_p(p);
  require_radius(r);
  if (dim < 2) throw ConfigError("dimension must be >= 2");
  if (k < 0) throw ConfigError("k must be >= 0");
  if (!f.is_even()) throw ConfigError("profile must be even");
  const WeightFamily w{dim, k, p};
  auto terms = weighted_terms(f, k, p, r, [&](int j) { return w.radius_exponent(j); }, tol);
  return aggregate(terms, p, aggregation);
}

NormValue sobolev_profile_squared(const SquaredProfile& g, int dim, int k, double p, double r2,
                                  Aggregation aggregation, double tol) {
  require_p(p);
  require_radius(r2);
  if (dim < 2) throw ConfigError("dimension must be >= 2");
  if (k < 0) throw ConfigError("k must be >= 0");
  const WeightFamily w{dim, k, p};
  auto terms = weighted_terms(g, k, p, r2, [&](int j) { return w.squared_exponent(j); }, tol);
  return aggregate(terms, p, aggregation);
}

HomogeneousRoutes homogeneous_norm(const Profile& f, int dim, int k, double p, const NormOptions& options) {
  require_p(p);
  if (dim < 2) throw ConfigError("dimension must be >= 2");
  if (k < 0) throw ConfigError("k must be >= 0");
  if (f.is_zero() || !f.has_decay()) throw ConfigError("homogeneous norms need every profile term to decay");
  if (d_op(f, k).is_zero()) throw ConfigError("D^k f vanishes identically");
  const WeightFamily w{dim, k, p};
  const auto comps = definition_components(dim, k, true);
  HomogeneousRoutes out;
  out.definition = ball_root(comps, f, dim, p, kInfinity, options);

  const auto qd = weighted_power(d_op(f, k), p, p * w.radius_exponent(k), kInfinity, options.tol);
  out.profile_d = scaled(root(qd.value, qd.error_estimate, p, kRadialMethod, qd.converged),
                         std::pow(sphere_area(dim), 1.0 / p));

  const auto qs =
      weighted_power(to_squared(f).derivative(k), p, p * w.squared_exponent(k), kInfinity, options.tol);
  out.profile_squared = scaled(root(qs.value, qs.error_estimate, p, kRadialMethod, qs.converged),
                               std::pow(0.5 * sphere_area(dim), 1.0 / p));
  return out;
}

InequalityCheck hardy_check(const Profile& f, double p, double r, double s, double tol) {
  return hardy_impl(f, p, r, s, tol);
}
InequalityCheck hardy_check(const SquaredProfile& f, double p, double r, double s, double tol) {
  return hardy_impl(f, p, r, s, tol);
}
InequalityCheck boundary_check(const Profile& f, double p, double r, double s, double tol) {
  return boundary_impl(f, p, r, s, tol);
}
InequalityCheck boundary_check(const SquaredProfile& f, double p, double r, double s, double tol) {
  return boundary_impl(f, p, r, s, tol);
}

// ---------------------------------------------------------------------------
// corotational maps

CorotField::CorotField(int dim, Profile profile) : dim_(dim), profile_(std::move(profile)) {
  if (dim < 2) throw ConfigError("dimension must be >= 2");
  if (!profile_.is_even()) throw ConfigError("corotational profile must be even");
}

double CorotField::component(int i, std::span<const double> x) const {
  if (i < 0 || i >= dim_ || static_cast<int>(x.size()) != dim_) throw ConfigError("bad component or point");
  return x[static_cast<std::size_t>(i)] * profile_(euclidean_norm(x));
}

RadialExpansion corot_expansion(int dim, int i, const MultiIndex& alpha) {
  if (alpha.dim() != dim || i < 0 || i >= dim) throw ConfigError("bad corotational component");
  std::map<int, MonomialPoly> by_order;
  auto add = [&](int order, const MonomialPoly& poly) {
    auto [it, inserted] = by_order.try_emplace(order, poly);
    if (!inserted) it->second += poly;
  };
  const MonomialPoly xi = MonomialPoly::monomial(MultiIndex::unit(dim, i));
  for (const auto& t : partial_expansion(alpha).terms) add(t.order, xi * t.poly);
  if (auto lower = alpha.minus_unit(i)) {
    for (const auto& t : partial_expansion(*lower).terms) add(t.order, Rational(alpha[i]) * t.poly);
  }
  RadialExpansion out{dim, {}};
  for (auto& [order, poly] : by_order) {
    if (!poly.is_zero()) out.terms.push_back({order, std::move(poly)});
  }
  return out;
}

namespace {

std::vector<RadialExpansion> corot_components(int dim, int k) {
  std::vector<RadialExpansion> out;
  for (int i = 0; i < dim; ++i) {
    for (const auto& alpha : enumerate_multi_upto(dim, k)) out.push_back(corot_expansion(dim, i, alpha));
  }
  return out;
}

void require_corot(int k, double r) {
  if (k < 0) throw ConfigError("k must be >= 0");
  require_radius(r);
  if (!std::isfinite(r)) throw ConfigError("corotational norms are taken on balls of finite radius");
}

}  // namespace

NormValue corot_lhs(const CorotField& field, int k, double r, double tol) {
  require_corot(k, r);
  const auto comps = corot_components(field.dim(), k);
  NormOptions opt;
  opt.tol = tol;
  return ball_root(comps, field.profile(), field.dim(), 2.0, r, opt);
}

NormValue corot_rhs(const Profile& f, int dim, int k, double r, double tol) {
  require_corot(k, r);
  NormOptions opt;
  opt.tol = tol;
  return sobolev_ball_definition(RadialField(dim + 2, f), k, 2.0, r, opt);
}

NormValue corot_rhs_profile(const Profile& f, int dim, int k, double r, double tol) {
  require_corot(k, r);
  return sobolev_profile_d(f, dim + 2, k, 2.0, r, Aggregation::SumOfNorms, tol);
}

DivergenceIdentity corot_divergence_identity(const Profile& f, const MultiIndex& alpha, double r, double tol) {
  require_corot(alpha.order(), r);
  const int d = alpha.dim();
  if (d < 2) throw ConfigError("dimension must be >= 2");
  DivergenceIdentity out;
  const MonomialPoly r2 = MonomialPoly::squared_norm(d);
  const std::vector<RadialExpansion> top{partial_expansion(alpha)};
  const auto lhs = exact_radial(angular_kernel(top, &r2), f, d, 2, r, tol);
  out.weighted_lhs = lhs.value;
  out.error += lhs.error_estimate;

  std::vector<RadialExpansion> corot;
  for (int i = 0; i < d; ++i) corot.push_back(corot_expansion(d, i, alpha));
  const auto rhs = exact_radial(angular_kernel(corot, nullptr), f, d, 0, r, tol);
  out.corot_sum = rhs.value;
  out.error += rhs.error_estimate;

  for (int i = 0; i < d; ++i) {
    const auto lower = alpha.minus_unit(i);
    if (!lower) continue;
    const std::vector<RadialExpansion> g{partial_expansion(*lower)};
    const MonomialPoly wi = MonomialPoly::monomial(MultiIndex::unit(d, i) + MultiIndex::unit(d, i));
    out.boundary += alpha[i] * std::pow(r, d) * exact_sphere(angular_kernel(g, &wi), f, r);
    if (alpha[i] > 1) {
      const auto q = exact_radial(angular_kernel(g, nullptr), f, d, 0, r, tol);
      out.interior += alpha[i] * (alpha[i] - 1) * q.value;
      out.error += alpha[i] * (alpha[i] - 1) * q.error_estimate;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// reports

std::vector<ReportParam> report_params(const EquivalenceParams& params) {
  return {
      {"dim", static_cast<std::int64_t>(params.dim)},
      {"k", static_cast<std::int64_t>(params.k)},
      {"p", params.p},
      {"radius", radius_param(params.r)},
      {"method", to_string(params.method)},
      {"seed", static_cast<std::int64_t>(params.seed)},
      {"samples", static_cast<std::int64_t>(params.samples)},
      {"tol", params.tol},
      {"aggregation", to_string(params.aggregation)},
      {"corpus", params.corpus_name},
  };
}

NormReport equivalence_report(const Corpus& corpus, const EquivalenceParams& params) {
  validate_params(params);
  NormReport report;
  report.params = report_params(params);
  const bool homogeneous = !std::isfinite(params.r);
  if (homogeneous) {
    report.notes.push_back("radius inf: homogeneous top-order norms; profile routes carry the sphere-area factor");
  }
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& [label, f] = corpus[idx];
    NormOptions opt;
    opt.tol = params.tol;
    opt.method = params.method;
    opt.seed = params.seed;
    opt.samples = params.samples;
    opt.task = idx;
    NormValue def, pd, ps;
    if (homogeneous) {
      if (f.is_zero() || !f.has_decay() || d_op(f, params.k).is_zero()) {
        report.degenerate.push_back(label);
        report.notes.push_back(label + ": skipped, homogeneous norm needs decay and D^k f != 0");
        continue;
      }
      const auto h = homogeneous_norm(f, params.dim, params.k, params.p, opt);
      def = h.definition;
      pd = h.profile_d;
      ps = h.profile_squared;
    } else {
      def = sobolev_ball_definition(RadialField(params.dim, f), params.k, params.p, params.r, opt);
      pd = sobolev_profile_d(f, params.dim, params.k, params.p, params.r, params.aggregation, params.tol);
      ps = sobolev_profile_squared(to_squared(f), params.dim, params.k, params.p, params.r * params.r,
                                   params.aggregation, params.tol);
    }
    add_entry(report, label, "definition", def);
    add_entry(report, label, "profile_d", pd);
    add_entry(report, label, "profile_squared", ps);
    if (!usable(def) || !usable(pd) || !usable(ps)) report.degenerate.push_back(label);
  }
  report.ratios.push_back(summarize_ratio(report, "definition", "profile_d"));
  report.ratios.push_back(summarize_ratio(report, "definition", "profile_squared"));
  report.ratios.push_back(summarize_ratio(report, "profile_d", "profile_squared"));
  return report;
}

NormReport corot_report(const Corpus& corpus, const EquivalenceParams& params) {
  if (params.p != 2) throw ConfigError("corotational norms are H^k norms; p must be 2");
  validate_params(params);
  if (!std::isfinite(params.r)) throw ConfigError("corotational norms are taken on balls of finite radius");
  NormReport report;
  report.params = report_params(params);
  report.params.push_back({"target_dim", static_cast<std::int64_t>(params.dim + 2)});
  for (const auto& [label, f] : corpus) {
    const auto lhs = corot_lhs(CorotField(params.dim, f), params.k, params.r, params.tol);
    const auto rhs = corot_rhs(f, params.dim, params.k, params.r, params.tol);
    const auto rhs_profile = corot_rhs_profile(f, params.dim, params.k, params.r, params.tol);
    add_entry(report, label, "corot_lhs", lhs);
    add_entry(report, label, "corot_rhs", rhs);
    add_entry(report, label, "corot_rhs_profile_d", rhs_profile);
    if (!usable(lhs) || !usable(rhs) || !usable(rhs_profile)) report.degenerate.push_back(label);
  }
  report.ratios.push_back(summarize_ratio(report, "corot_lhs", "corot_rhs"));
  report.ratios.push_back(summarize_ratio(report, "corot_lhs", "corot_rhs_profile_d"));
  report.ratios.push_back(summarize_ratio(report, "corot_rhs", "corot_rhs_profile_d"));
  return report;
}

}  // namespace radsob
