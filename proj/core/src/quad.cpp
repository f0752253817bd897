#include "radsob/quad.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>

#include "radsob/errors.hpp"

namespace radsob {

namespace {

constexpr int kNodes = 15;

struct GaussRule {
  std::array<double, kNodes> nodes{};
  std::array<double, kNodes> weights{};

  GaussRule() {
    // Newton iteration on P_15 in extended precision.
    for (int i = 0; i < kNodes; ++i) {
      long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (kNodes + 0.5L));
      long double dp = 0;
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= kNodes; ++k) {
          long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kNodes * (x * p1 - p0) / (x * x - 1);
        long double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-19L) break;
      }
      {
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= kNodes; ++k) {
          long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kNodes * (x * p1 - p0) / (x * x - 1);
      }
      nodes[static_cast<std::size_t>(i)] = static_cast<double>(-x);
      weights[static_cast<std::size_t>(i)] = static_cast<double>(2.0L / ((1 - x * x) * dp * dp));
    }
  }
};

const GaussRule& rule() {
  static const GaussRule r;
  return r;
}

struct PanelValue {
  double value;
  double abs_value;
};

PanelValue gauss_panel(const Integrand& g, double a, double b) {
  const auto& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0, abs_sum = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double v = g(mid + half * r.nodes[static_cast<std::size_t>(i)]);
    sum += r.weights[static_cast<std::size_t>(i)] * v;
    abs_sum += r.weights[static_cast<std::size_t>(i)] * std::abs(v);
  }
  return {sum * half, abs_sum * std::abs(half)};
}

struct Leaf {
  double a, b;
  double left, right;  // half-panel values
  double abs_value;
  double err;
  int depth;

  double value() const { return left + right; }
};

struct ByError {
  const std::vector<Leaf>* leaves;
  bool operator()(std::size_t i, std::size_t j) const {
    const auto& li = (*leaves)[i];
    const auto& lj = (*leaves)[j];
    if (li.err != lj.err) return li.err < lj.err;
    return li.a > lj.a;  // deterministic tie-break
  }
};

Leaf make_leaf(const Integrand& g, double a, double b, double coarse, int depth) {
  const double m = 0.5 * (a + b);
  const auto l = gauss_panel(g, a, m);
  const auto r = gauss_panel(g, m, b);
  const double fine = l.value + r.value;
  double err = std::abs(coarse - fine);
  if (!std::isfinite(fine)) err = std::numeric_limits<double>::infinity();
  return {a, b, l.value, r.value, l.abs_value + r.abs_value, err, depth};
}

double gaussian_tail(double c, double m, double b, double t) {
  const double a = 0.5 * (m + 1.0);
  const double x = b * t * t;
  const double g = x > 0 ? boost::math::tgamma(a, x) : boost::math::tgamma(a);
  return c * 0.5 * std::pow(b, -a) * g;
}

double exponential_tail(double c, double m, double b, double t) {
  const double a = m + 1.0;
  const double x = b * t;
  const double g = x > 0 ? boost::math::tgamma(a, x) : boost::math::tgamma(a);
  return c * std::pow(b, -a) * g;
}

double find_cutoff(const Envelope& env, double target) {
  if (target <= 0) target = std::numeric_limits<double>::min();
  double hi = 1.0;
  while (env.tail(hi) > target) {
    hi *= 2.0;
    if (hi > 1e8) throw ConfigError("envelope tail does not decay to the requested tolerance");
  }
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (env.tail(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

void validate_envelope(const Envelope& env) {
  if (env.empty()) throw ConfigError("half-line integration needs a decaying envelope");
  for (const auto& t : env.terms()) {
    if (!(t.rate > 0)) throw ConfigError("half-line integration requires decay rate > 0");
    if (!(t.power > -1)) throw ConfigError("envelope power must exceed -1");
  }
}

/// Truncation point T for an integrand bounded by env, given a way to
/// integrate the finite part up to any T.
double halfline_cutoff(const Envelope& env, double tol, const std::function<double(double)>& integrate_to) {
  validate_envelope(env);
  const double mass = env.mass();
  if (mass == 0) return 0.0;
  const double t1 = find_cutoff(env, 1e-4 * mass);
  const double crude = std::abs(integrate_to(t1));
  if (crude == 0) return t1;
  return std::max(t1, find_cutoff(env, 0.5 * tol * crude));
}

}  // namespace

std::span<const double> gauss_legendre_nodes() { return rule().nodes; }
std::span<const double> gauss_legendre_weights() { return rule().weights; }

QuadResult integrate_1d(const Integrand& g, double a, double b, const QuadOptions& options,
                        std::vector<Panel>* partition) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("integrate_1d requires finite a <= b");
  }
  if (partition) partition->clear();
  if (a == b) {
    if (partition) partition->push_back({a, b});
    return {};
  }

  std::vector<double> cuts{a};
  for (double t : options.breakpoints) {
    if (t > a && t < b) cuts.push_back(t);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);

  std::vector<Leaf> leaves;
  leaves.reserve(64 + cuts.size());
  std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> heap(ByError{&leaves});
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    leaves.push_back(make_leaf(g, cuts[i], cuts[i + 1], gauss_panel(g, cuts[i], cuts[i + 1]).value, 0));
    heap.push(leaves.size() - 1);
  }

  auto totals = [&]() {
    double v = 0, e = 0, abs = 0;
    for (const auto& l : leaves) {
      v += l.value();
      e += l.err;
      abs += l.abs_value;
    }
    return std::array<double, 3>{v, e, abs};
  };
  auto done = [&](const std::array<double, 3>& t) {
    const double floor = 50 * std::numeric_limits<double>::epsilon() * t[2];
    return t[1] <= std::max({options.rel_tol * std::abs(t[0]), options.abs_tol, floor});
  };

  bool converged = false;
  int splits = 0;
  auto t = totals();
  while (true) {
    if (done(t)) {
      converged = true;
      break;
    }
    const std::size_t top = heap.top();
    const Leaf leaf = leaves[top];
    if (leaf.depth >= options.max_depth || static_cast<int>(leaves.size()) >= options.max_panels ||
        !std::isfinite(leaf.err)) {
      break;
    }
    heap.pop();
    const double m = 0.5 * (leaf.a + leaf.b);
    leaves[top] = make_leaf(g, leaf.a, m, leaf.left, leaf.depth + 1);
    leaves.push_back(make_leaf(g, m, leaf.b, leaf.right, leaf.depth + 1));
    heap.push(top);
    heap.push(leaves.size() - 1);
    ++splits;
    // Running totals would accumulate cancellation error; recompute.
    if (splits % 16 == 0 || leaves.size() < 64) {
      t = totals();
    } else {
      const auto& l1 = leaves[top];
      const auto& l2 = leaves.back();
      t[0] += l1.value() + l2.value() - leaf.value();
      t[1] += l1.err + l2.err - leaf.err;
      t[2] += l1.abs_value + l2.abs_value - leaf.abs_value;
      if (done(t)) t = totals();
    }
  }

  std::sort(leaves.begin(), leaves.end(), [](const Leaf& x, const Leaf& y) { return x.a < y.a; });
  QuadResult result;
  for (const auto& l : leaves) {
    result.value += l.value();
    result.error_estimate += l.err;
    if (partition) partition->push_back({l.a, l.b});
  }
  result.subdivisions = static_cast<int>(leaves.size());
  result.converged = converged && std::isfinite(result.value);
  return result;
}

QuadResult integrate_1d(const Integrand& g, double a, double b, double tol) {
  QuadOptions opt;
  opt.rel_tol = tol;
  return integrate_1d(g, a, b, opt);
}

// ---------------------------------------------------------------------------
// Envelope

Envelope::Envelope(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0; });
  for (auto& t : terms_) t.coeff = std::abs(t.coeff);
}

Envelope Envelope::gaussian(double coeff, double power, double rate) {
  return Envelope({{coeff, 0.0, rate, true}, {coeff, power, rate, true}});
}

double Envelope::operator()(double x) const {
  double s = 0;
  for (const auto& t : terms_) {
    s += t.coeff * std::pow(x, t.power) * std::exp(-t.rate * (t.gaussian ? x * x : x));
  }
  return s;
}

double Envelope::tail(double t) const {
  double s = 0;
  for (const auto& term : terms_) {
    s += term.gaussian ? gaussian_tail(term.coeff, term.power, term.rate, t)
                       : exponential_tail(term.coeff, term.power, term.rate, t);
  }
  return s;
}

Envelope Envelope::scaled(double c) const {
  Envelope out = *this;
  for (auto& t : out.terms_) t.coeff *= std::abs(c);
  std::erase_if(out.terms_, [](const Term& t) { return t.coeff == 0; });
  return out;
}

Envelope Envelope::times_power(double w) const {
  Envelope out = *this;
  for (auto& t : out.terms_) t.power += w;
  return out;
}

Envelope Envelope::pow(double p) const {
  if (p == 1.0 || terms_.empty()) return *this;
  const double m = static_cast<double>(terms_.size());
  const double lead = std::pow(m, p - 1.0);
  Envelope out;
  for (const auto& t : terms_) {
    out.terms_.push_back({lead * std::pow(t.coeff, p), p * t.power, p * t.rate, t.gaussian});
  }
  return out;
}

Envelope operator+(const Envelope& a, const Envelope& b) {
  Envelope out = a;
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

Envelope operator*(const Envelope& a, const Envelope& b) {
  Envelope out;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      if (s.gaussian != t.gaussian) throw ConfigError("cannot multiply gaussian and exponential envelopes");
      out.terms_.push_back({s.coeff * t.coeff, s.power + t.power, s.rate + t.rate, s.gaussian});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// half-line and weighted integration

QuadResult integrate_halfline(const Integrand& g, double tol, const Envelope& envelope,
                              std::vector<Panel>* partition, double* cutoff, const std::vector<double>& breakpoints) {
  QuadOptions opt;
  opt.rel_tol = 0.5 * tol;
  opt.breakpoints = breakpoints;
  const double t = halfline_cutoff(envelope, tol, [&](double upper) { return integrate_1d(g, 0, upper, 1e-6).value; });
  if (cutoff) *cutoff = t;
  if (t == 0) {
    if (partition) partition->clear();
    return {};
  }
  QuadResult r = integrate_1d(g, 0.0, t, opt, partition);
  r.error_estimate += envelope.tail(t);
  return r;
}

QuadResult integrate_halfline(const Integrand& g, double tol, double b_min, double coeff, double power) {
  if (!(b_min > 0)) throw ConfigError("integrate_halfline requires b_min > 0");
  return integrate_halfline(g, tol, Envelope::gaussian(coeff, power, b_min));
}

namespace {

int substitution_order(double e) {
  const double rounded = std::round(e);
  if (e >= 0 && std::abs(e - rounded) < 1e-12) return 1;
  for (int q = 1; q <= 12; ++q) {
    const double v = q * (e + 1.0);
    if (std::abs(v - std::round(v)) < 1e-9 && std::round(v) >= 1) return q;
  }
  return std::max(1, static_cast<int>(std::ceil(1.0 / (e + 1.0))));
}

QuadResult weighted_finite(const Integrand& g, double e, double b, const QuadOptions& opt) {
  const int q = substitution_order(e);
  if (q == 1) {
    const double rounded = std::round(e);
    if (std::abs(e - rounded) < 1e-12 && rounded >= 0) {
      const int k = static_cast<int>(rounded);
      return integrate_1d([&](double x) { return std::pow(x, k) * g(x); }, 0.0, b, opt);
    }
    return integrate_1d([&](double x) { return x == 0 ? (e > 0 ? 0.0 : g(x) * std::pow(x, e)) : std::pow(x, e) * g(x); },
                        0.0, b, opt);
  }
  // x = b u^q, dx = b q u^{q-1} du, x^e dx = b^{e+1} q u^{q(e+1)-1} du.
  const double v = q * (e + 1.0) - 1.0;
  const double rv = std::round(v);
  const bool integral = std::abs(v - rv) < 1e-9;
  const double scale = std::pow(b, e + 1.0) * q;
  QuadOptions mapped = opt;
  for (auto& t : mapped.breakpoints) t = t > 0 ? std::pow(t / b, 1.0 / q) : t;
  auto h = [&](double u) {
    const double w = integral ? std::pow(u, static_cast<int>(rv)) : std::pow(u, v);
    return scale * w * g(b * std::pow(u, q));
  };
  return integrate_1d(h, 0.0, 1.0, mapped);
}

}  // namespace

QuadResult integrate_power_weighted(const Integrand& g, double exponent, double b, double tol,
                                    const Envelope* envelope, const std::vector<double>& breakpoints) {
  if (!(exponent > -1)) throw ConfigError("weight exponent must exceed -1");
  if (!(b >= 0)) throw ConfigError("upper limit must be >= 0");
  QuadOptions opt;
  opt.rel_tol = tol;
  opt.breakpoints = breakpoints;
  if (std::isfinite(b)) return weighted_finite(g, exponent, b, opt);
  if (!envelope) throw ConfigError("half-line weighted integration needs an envelope");
  QuadOptions crude;
  crude.rel_tol = 1e-6;
  const double t = halfline_cutoff(*envelope, tol, [&](double upper) { return weighted_finite(g, exponent, upper, crude).value; });
  if (t == 0) return {};
  opt.rel_tol = 0.5 * tol;
  QuadResult r = weighted_finite(g, exponent, t, opt);
  r.error_estimate += envelope->tail(t);
  return r;
}

std::vector<double> sign_changes(const Integrand& h, double a, double b, int cells) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("sign_changes requires finite a < b");
  if (cells < 1) throw ConfigError("sign_changes needs at least one cell");
  std::vector<double> out;
  const double step = (b - a) / cells;
  double x0 = a;
  double h0 = h(a);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = i == cells ? b : a + step * i;
    const double h1 = h(x1);
    if (h1 == 0) {
      if (i < cells) out.push_back(x1);
    } else if (h0 != 0 && std::signbit(h0) != std::signbit(h1)) {
      double lo = x0, hi = x1;
      const bool neg_lo = std::signbit(h0);
      while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double hm = h(mid);
        if (hm == 0) {
          lo = hi = mid;
          break;
        }
        (std::signbit(hm) == neg_lo ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    h0 = h1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// sphere

double sphere_area(int d) {
  if (d < 1) throw ConfigError("sphere_area requires d >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double sphere_monomial_moment(const MultiIndex& beta) {
  if (beta.dim() < 2) throw ConfigError("sphere moments require d >= 2");
  double num = 2.0;
  for (int b : beta.entries()) {
    if (b % 2 != 0) return 0.0;
    num *= std::tgamma(0.5 * (b + 1));
  }
  return num / std::tgamma(0.5 * (beta.order() + beta.dim()));
}

double sphere_integral(const MonomialPoly& poly) {
  double s = 0;
  for (const auto& [beta, c] : poly.terms()) {
    const double m = sphere_monomial_moment(beta);
    if (m != 0) s += c.get_d() * m;
  }
  return s;
}

SphereSampler::SphereSampler(int dim, std::uint64_t seed, std::size_t count, std::uint64_t task)
    : dim_(dim), seed_(seed), count_(count), task_(task) {
  if (dim < 1) throw ConfigError("sphere sampler requires d >= 1");
}

SphereSampler SphereSampler::substream(std::uint64_t task, std::size_t count) const {
  return SphereSampler(dim_, seed_, count, task);
}

void SphereSampler::for_each(const std::function<void(std::span<const double>)>& visit) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(task_), static_cast<std::uint32_t>(task_ >> 32),
                    static_cast<std::uint32_t>(dim_)};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(dim_));
  for (std::size_t k = 0; k < count_; ++k) {
    double norm2 = 0;
    do {
      norm2 = 0;
      for (auto& xi : x) {
        xi = normal(engine);
        norm2 += xi * xi;
      }
    } while (norm2 == 0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& xi : x) xi *= inv;
    visit(x);
  }
}

std::vector<std::vector<double>> SphereSampler::samples() const {
  std::vector<std::vector<double>> out;
  out.reserve(count_);
  for_each([&](std::span<const double> x) { out.emplace_back(x.begin(), x.end()); });
  return out;
}

QuadResult mc_sphere_integral(const SphereIntegrand& g, const SphereSampler& sampler) {
  if (sampler.count() == 0) throw ConfigError("Monte Carlo integration needs N > 0 samples");
  double mean = 0, m2 = 0;
  std::size_t k = 0;
  sampler.for_each([&](std::span<const double> w) {
    const double v = g(w);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  });
  const double area = sphere_area(sampler.dim());
  const double n = static_cast<double>(k);
  const double var = k > 1 ? m2 / (n - 1) : 0.0;
  QuadResult r;
  r.value = area * mean;
  r.error_estimate = area * std::sqrt(var / n);
  r.subdivisions = 0;
  r.converged = std::isfinite(r.value);
  return r;
}

}  // namespace radsob
