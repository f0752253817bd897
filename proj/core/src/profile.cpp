#include "radsob/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radsob/errors.hpp"

namespace radsob {

template <class Variable>
BasicProfile<Variable>::BasicProfile(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.power < 0) throw ConfigError("profile powers must be >= 0");
    if (!(t.decay >= 0) || !std::isfinite(t.decay)) throw ConfigError("profile decay must be finite and >= 0");
    if (!std::isfinite(t.coeff)) throw ConfigError("profile coefficients must be finite");
  }
  canonicalize();
}

template <class Variable>
void BasicProfile<Variable>::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
    if (x.decay != y.decay) return x.decay < y.decay;
    return x.power < y.power;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().decay == t.decay && merged.back().power == t.power) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
}

template <class Variable>
bool BasicProfile<Variable>::is_even() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.power % 2 == 0; });
}

template <class Variable>
bool BasicProfile<Variable>::has_decay() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.decay > 0; });
}

template <class Variable>
int BasicProfile<Variable>::max_power() const noexcept {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.power);
  return m;
}

template <class Variable>
double BasicProfile<Variable>::operator()(double x) const {
  const double arg = Variable::gaussian ? x * x : x;
  double sum = 0.0;
  double current_decay = -1.0;
  double factor = 1.0;
  for (const auto& t : terms_) {
    if (t.decay != current_decay) {
      current_decay = t.decay;
      factor = t.decay == 0 ? 1.0 : std::exp(-t.decay * arg);
    }
    sum += t.coeff * std::pow(x, t.power) * factor;
  }
  return sum;
}

template <class Variable>
BasicProfile<Variable> BasicProfile<Variable>::derivative(int order) const {
  if (order < 0) throw ConfigError("derivative order must be >= 0");
  BasicProfile out = *this;
  for (int k = 0; k < order && !out.is_zero(); ++k) {
    std::vector<Term> next;
    next.reserve(2 * out.terms_.size());
    for (const auto& t : out.terms_) {
      if (t.power > 0) next.push_back({t.coeff * t.power, t.power - 1, t.decay});
      if (t.decay != 0) {
        if constexpr (Variable::gaussian) {
          next.push_back({-2.0 * t.decay * t.coeff, t.power + 1, t.decay});
        } else {
          next.push_back({-t.decay * t.coeff, t.power, t.decay});
        }
      }
    }
    out.terms_ = std::move(next);
    out.canonicalize();
  }
  return out;
}

template <class Variable>
Envelope BasicProfile<Variable>::envelope() const {
  std::vector<Envelope::Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    terms.push_back({std::abs(t.coeff), static_cast<double>(t.power), t.decay, Variable::gaussian});
  }
  return Envelope(std::move(terms));
}

template <class Variable>
BasicProfile<Variable>& BasicProfile<Variable>::operator+=(const BasicProfile& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

template <class Variable>
BasicProfile<Variable> BasicProfile<Variable>::scaled(double c) const {
  BasicProfile out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  out.canonicalize();
  return out;
}

template <class Variable>
std::string BasicProfile<Variable>::str() const {
  if (terms_.empty()) return "0";
  const char* var = Variable::gaussian ? "r" : "s";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) os << " + ";
    os << t.coeff;
    if (t.power) os << "*" << var << "^" << t.power;
    if (t.decay != 0) os << "*exp(-" << t.decay << "*" << (Variable::gaussian ? "r^2" : "s") << ")";
  }
  return os.str();
}

template class BasicProfile<RadiusVariable>;
template class BasicProfile<SquaredVariable>;

SquaredProfile to_squared(const Profile& f) {
  if (!f.is_even()) throw ConfigError("to_squared requires an even profile");
  std::vector<Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back({t.coeff, t.power / 2, t.decay});
  return SquaredProfile(std::move(terms));
}

Profile from_squared(const SquaredProfile& g) {
  std::vector<Term> terms;
  terms.reserve(g.terms().size());
  for (const auto& t : g.terms()) terms.push_back({t.coeff, 2 * t.power, t.decay});
  return Profile(std::move(terms));
}

Profile d_op(const Profile& f, int j) {
  if (j < 0) throw ConfigError("d_op order must be >= 0");
  return std::ldexp(1.0, j) * from_squared(to_squared(f).derivative(j));
}

QuadResult whitney_derivative(const Profile& f, int n, double rho, double tol) {
  if (n < 1) throw ConfigError("whitney_derivative requires n >= 1");
  if (!(rho > 0)) throw ConfigError("whitney_derivative requires rho > 0");
  if (!f.is_even()) throw ConfigError("whitney_derivative requires an even profile");
  const Profile high = f.derivative(2 * n);
  const double scale = 1.0 / (std::ldexp(1.0, 2 * n - 1) * std::tgamma(static_cast<double>(n)));
  QuadOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = 0.1 * tol;
  QuadResult r = integrate_1d([&](double t) { return std::pow(1.0 - t * t, n - 1) * high(t * rho); }, 0.0, 1.0, opt);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

double euclidean_norm(std::span<const double> x) {
  double s = 0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

RadialField::RadialField(int dim, Profile profile) : dim_(dim), profile_(std::move(profile)) {
  if (dim_ < 2) throw ConfigError("radial fields require d >= 2");
  if (!profile_.is_even()) throw ConfigError("radial field profile must be even");
}

double RadialField::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw ConfigError("point dimension mismatch");
  return profile_(euclidean_norm(x));
}

}  // namespace radsob
