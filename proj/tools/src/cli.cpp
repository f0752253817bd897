#include "radsob/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "radsob/errors.hpp"
#include "radsob/opspace.hpp"
#include "radsob/quad.hpp"

namespace radsob::cli {

namespace {

using nlohmann::ordered_json;

// Pinned verification tolerances.
constexpr double kLpRelTol = 1e-10;
constexpr double kMcSigmas = 4.0;
constexpr double kRecoveryRelTol = 1e-9;
constexpr double kDopRelTol = 1e-12;
constexpr double kHardySlackFloor = -1e-10;
constexpr double kWhitneyAbsTol = 1e-8;
constexpr int kMaxIdentityOrder = 4;

ordered_json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

ordered_json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return static_cast<std::int64_t>(q.get_num().get_si());
  return radsob::to_string(q);
}

ordered_json matrix_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(rational_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json params_json(const RunConfig& c) {
  ordered_json j;
  j["dim"] = c.dim;
  j["order"] = c.order;
  j["k"] = c.k;
  j["p"] = c.p;
  j["radius"] = number_or_inf(c.r);
  j["s"] = c.s;
  j["method"] = to_string(resolve_method(c));
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  j["corpus"] = c.corpus;
  return j;
}

void require_json(const RunConfig& c, const char* command) {
  if (c.format != Format::Json) throw ConfigError(std::string(command) + " writes JSON only");
}

EquivalenceParams equivalence_params(const RunConfig& c) {
  EquivalenceParams p;
  p.dim = c.dim;
  p.k = c.k;
  p.p = c.p;
  p.r = c.r;
  p.method = resolve_method(c);
  p.seed = c.seed;
  p.samples = c.samples;
  p.tol = c.tol;
  p.corpus_name = c.corpus;
  return p;
}

std::string render(const NormReport& report, Format f) { return f == Format::Json ? to_json(report) : to_csv(report); }

/// Sum of |term| values; the scale against which cancellation is judged.
template <class Variable>
double magnitude(const BasicProfile<Variable>& f, double x) {
  double s = 0;
  for (const auto& t : f.terms()) s += std::abs(BasicProfile<Variable>({t})(x));
  return s;
}

struct Check {
  std::string name;
  bool pass;
  double error;
  double tolerance;
};

class Suite {
 public:
  void add(std::string name, double error, double tolerance) {
    const bool pass = std::isfinite(error) && error <= tolerance;
    checks_.push_back({std::move(name), pass, error, tolerance});
  }
  /// Slack-style checks: pass when value >= floor.
  void add_floor(std::string name, double value, double floor) {
    checks_.push_back({std::move(name), std::isfinite(value) && value >= floor, value, floor});
  }

  CommandOutput finish(const std::string& suite, const RunConfig& c) const {
    ordered_json doc;
    doc["suite"] = suite;
    doc["params"] = params_json(c);
    ordered_json list = ordered_json::array();
    std::size_t failed = 0;
    for (const auto& ch : checks_) {
      if (!ch.pass) ++failed;
      list.push_back({{"name", ch.name}, {"pass", ch.pass}, {"error", number_or_inf(ch.error)},
                      {"tolerance", ch.tolerance}});
    }
    doc["checks"] = std::move(list);
    doc["summary"] = {{"passed", checks_.size() - failed}, {"failed", failed}};
    return {failed == 0 ? kExitOk : kExitVerificationFailed, doc.dump(2) + "\n"};
  }

 private:
  std::vector<Check> checks_;
};

double route_gap(const NormValue& reference, const NormValue& other) {
  return std::abs(reference.value - other.value) / std::max(std::abs(other.value), 1e-300);
}

void identities_suite(const RunConfig& c, Suite& suite) {
  const Corpus corpus = load_config_corpus(c);
  const AngularMethod method = resolve_method(c);
  const double r_points = std::isfinite(c.r) ? c.r : 1.0;
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& [label, f] = corpus[idx];
    if (f.is_zero()) continue;
    const RadialField phi(c.dim, f);

    if (std::isfinite(c.r) || f.has_decay()) {
      NormOptions opt;
      opt.tol = c.tol;
      opt.method = method;
      opt.seed = c.seed;
      opt.samples = c.samples;
      opt.task = idx;
      const auto lp = lp_radial(phi, c.p, c.r, opt);
      const double gap_sq = route_gap(lp.profile_d, lp.profile_squared);
      suite.add("lp/" + label + "/profile_d~profile_squared", gap_sq, kLpRelTol);
      // Monte Carlo entries also get kMcSigmas standard errors of slack.
      const double sigma = method == AngularMethod::MonteCarlo ? lp.definition.error : 0.0;
      suite.add("lp/" + label + "/definition~profile_d", std::abs(lp.definition.value - lp.profile_d.value),
                kLpRelTol * std::abs(lp.profile_d.value) + kMcSigmas * sigma);
    }

    const auto g = to_squared(f);
    for (int j = 0; j <= kMaxIdentityOrder; ++j) {
      const auto dj = d_op(f, j);
      const auto gj = g.derivative(j);
      double worst = 0;
      for (double t : {0.0, 0.25, 0.5, 1.0}) {
        const double rho = t * r_points;
        const double a = dj(rho);
        const double b = std::ldexp(gj(rho * rho), j);
        const double scale = std::max({magnitude(dj, rho), std::ldexp(magnitude(gj, rho * rho), j), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
      }
      suite.add("dop/" + label + "/j=" + std::to_string(j), worst, kDopRelTol);
    }

    const int top = std::min(std::max(c.order, 1), kMaxIdentityOrder);
    const RadialDerivatives partials(phi, top);
    for (int n = 1; n <= top; ++n) {
      const auto q = recovery_coeffs(c.dim, n, c.budget);
      const auto dn = d_op(f, n);
      double worst = 0;
      for (int i = 0; i < 4; ++i) {
        std::vector<double> x(static_cast<std::size_t>(c.dim));
        for (int a = 0; a < c.dim; ++a) x[static_cast<std::size_t>(a)] = std::sin(1.0 + 2.3 * i + 0.7 * a);
        const double nx = euclidean_norm(x);
        const double rho = r_points * (0.2 + 0.2 * i);
        for (auto& v : x) v *= rho / nx;
        std::vector<double> omega = x;
        for (auto& v : omega) v /= rho;
        double got = 0, scale = 0;
        for (const auto& [alpha, poly] : q.coeffs()) {
          const double term = poly.eval(omega) * partials.partial(alpha, x);
          got += term;
          scale += std::abs(term);
        }
        const double want = std::pow(rho, n) * dn(rho);
        worst = std::max(worst, std::abs(got - want) / std::max({scale, std::abs(want), 1e-300}));
      }
      suite.add("recovery/" + label + "/n=" + std::to_string(n), worst, kRecoveryRelTol);
    }
  }
}

void hardy_suite(const RunConfig& c, Suite& suite) {
  if (!(c.s > -1.0 / c.p)) throw ConfigError("hardy suite requires s > -1/p");
  const Corpus corpus = load_config_corpus(c);
  auto fmt = [&](const std::string& kind, const std::string& label) { return kind + "/" + label; };
  for (const auto& [label, f] : corpus) {
    if (std::isfinite(c.r)) {
      suite.add_floor(fmt("hardy", label), hardy_check(f, c.p, c.r, c.s, c.tol).slack(), kHardySlackFloor);
      suite.add_floor(fmt("hardy-squared", label), hardy_check(to_squared(f), c.p, c.r, c.s, c.tol).slack(),
                      kHardySlackFloor);
      suite.add_floor(fmt("boundary", label), boundary_check(f, c.p, c.r, c.s, c.tol).slack(), kHardySlackFloor);
      suite.add_floor(fmt("boundary-squared", label), boundary_check(to_squared(f), c.p, c.r, c.s, c.tol).slack(),
                      kHardySlackFloor);
    }
    if (f.has_decay() || f.is_zero()) {
      suite.add_floor(fmt("hardy-halfline", label), hardy_check(f, c.p, kInfinity, c.s, c.tol).slack(),
                      kHardySlackFloor);
    }
  }
}

void gram_suite(const RunConfig& c, Suite& suite) {
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 6; ++n) {
      const auto g = gram_matrix(d, n, c.budget);
      const std::string tag = "d=" + std::to_string(d) + ",n=" + std::to_string(n);
      const bool spd = g.is_symmetric() && g.is_positive_definite();
      suite.add("spd/" + tag, spd ? 0.0 : 1.0, 0.0);
      // Exact product; any nonzero deviation is a failure.
      const int m = g.size();
      bool identity = true;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          Rational s = 0;
          for (int l = 0; l < m; ++l) {
            s += g.entries()[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                 g.inverse()[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
          }
          identity = identity && s == (i == j ? 1 : 0);
        }
      }
      suite.add("inverse/" + tag, identity ? 0.0 : 1.0, 0.0);
    }
    const RationalMatrix one{{Rational(1)}};
    const RationalMatrix two{{Rational(1), Rational(1)}, {Rational(1), Rational(d)}};
    suite.add("closed-form/d=" + std::to_string(d) + ",n=1", gram_matrix(d, 1).entries() == one ? 0.0 : 1.0, 0.0);
    suite.add("closed-form/d=" + std::to_string(d) + ",n=2", gram_matrix(d, 2).entries() == two ? 0.0 : 1.0, 0.0);
  }
}

void whitney_suite(const RunConfig& c, Suite& suite) {
  const Corpus corpus = load_config_corpus(c);
  const double r_points = std::isfinite(c.r) ? c.r : 1.0;
  for (const auto& [label, f] : corpus) {
    const auto g = to_squared(f);
    for (int n = 1; n <= 4; ++n) {
      double worst = 0;
      for (double t : {0.25, 0.5, 0.75, 1.0}) {
        const double rho = t * r_points;
        const auto w = whitney_derivative(f, n, rho, c.tol);
        worst = std::max(worst, w.converged ? std::abs(w.value - g.derivative(n)(rho * rho)) : INFINITY);
      }
      suite.add("whitney/" + label + "/n=" + std::to_string(n), worst, kWhitneyAbsTol);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// names

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Gram: return "gram";
    case Subcommand::Verify: return "verify";
    case Subcommand::Equiv: return "equiv";
    case Subcommand::Corot: return "corot";
    case Subcommand::Moments: return "moments";
    case Subcommand::Bounded: return "bounded";
  }
  return "equiv";
}

std::string to_string(MethodChoice m) {
  switch (m) {
    case MethodChoice::Auto: return "auto";
    case MethodChoice::ExactAngular: return "exact-angular";
    case MethodChoice::MonteCarlo: return "monte-carlo";
  }
  return "auto";
}

std::string to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

Subcommand parse_subcommand(const std::string& s) {
  for (auto v : {Subcommand::Gram, Subcommand::Verify, Subcommand::Equiv, Subcommand::Corot, Subcommand::Moments,
                 Subcommand::Bounded}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown subcommand '" + s + "'");
}

MethodChoice parse_method(const std::string& s) {
  for (auto v : {MethodChoice::Auto, MethodChoice::ExactAngular, MethodChoice::MonteCarlo}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("method must be auto, exact-angular or monte-carlo");
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ConfigError("format must be json or csv");
}

double parse_radius(const std::string& s) {
  if (s == "inf") return kInfinity;
  std::size_t used = 0;
  double r = 0;
  try {
    r = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("radius must be a positive number or 'inf'");
  }
  if (used != s.size() || !(r > 0)) throw ConfigError("radius must be a positive number or 'inf'");
  return r;
}

// ---------------------------------------------------------------------------
// config

std::string to_json(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = to_string(c.subcommand);
  j["suite"] = c.suite;
  j["dim"] = c.dim;
  j["order"] = c.order;
  j["k"] = c.k;
  j["p"] = c.p;
  j["radius"] = number_or_inf(c.r);
  j["method"] = to_string(c.method);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  j["corpus"] = c.corpus;
  j["format"] = to_string(c.format);
  j["out"] = c.out;
  j["s"] = c.s;
  j["budget"] = c.budget;
  return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("subcommand")) c.subcommand = parse_subcommand(j["subcommand"].get<std::string>());
    if (j.contains("suite")) c.suite = j["suite"].get<std::string>();
    if (j.contains("dim")) c.dim = j["dim"].get<int>();
    if (j.contains("order")) c.order = j["order"].get<int>();
    if (j.contains("k")) c.k = j["k"].get<int>();
    if (j.contains("p")) c.p = j["p"].get<double>();
    if (j.contains("radius")) {
      c.r = j["radius"].is_string() ? parse_radius(j["radius"].get<std::string>()) : j["radius"].get<double>();
    }
    if (j.contains("method")) c.method = parse_method(j["method"].get<std::string>());
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("corpus")) c.corpus = j["corpus"].get<std::string>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("s")) c.s = j["s"].get<double>();
    if (j.contains("budget")) c.budget = j["budget"].get<std::uint64_t>();
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.dim < 2) throw ConfigError("--dim must be >= 2");
  if (c.order < 0) throw ConfigError("--order must be >= 0");
  if (c.k < 0) throw ConfigError("--k must be >= 0");
  if (!(c.p >= 1) || !std::isfinite(c.p)) throw ConfigError("--p must be a finite number >= 1");
  if (!(c.r > 0)) throw ConfigError("--radius must be > 0 or inf");
  if (!(c.tol > 0) || !(c.tol < 1)) throw ConfigError("--tol must lie in (0, 1)");
  if (c.samples == 0) throw ConfigError("--samples must be > 0");
  if (!std::isfinite(c.s)) throw ConfigError("--s must be finite");
  if (c.budget == 0) throw ConfigError("--budget must be > 0");
  if (c.method == MethodChoice::ExactAngular && c.p != 2) {
    throw ConfigError("exact-angular integration requires p = 2; use monte-carlo");
  }
  if (c.subcommand == Subcommand::Verify) {
    const auto& s = c.suite;
    if (s != "identities" && s != "hardy" && s != "gram" && s != "whitney") {
      throw ConfigError("verify suite must be identities, hardy, gram or whitney");
    }
  }
}

AngularMethod resolve_method(const RunConfig& c) {
  switch (c.method) {
    case MethodChoice::ExactAngular: return AngularMethod::ExactAngular;
    case MethodChoice::MonteCarlo: return AngularMethod::MonteCarlo;
    case MethodChoice::Auto: break;
  }
  return c.p == 2 ? AngularMethod::ExactAngular : AngularMethod::MonteCarlo;
}

Corpus load_config_corpus(const RunConfig& c) {
  return c.corpus == "builtin" ? builtin_corpus() : load_corpus(c.corpus);
}

// ---------------------------------------------------------------------------
// commands

CommandOutput cmd_gram(const RunConfig& c) {
  validate(c);
  require_json(c, "gram");
  if (c.order < 1) throw ConfigError("gram needs --order >= 1");
  const auto g = gram_matrix(c.dim, c.order, c.budget);
  ordered_json doc;
  doc["dim"] = c.dim;
  doc["order"] = c.order;
  doc["gamma"] = matrix_json(g.entries());
  doc["gamma_inverse"] = matrix_json(g.inverse());
  doc["symmetric"] = g.is_symmetric();
  doc["positive_definite"] = g.is_positive_definite();
  ordered_json minors = ordered_json::array();
  for (const auto& m : leading_principal_minors(g.entries())) minors.push_back(rational_json(m));
  doc["leading_minors"] = std::move(minors);
  return {kExitOk, doc.dump() + "\n"};
}

CommandOutput cmd_verify(const RunConfig& c) {
  validate(c);
  require_json(c, "verify");
  Suite suite;
  if (c.suite == "identities") identities_suite(c, suite);
  if (c.suite == "hardy") hardy_suite(c, suite);
  if (c.suite == "gram") gram_suite(c, suite);
  if (c.suite == "whitney") whitney_suite(c, suite);
  return suite.finish(c.suite, c);
}

CommandOutput cmd_equiv(const RunConfig& c) {
  validate(c);
  return {kExitOk, render(equivalence_report(load_config_corpus(c), equivalence_params(c)), c.format)};
}

CommandOutput cmd_corot(const RunConfig& c) {
  validate(c);
  if (c.p != 2) throw ConfigError("corot requires p = 2");
  if (c.method == MethodChoice::MonteCarlo) throw ConfigError("corot uses exact-angular integration only");
  return {kExitOk, render(corot_report(load_config_corpus(c), equivalence_params(c)), c.format)};
}

CommandOutput cmd_moments(const RunConfig& c) {
  validate(c);
  require_json(c, "moments");
  const auto betas = enumerate_multi(c.dim, c.order);
  if (betas.size() > c.budget) throw BudgetExceeded(betas.size(), c.budget);
  const SphereSampler sampler(c.dim, c.seed, c.samples);
  ordered_json doc;
  doc["params"] = params_json(c);
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto& beta = betas[i];
    const auto mc = mc_sphere_integral(
        [&](std::span<const double> w) {
          double v = 1;
          for (int a = 0; a < c.dim; ++a) v *= std::pow(w[static_cast<std::size_t>(a)], beta[a]);
          return v;
        },
        sampler.substream(i, c.samples));
    ordered_json b = ordered_json::array();
    for (int a = 0; a < c.dim; ++a) b.push_back(beta[a]);
    list.push_back({{"beta", b}, {"exact", sphere_monomial_moment(beta)}, {"mc", mc.value}, {"err", mc.error_estimate}});
  }
  doc["moments"] = std::move(list);
  return {kExitOk, doc.dump(2) + "\n"};
}

CommandOutput cmd_bounded(const RunConfig& c) {
  validate(c);
  BoundednessParams p;
  p.dim = c.dim;
  p.k = c.k;
  p.p = c.p;
  p.r = c.r;
  p.method = resolve_method(c);
  p.seed = c.seed;
  p.samples = c.samples;
  p.tol = c.tol;
  p.corpus_name = c.corpus;
  return {kExitOk, render(boundedness_report(load_config_corpus(c), p), c.format)};
}

CommandOutput run(const RunConfig& c) {
  switch (c.subcommand) {
    case Subcommand::Gram: return cmd_gram(c);
    case Subcommand::Verify: return cmd_verify(c);
    case Subcommand::Equiv: return cmd_equiv(c);
    case Subcommand::Corot: return cmd_corot(c);
    case Subcommand::Moments: return cmd_moments(c);
    case Subcommand::Bounded: return cmd_bounded(c);
  }
  throw ConfigError("unknown subcommand");
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CommandOutput result;
  try {
    result = run(c);
  } catch (const ConfigError& e) {
    err << "radsob: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "radsob: " << e.what() << "\n";
    return kExitBudget;
  }
  if (c.out.empty()) {
    out << result.text;
    out.flush();
  } else {
    std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "radsob: configuration error: cannot write " << c.out << "\n";
      return kExitConfig;
    }
    file << result.text;
  }
  if (result.exit_code == kExitVerificationFailed) err << "radsob: verification failed\n";
  return result.exit_code;
}

}  // namespace radsob::cli
