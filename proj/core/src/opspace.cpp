#include "radsob/opspace.hpp"

#include <cmath>

#include "radsob/errors.hpp"

namespace radsob {

SquaredProfile trace(const RadialField& phi) { return to_squared(phi.profile()); }

RadialField extend(const SquaredProfile& g, int dim) { return RadialField(dim, from_squared(g)); }

NormValue weighted_interval_norm(const SquaredProfile& g, int dim, int k, double p, double r, double tol) {
  if (!(r > 0) || !std::isfinite(r)) throw ConfigError("radius must be finite and > 0");
  return sobolev_profile_squared(g, dim, k, p, r * r, Aggregation::PPower, tol);
}

NormReport boundedness_report(const Corpus& corpus, const BoundednessParams& params) {
  EquivalenceParams shared;
  shared.dim = params.dim;
  shared.k = params.k;
  shared.p = params.p;
  shared.r = params.r;
  shared.method = params.method;
  shared.seed = params.seed;
  shared.samples = params.samples;
  shared.tol = params.tol;
  shared.aggregation = Aggregation::PPower;
  shared.corpus_name = params.corpus_name;
  if (params.dim < 2) throw ConfigError("dimension must be >= 2");
  if (params.k < 0) throw ConfigError("k must be >= 0");
  if (!(params.r > 0) || !std::isfinite(params.r)) throw ConfigError("radius must be finite and > 0");
  if (params.method == AngularMethod::ExactAngular && params.p != 2) {
    throw ConfigError("exact-angular requires p = 2; use monte-carlo");
  }

  NormReport report;
  report.params = report_params(shared);
  report.notes.push_back("boundedness is checked on the dense class of closed-form profiles only");
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& [label, f] = corpus[idx];
    const RadialField phi(params.dim, f);
    NormOptions opt;
    opt.tol = params.tol;
    opt.method = params.method;
    opt.seed = params.seed;
    opt.samples = params.samples;
    opt.task = idx;
    const NormValue t = weighted_interval_norm(trace(phi), params.dim, params.k, params.p, params.r, params.tol);
    const NormValue v = sobolev_ball_definition(phi, params.k, params.p, params.r, opt);
    report.entries.push_back({label, "trace", t.value, t.error, t.method, t.converged});
    report.entries.push_back({label, "field", v.value, v.error, v.method, v.converged});
    const bool ok = t.value > 0 && v.value > 0 && std::isfinite(t.value) && std::isfinite(v.value);
    if (!ok) report.degenerate.push_back(label);
  }
  report.ratios.push_back(summarize_ratio(report, "trace", "field"));
  report.ratios.push_back(summarize_ratio(report, "field", "trace"));
  return report;
}

}  // namespace radsob
