#pragma once

// Trace phi -> f~ and extension f~ -> f~(|.|^2) between radial fields on
// B^d_r and profiles on (0, r^2), with norm ratios over a corpus. Only the
// dense closed-form classes are representable, so boundedness is checked
// there.

#include "radsob/corpus.hpp"
#include "radsob/norms.hpp"
#include "radsob/profile.hpp"
#include "radsob/report.hpp"

namespace radsob {

SquaredProfile trace(const RadialField& phi);
RadialField extend(const SquaredProfile& g, int dim);

/// (sum_j ||s^{(d-2)/(2p) + j/2} g^{(j)}||_{L^p(0,r^2)}^p)^{1/p}.
NormValue weighted_interval_norm(const SquaredProfile& g, int dim, int k, double p, double r, double tol);

struct BoundednessParams {
  int dim = 3;
  int k = 2;
  double p = 2.0;
  double r = 1.0;
  AngularMethod method = AngularMethod::ExactAngular;
  std::uint64_t seed = 20240001;
  std::size_t samples = 200000;
  double tol = 1e-10;
  std::string corpus_name = "builtin";
};

/// Routes "trace" (weighted interval norm of trace(phi)) and "field"
/// (||phi||_{W^{k,p}(B^d_r)}); ratios trace/field and field/trace.
NormReport boundedness_report(const Corpus& corpus, const BoundednessParams& params);

}  // namespace radsob
