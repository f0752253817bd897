#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "radsob/cli.hpp"
#include "radsob/errors.hpp"

namespace {

using radsob::cli::RunConfig;

struct RawFlags {
  std::string radius = "1";
  std::string method = "auto";
  std::string format = "json";
};

void add_shared(CLI::App& sub, RunConfig& c, RawFlags& raw) {
  sub.add_option("--dim", c.dim, "Ambient dimension d (>= 2)")->capture_default_str();
  sub.add_option("--order", c.order, "Derivative order n (gram, moments, recovery identities)")->capture_default_str();
  sub.add_option("--k", c.k, "Sobolev order k")->capture_default_str();
  sub.add_option("--p", c.p, "Integrability exponent p (>= 1)")->capture_default_str();
  sub.add_option("--radius", raw.radius, "Ball radius r, or inf for homogeneous norms")->capture_default_str();
  sub.add_option("--method", raw.method, "auto | exact-angular | monte-carlo")->capture_default_str();
  sub.add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
  sub.add_option("--samples", c.samples, "Monte Carlo sphere samples N")->capture_default_str();
  sub.add_option("--tol", c.tol, "Quadrature relative tolerance")->capture_default_str();
  sub.add_option("--corpus", c.corpus, "Corpus JSON file, or builtin")->capture_default_str();
  sub.add_option("--format", raw.format, "json | csv")->capture_default_str();
  sub.add_option("--out", c.out, "Output file (default stdout)");
  sub.add_option("--s", c.s, "Hardy weight exponent s (> -1/p)")->capture_default_str();
  sub.add_option("--budget", c.budget, "Maximum number of enumerated d-indices")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Sobolev norm verification tool"};
  app.require_subcommand(1);
  RunConfig config;
  RawFlags raw;

  struct Entry {
    radsob::cli::Subcommand kind;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {radsob::cli::Subcommand::Gram, "gram", "Print the exact Gram matrix and its inverse"},
      {radsob::cli::Subcommand::Verify, "verify", "Run an invariant suite: identities | hardy | gram | whitney"},
      {radsob::cli::Subcommand::Equiv, "equiv", "Norm equivalence report over a corpus"},
      {radsob::cli::Subcommand::Corot, "corot", "Corotational map norm report (p = 2)"},
      {radsob::cli::Subcommand::Moments, "moments", "Sphere monomial moments, exact and Monte Carlo"},
      {radsob::cli::Subcommand::Bounded, "bounded", "Trace/extension boundedness ratios"},
  };
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_shared(*sub, config, raw);
    if (e.kind == radsob::cli::Subcommand::Verify) {
      sub->add_option("suite", config.suite, "identities | hardy | gram | whitney")->required();
    }
    sub->callback([&config, kind = e.kind] { config.subcommand = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : radsob::cli::kExitConfig;
  }

  try {
    config.r = radsob::cli::parse_radius(raw.radius);
    config.method = radsob::cli::parse_method(raw.method);
    config.format = radsob::cli::parse_format(raw.format);
  } catch (const radsob::ConfigError& e) {
    std::cerr << "radsob: configuration error: " << e.what() << "\n";
    return radsob::cli::kExitConfig;
  }
  return radsob::cli::execute(config, std::cout, std::cerr);
}
