#pragma once

// Command layer behind the `radsob` executable. Every command returns its
// report text and exit code instead of printing, so tests can drive it.
//
// Exit codes: 0 pass, 1 verification failure, 2 bad configuration,
// 3 resource budget exceeded.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "radsob/corpus.hpp"
#include "radsob/derivcalc.hpp"
#include "radsob/norms.hpp"

namespace radsob::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

enum class Subcommand { Gram, Verify, Equiv, Corot, Moments, Bounded };
/// Auto picks exact-angular for p = 2 and monte-carlo otherwise.
enum class MethodChoice { Auto, ExactAngular, MonteCarlo };
enum class Format { Json, Csv };

std::string to_string(Subcommand s);
std::string to_string(MethodChoice m);
std::string to_string(Format f);
Subcommand parse_subcommand(const std::string& s);
MethodChoice parse_method(const std::string& s);
Format parse_format(const std::string& s);
/// A positive number or "inf".
double parse_radius(const std::string& s);

struct RunConfig {
  Subcommand subcommand = Subcommand::Equiv;
  std::string suite;  // verify: identities | hardy | gram | whitney
  int dim = 3;
  int order = 2;
  int k = 2;
  double p = 2.0;
  double r = 1.0;
  MethodChoice method = MethodChoice::Auto;
  std::uint64_t seed = 20240001;
  std::size_t samples = 200000;
  double tol = 1e-10;
  std::string corpus = "builtin";
  Format format = Format::Json;
  std::string out;  // empty: stdout
  double s = 0.0;   // Hardy weight exponent
  std::uint64_t budget = kDefaultIndexBudget;

  bool operator==(const RunConfig&) const = default;
};

/// Lossless: doubles are written with round-trip precision, r = inf as "inf".
std::string to_json(const RunConfig& config);
RunConfig run_config_from_json(const std::string& text);

/// Throws ConfigError on values no command accepts.
void validate(const RunConfig& config);
AngularMethod resolve_method(const RunConfig& config);
Corpus load_config_corpus(const RunConfig& config);

struct CommandOutput {
  int exit_code = kExitOk;
  std::string text;
};

CommandOutput cmd_gram(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_equiv(const RunConfig& config);
CommandOutput cmd_corot(const RunConfig& config);
CommandOutput cmd_moments(const RunConfig& config);
CommandOutput cmd_bounded(const RunConfig& config);

/// Dispatches on config.subcommand. Exceptions propagate.
CommandOutput run(const RunConfig& config);

/// run() plus error mapping: the report goes to config.out (or `out` when
/// empty), diagnostics to `err`. Returns the exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace radsob::cli
