#pragma once

// NormReport and its JSON / CSV forms.
//
// JSON schema:
//   {
//     "params":  { name: value, ... },
//     "entries": [ {"label", "route", "value", "err", "method", "converged"}, ... ],
//     "ratios":  [ {"pair": "a/b", "min", "max", "count",
//                   "values": [{"label", "ratio", "err"}, ...]}, ... ],
//     "degenerate": [label, ...],
//     "notes": [string, ...]
//   }
// CSV: header "label,route,value,err,method,converged", one row per entry.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace radsob {

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct ReportParam {
  std::string name;
  ParamValue value;
};

struct ReportEntry {
  std::string label;
  std::string route;
  double value = 0.0;
  double err = 0.0;
  std::string method;
  bool converged = true;
};

struct RatioValue {
  std::string label;
  double ratio = 0.0;
  double err = 0.0;
};

struct RatioSummary {
  std::string pair;
  double min = 0.0;
  double max = 0.0;
  std::vector<RatioValue> values;
};

struct NormReport {
  std::vector<ReportParam> params;
  std::vector<ReportEntry> entries;
  std::vector<RatioSummary> ratios;
  std::vector<std::string> degenerate;
  std::vector<std::string> notes;

  /// Entry for (label, route); throws std::out_of_range when absent.
  const ReportEntry& entry(const std::string& label, const std::string& route) const;
  const RatioSummary& ratio(const std::string& pair) const;
  bool all_converged() const;
};

/// Ratios numerator/denominator per label, skipping labels in `degenerate`.
RatioSummary summarize_ratio(const NormReport& report, const std::string& numerator,
                             const std::string& denominator);

std::string to_json(const NormReport& report);
std::string to_csv(const NormReport& report);

}  // namespace radsob
