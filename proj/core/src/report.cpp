#include "radsob/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace radsob {

using nlohmann::ordered_json;

const ReportEntry& NormReport::entry(const std::string& label, const std::string& route) const {
  for (const auto& e : entries) {
    if (e.label == label && e.route == route) return e;
  }
  throw std::out_of_range("no report entry " + label + "/" + route);
}

const RatioSummary& NormReport::ratio(const std::string& pair) const {
  for (const auto& r : ratios) {
    if (r.pair == pair) return r;
  }
  throw std::out_of_range("no ratio " + pair);
}

bool NormReport::all_converged() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.converged; });
}

RatioSummary summarize_ratio(const NormReport& report, const std::string& numerator,
                             const std::string& denominator) {
  RatioSummary out;
  out.pair = numerator + "/" + denominator;
  std::map<std::string, const ReportEntry*> num, den;
  std::vector<std::string> order;
  for (const auto& e : report.entries) {
    if (e.route == numerator) {
      if (!num.count(e.label) && !den.count(e.label)) order.push_back(e.label);
      num[e.label] = &e;
    } else if (e.route == denominator) {
      if (!num.count(e.label) && !den.count(e.label)) order.push_back(e.label);
      den[e.label] = &e;
    }
  }
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  for (const auto& label : order) {
    if (std::find(report.degenerate.begin(), report.degenerate.end(), label) != report.degenerate.end()) continue;
    auto a = num.find(label);
    auto b = den.find(label);
    if (a == num.end() || b == den.end()) continue;
    const double va = a->second->value;
    const double vb = b->second->value;
    if (!(va > 0) || !(vb > 0) || !std::isfinite(va) || !std::isfinite(vb)) continue;
    const double ratio = va / vb;
    const double err = ratio * (a->second->err / va + b->second->err / vb);
    out.values.push_back({label, ratio, err});
    out.min = std::min(out.min, ratio);
    out.max = std::max(out.max, ratio);
  }
  if (out.values.empty()) out.min = out.max = std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

ordered_json param_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

/// Shortest round-trip form; nan and inf become strings rather than null.
ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_number(double x) {
  return number(x).dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const NormReport& report) {
  ordered_json doc;
  ordered_json params = ordered_json::object();
  for (const auto& p : report.params) params[p.name] = param_json(p.value);
  doc["params"] = params;
  ordered_json entries = ordered_json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"label", e.label},
                       {"route", e.route},
                       {"value", number(e.value)},
                       {"err", number(e.err)},
                       {"method", e.method},
                       {"converged", e.converged}});
  }
  doc["entries"] = entries;
  ordered_json ratios = ordered_json::array();
  for (const auto& r : report.ratios) {
    ordered_json values = ordered_json::array();
    for (const auto& v : r.values) values.push_back({{"label", v.label}, {"ratio", number(v.ratio)}, {"err", number(v.err)}});
    ratios.push_back({{"pair", r.pair},
                      {"min", number(r.min)},
                      {"max", number(r.max)},
                      {"count", r.values.size()},
                      {"values", values}});
  }
  doc["ratios"] = ratios;
  doc["degenerate"] = report.degenerate;
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string to_csv(const NormReport& report) {
  std::ostringstream out;
  out << "label,route,value,err,method,converged\n";
  for (const auto& e : report.entries) {
    out << csv_field(e.label) << ',' << csv_field(e.route) << ',' << csv_number(e.value) << ','
        << csv_number(e.err) << ',' << csv_field(e.method) << ',' << (e.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace radsob
