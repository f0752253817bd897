#include "radsob/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "radsob/errors.hpp"

namespace radsob {

namespace {

using nlohmann::json;

Profile random_profile(std::mt19937_64& engine, bool decaying) {
  static constexpr int kPowers[] = {0, 2, 4, 6};
  static constexpr double kDecays[] = {0.0, 0.5, 1.0, 2.0};
  // Raw engine output keeps the stream identical across standard libraries.
  auto pick = [&](std::uint64_t n) { return engine() % n; };
  while (true) {
    const int count = 1 + static_cast<int>(pick(3));
    std::vector<Term> terms;
    for (int i = 0; i < count; ++i) {
      std::int64_t grid = static_cast<std::int64_t>(pick(257)) - 128;
      if (grid == 0) grid = 1;
      const double c = static_cast<double>(grid) / 64.0;
      const int a = kPowers[pick(4)];
      const double b = decaying ? kDecays[1 + pick(3)] : kDecays[pick(4)];
      terms.push_back({c, a, b});
    }
    Profile f(std::move(terms));
    if (!f.is_zero()) return f;
  }
}

}  // namespace

Corpus builtin_corpus() {
  Corpus corpus = {
      {"one", Profile({{1.0, 0, 0.0}})},
      {"rho2", Profile({{1.0, 2, 0.0}})},
      {"rho4", Profile({{1.0, 4, 0.0}})},
      {"gauss", Profile({{1.0, 0, 1.0}})},
      {"rho4-gauss2", Profile({{3.0, 4, 2.0}})},
      {"bump", Profile({{1.0, 0, 0.5}, {-0.5, 2, 1.0}})},
  };
  std::mt19937_64 engine(kBuiltinCorpusSeed);
  for (int i = 0; i < 20; ++i) {
    const bool decaying = i % 2 == 1;
    std::string label = (decaying ? "decay-" : "mixed-") + std::to_string(i);
    corpus.push_back({std::move(label), random_profile(engine, decaying)});
  }
  return corpus;
}

Corpus decaying_subset(const Corpus& corpus) {
  Corpus out;
  for (const auto& e : corpus) {
    if (e.profile.has_decay() && !e.profile.is_zero()) out.push_back(e);
  }
  return out;
}

Corpus parse_corpus(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("corpus must be a JSON array");
  Corpus corpus;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("terms") || !entry.contains("label")) {
      throw ConfigError("corpus entries need \"terms\" and \"label\"");
    }
    if (!entry["label"].is_string()) throw ConfigError("corpus label must be a string");
    const auto& jterms = entry["terms"];
    if (!jterms.is_array()) throw ConfigError("corpus terms must be an array");
    std::vector<Term> terms;
    for (const auto& t : jterms) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() || !t[2].is_number()) {
        throw ConfigError("each term must be [c, a, b]");
      }
      const double a = t[1].get<double>();
      if (a < 0 || a != static_cast<double>(static_cast<int>(a))) {
        throw ConfigError("term power must be a nonnegative integer");
      }
      terms.push_back({t[0].get<double>(), static_cast<int>(a), t[2].get<double>()});
    }
    Profile f(std::move(terms));
    const std::string label = entry["label"].get<std::string>();
    if (!f.is_even()) throw ConfigError("corpus profile '" + label + "' has odd powers");
    corpus.push_back({label, std::move(f)});
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::string corpus_to_json(const Corpus& corpus) {
  json doc = json::array();
  for (const auto& e : corpus) {
    json terms = json::array();
    for (const auto& t : e.profile.terms()) terms.push_back({t.coeff, t.power, t.decay});
    doc.push_back({{"terms", terms}, {"label", e.label}});
  }
  return doc.dump(2);
}

}  // namespace radsob
