#pragma once

// Profile corpora: the builtin seeded list and the JSON file format
//   [ {"terms": [[c, a, b], ...], "label": "name"}, ... ]

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "radsob/profile.hpp"

namespace radsob {

struct LabeledProfile {
  std::string label;
  Profile profile;
};

using Corpus = std::vector<LabeledProfile>;

inline constexpr std::uint64_t kBuiltinCorpusSeed = 20240001;

/// Six hand-picked profiles followed by 20 seeded random ones. Random
/// profiles have 1-3 terms, c in [-2, 2] on a 1/64 grid, a in {0,2,4,6},
/// b in {0, 1/2, 1, 2}; the "decay-*" half uses b > 0 only.
Corpus builtin_corpus();

/// Entries whose every term decays, usable on the half-line.
Corpus decaying_subset(const Corpus& corpus);

/// Throws ConfigError on malformed documents or non-even profiles.
Corpus parse_corpus(const std::string& json_text);
Corpus load_corpus(const std::filesystem::path& path);
std::string corpus_to_json(const Corpus& corpus);

}  // namespace radsob
