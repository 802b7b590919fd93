#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "grounder/olt.hpp"

namespace grounder {

struct LabelVocabulary {
  std::set<std::string> labels;
  std::map<std::string, std::string> aliases;  // alias term -> canonical label
};

enum class ResolveMethod { exact, alias, fuzzy };

const char* resolve_method_name(ResolveMethod m);

struct Resolution {
  std::string label;
  ResolveMethod method;
};

// Covers common out-of-vocabulary terms seen in indoor-scene queries.
std::map<std::string, std::string> default_aliases();

// Alias config file: {"aliases": {"term": "canonical", ...}}.
std::map<std::string, std::string> load_aliases(std::string_view json_bytes);

LabelVocabulary vocabulary_from(const SceneOLT& olt,
                                std::map<std::string, std::string> aliases = default_aliases());

// Exact match wins, then the alias table, then fuzzy matching by
// normalized edit similarity (>= 0.75 after singular normalization,
// ties broken lexicographically). Throws UnknownLabel when nothing
// clears the bar.
Resolution resolve_label(const std::string& term, const LabelVocabulary& vocab);

}  // namespace grounder
