#include "grounder/labels.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include <nlohmann/json.hpp>

#include "grounder/errors.hpp"

namespace grounder {

using json = nlohmann::json;

namespace {

std::string normalize_term(std::string s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  s = (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool ends_with(const std::string& s, const char* suffix) {
  std::string_view sv(suffix);
  return s.size() >= sv.size() && std::string_view(s).substr(s.size() - sv.size()) == sv;
}

std::string singular(const std::string& t) {
  if (t.size() > 3 && ends_with(t, "ies")) return t.substr(0, t.size() - 3) + "y";
  if (ends_with(t, "ches") || ends_with(t, "shes") || ends_with(t, "xes") ||
      ends_with(t, "ses") || ends_with(t, "zes")) {
    return t.substr(0, t.size() - 2);
  }
  if (t.size() > 1 && ends_with(t, "s") && !ends_with(t, "ss")) return t.substr(0, t.size() - 1);
  return t;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double similarity(const std::string& a, const std::string& b) {
  std::size_t m = std::max(a.size(), b.size());
  if (m == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(m);
}

// Best fuzzy candidate at or above the acceptance threshold, if any.
// The set iterates in lexicographic order, so keeping the first maximum
// realizes the lexicographic tie-break.
const std::string* best_fuzzy(const std::string& term, const std::set<std::string>& labels) {
  const std::string sing = singular(term);
  double best = -1.0;
  const std::string* pick = nullptr;
  for (const std::string& label : labels) {
    double sim = std::max(similarity(term, label), similarity(sing, label));
    if (sim > best) {
      best = sim;
      pick = &label;
    }
  }
  if (pick && best >= 0.75) return pick;
  return nullptr;
}

}  // namespace

const char* resolve_method_name(ResolveMethod m) {
  switch (m) {
    case ResolveMethod::exact: return "exact";
    case ResolveMethod::alias: return "alias";
    case ResolveMethod::fuzzy: return "fuzzy";
  }
  return "?";
}

std::map<std::string, std::string> default_aliases() {
  return {{"board", "tv"}, {"fridge", "kitchen cabinet"}};
}

std::map<std::string, std::string> load_aliases(std::string_view json_bytes) {
  json doc;
  try {
    doc = json::parse(json_bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
  std::map<std::string, std::string> out;
  try {
    for (const auto& [k, v] : doc.at("aliases").items()) {
      out[normalize_term(k)] = normalize_term(v.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
  return out;
}

LabelVocabulary vocabulary_from(const SceneOLT& olt, std::map<std::string, std::string> aliases) {
  LabelVocabulary vocab;
  for (const auto& [label, ids] : olt.label_index) vocab.labels.insert(label);
  vocab.aliases = std::move(aliases);
  return vocab;
}

Resolution resolve_label(const std::string& raw_term, const LabelVocabulary& vocab) {
  const std::string term = normalize_term(raw_term);
  if (term.empty()) throw Error(Errc::UnknownLabel, "empty label term");

  if (vocab.labels.count(term)) return {term, ResolveMethod::exact};

  auto alias = vocab.aliases.find(term);
  if (alias != vocab.aliases.end()) {
    const std::string& target = alias->second;
    if (vocab.labels.count(target)) return {target, ResolveMethod::alias};
    if (const std::string* label = best_fuzzy(target, vocab.labels)) {
      return {*label, ResolveMethod::alias};
    }
  }

  if (const std::string* label = best_fuzzy(term, vocab.labels)) {
    return {*label, ResolveMethod::fuzzy};
  }
  throw Error(Errc::UnknownLabel, "no vocabulary label close to '" + term + "'");
}

}  // namespace grounder
