#include "grounder/plan.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "grounder/errors.hpp"

namespace grounder {

using json = nlohmann::json;

const char* kind_name(PredicateKind k) {
  switch (k) {
    case PredicateKind::nearest: return "nearest";
    case PredicateKind::farthest: return "farthest";
    case PredicateKind::left_of: return "left_of";
    case PredicateKind::right_of: return "right_of";
    case PredicateKind::above: return "above";
    case PredicateKind::below: return "below";
    case PredicateKind::in_front_of: return "in_front_of";
    case PredicateKind::behind: return "behind";
    case PredicateKind::next_to: return "next_to";
    case PredicateKind::between: return "between";
    case PredicateKind::smallest: return "smallest";
    case PredicateKind::largest: return "largest";
  }
  return "?";
}

std::optional<PredicateKind> kind_from_name(std::string_view name) {
  static const std::map<std::string_view, PredicateKind> table = {
      {"nearest", PredicateKind::nearest},       {"farthest", PredicateKind::farthest},
      {"left_of", PredicateKind::left_of},       {"right_of", PredicateKind::right_of},
      {"above", PredicateKind::above},           {"below", PredicateKind::below},
      {"in_front_of", PredicateKind::in_front_of}, {"behind", PredicateKind::behind},
      {"next_to", PredicateKind::next_to},       {"between", PredicateKind::between},
      {"smallest", PredicateKind::smallest},     {"largest", PredicateKind::largest},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_gradable(const Predicate& p) {
  switch (p.kind) {
    case PredicateKind::nearest:
    case PredicateKind::farthest:
    case PredicateKind::smallest:
    case PredicateKind::largest:
      return true;
    case PredicateKind::left_of:
    case PredicateKind::right_of:
    case PredicateKind::above:
    case PredicateKind::below:
      return p.anchor_refs.empty();  // superlative form ranks, binary form tests
    default:
      return false;
  }
}

const AnchorDecl* PredicatePlan::find_anchor(std::string_view name) const {
  for (const AnchorDecl& a : anchors) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

bool PredicatePlan::view_dependent() const {
  for (const Predicate& p : constraints) {
    if (p.frame == Frame::camera) return true;
    bool horizontal = p.kind == PredicateKind::left_of || p.kind == PredicateKind::right_of ||
                      p.kind == PredicateKind::in_front_of || p.kind == PredicateKind::behind;
    if (horizontal && !p.frame && viewpoint) return true;
  }
  return false;
}

namespace {

// Anchor count bounds per kind.
std::pair<int, int> arity_bounds(PredicateKind k) {
  switch (k) {
    case PredicateKind::nearest:
    case PredicateKind::farthest:
    case PredicateKind::next_to:
    case PredicateKind::in_front_of:
    case PredicateKind::behind:
      return {1, 1};
    case PredicateKind::between:
      return {2, 2};
    case PredicateKind::smallest:
    case PredicateKind::largest:
      return {0, 0};
    case PredicateKind::left_of:
    case PredicateKind::right_of:
    case PredicateKind::above:
    case PredicateKind::below:
      return {0, 1};
  }
  return {0, 0};
}

void check_predicate(const Predicate& p) {
  auto [lo, hi] = arity_bounds(p.kind);
  int n = static_cast<int>(p.anchor_refs.size());
  if (n < lo || n > hi) {
    throw Error(Errc::ArityError, std::string(kind_name(p.kind)) + " takes " +
                                      (lo == hi ? std::to_string(lo)
                                                : std::to_string(lo) + ".." + std::to_string(hi)) +
                                      " anchors, got " + std::to_string(n));
  }
  if (p.param && p.anchor_refs.empty()) {
    throw Error(Errc::ArityError,
                std::string(kind_name(p.kind)) + ": numeric parameter requires an anchor");
  }
}

void check_plan(const PredicatePlan& plan) {
  if (plan.target_labels.empty()) {
    throw Error(Errc::SyntaxError, "plan declares no target labels");
  }
  std::set<std::string> names;
  for (const AnchorDecl& a : plan.anchors) {
    if (!names.insert(a.name).second) {
      throw Error(Errc::SyntaxError, "anchor '" + a.name + "' declared twice");
    }
  }
  for (const Predicate& p : plan.constraints) {
    check_predicate(p);
    for (const std::string& ref : p.anchor_refs) {
      if (!names.count(ref)) {
        throw Error(Errc::UndeclaredAnchor, "predicate references undeclared anchor '" + ref + "'");
      }
    }
  }
}

// ---- DSL lexer ----

struct Token {
  enum Type { ident, number, semi, colon, pipe, lparen, rparen, comma, eof } type = eof;
  std::string text;
  double num = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& msg, int line, int col) {
    throw Error(Errc::SyntaxError,
                "line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      bump();
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::eof;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case ';': tok_.type = Token::semi; bump(); return;
      case ':': tok_.type = Token::colon; bump(); return;
      case '|': tok_.type = Token::pipe; bump(); return;
      case '(': tok_.type = Token::lparen; bump(); return;
      case ')': tok_.type = Token::rparen; bump(); return;
      case ',': tok_.type = Token::comma; bump(); return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
        bump();
      }
      tok_.type = Token::ident;
      tok_.text = std::move(word);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t start = pos_;
      if (c == '-' || c == '+') bump();
      bool any = false;
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
                                    ((src_[pos_] == '-' || src_[pos_] == '+') && pos_ > start &&
                                     (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E')))) {
        any = true;
        bump();
      }
      if (!any) fail("stray character '" + std::string(1, c) + "'", tok_.line, tok_.col);
      std::string text(src_.substr(start, pos_ - start));
      char* end = nullptr;
      tok_.num = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size()) fail("bad number '" + text + "'", tok_.line, tok_.col);
      tok_.type = Token::number;
      tok_.text = std::move(text);
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'", tok_.line, tok_.col);
  }

  void bump() {
    if (src_[pos_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    pos_++;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

[[noreturn]] void syntax_fail(const Token& t, const std::string& msg) {
  throw Error(Errc::SyntaxError,
              "line " + std::to_string(t.line) + " col " + std::to_string(t.col) + ": " + msg);
}

Token expect(Lexer& lex, Token::Type type, const char* what) {
  if (lex.peek().type != type) syntax_fail(lex.peek(), std::string("expected ") + what);
  return lex.take();
}

// LABEL ("|" LABEL)*, where LABEL is one or more words joined by spaces.
std::vector<std::string> parse_labels(Lexer& lex) {
  std::vector<std::string> labels;
  while (true) {
    if (lex.peek().type != Token::ident) syntax_fail(lex.peek(), "expected a label");
    std::string label = lex.take().text;
    while (lex.peek().type == Token::ident) {
      label += ' ';
      label += lex.take().text;
    }
    labels.push_back(std::move(label));
    if (lex.peek().type == Token::pipe) {
      lex.take();
      continue;
    }
    break;
  }
  return labels;
}

const std::map<std::string_view, PredicateKind> kSuperlatives = {
    {"smallest", PredicateKind::smallest}, {"largest", PredicateKind::largest},
    {"leftmost", PredicateKind::left_of},  {"rightmost", PredicateKind::right_of},
    {"lowest", PredicateKind::below},      {"highest", PredicateKind::above},
};

Predicate parse_predicate(Lexer& lex) {
  Token head = expect(lex, Token::ident, "a predicate keyword");
  Predicate pred;

  auto superlative = kSuperlatives.find(head.text);
  if (superlative != kSuperlatives.end() && lex.peek().type != Token::lparen) {
    pred.kind = superlative->second;
    return pred;
  }

  auto kind = kind_from_name(head.text);
  if (!kind) syntax_fail(head, "unknown predicate keyword '" + head.text + "'");
  pred.kind = *kind;

  expect(lex, Token::lparen, "'('");
  if (lex.peek().type != Token::rparen) {
    while (true) {
      if (lex.peek().type == Token::ident) {
        if (pred.param) syntax_fail(lex.peek(), "anchor after numeric parameter");
        pred.anchor_refs.push_back(lex.take().text);
      } else if (lex.peek().type == Token::number) {
        if (pred.param) syntax_fail(lex.peek(), "more than one numeric parameter");
        pred.param = lex.take().num;
      } else {
        syntax_fail(lex.peek(), "expected an anchor name or number");
      }
      if (lex.peek().type == Token::comma) {
        lex.take();
        continue;
      }
      break;
    }
  }
  expect(lex, Token::rparen, "')'");
  return pred;
}

Viewpoint parse_view_spec(Lexer& lex) {
  Token head = expect(lex, Token::ident, "a view name or pose");
  if (head.text == "top") return {NamedView::top};
  if (head.text == "front") return {NamedView::front};
  if (head.text == "side") return {NamedView::side};
  if (head.text == "pose") {
    expect(lex, Token::lparen, "'('");
    std::array<double, 6> pose{};
    for (int i = 0; i < 6; ++i) {
      if (i > 0) expect(lex, Token::comma, "','");
      pose[static_cast<std::size_t>(i)] = expect(lex, Token::number, "a number").num;
    }
    expect(lex, Token::rparen, "')'");
    return {pose};
  }
  syntax_fail(head, "unknown view '" + head.text + "'");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PredicatePlan parse_plan(std::string_view text) {
  Lexer lex(text);
  PredicatePlan plan;

  bool expect_stmt = true;
  while (lex.peek().type != Token::eof) {
    if (lex.peek().type == Token::semi) {  // tolerate empty statements
      lex.take();
      expect_stmt = true;
      continue;
    }
    if (!expect_stmt) syntax_fail(lex.peek(), "expected ';' between statements");

    Token head = lex.peek();
    if (head.type != Token::ident) syntax_fail(head, "expected a statement");

    if (head.text == "target") {
      lex.take();
      auto labels = parse_labels(lex);
      plan.target_labels.insert(plan.target_labels.end(), labels.begin(), labels.end());
    } else if (head.text == "anchor") {
      lex.take();
      Token name = expect(lex, Token::ident, "an anchor name");
      expect(lex, Token::colon, "':'");
      plan.anchors.push_back({name.text, parse_labels(lex)});
    } else if (head.text == "viewpoint") {
      lex.take();
      if (plan.viewpoint) syntax_fail(head, "viewpoint declared twice");
      plan.viewpoint = parse_view_spec(lex);
    } else {
      plan.constraints.push_back(parse_predicate(lex));
    }
    expect_stmt = false;
  }

  check_plan(plan);
  return plan;
}

std::string print_plan(const PredicatePlan& plan) {
  auto join = [](const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += sep;
      out += v[i];
    }
    return out;
  };

  std::vector<std::string> stmts;
  stmts.push_back("target " + join(plan.target_labels, "|"));
  for (const AnchorDecl& a : plan.anchors) {
    stmts.push_back("anchor " + a.name + ": " + join(a.labels, "|"));
  }
  if (plan.viewpoint) {
    if (const NamedView* v = std::get_if<NamedView>(&plan.viewpoint->spec)) {
      stmts.push_back(std::string("viewpoint ") + named_view_name(*v));
    } else {
      const auto& p = std::get<std::array<double, 6>>(plan.viewpoint->spec);
      std::string s = "viewpoint pose(";
      for (int i = 0; i < 6; ++i) {
        if (i) s += ", ";
        s += format_number(p[static_cast<std::size_t>(i)]);
      }
      s += ")";
      stmts.push_back(std::move(s));
    }
  }
  for (const Predicate& pred : plan.constraints) {
    if (pred.anchor_refs.empty() && !pred.param) {
      switch (pred.kind) {
        case PredicateKind::smallest: stmts.push_back("smallest"); continue;
        case PredicateKind::largest: stmts.push_back("largest"); continue;
        case PredicateKind::left_of: stmts.push_back("leftmost"); continue;
        case PredicateKind::right_of: stmts.push_back("rightmost"); continue;
        case PredicateKind::below: stmts.push_back("lowest"); continue;
        case PredicateKind::above: stmts.push_back("highest"); continue;
        default: break;
      }
    }
    std::string s = kind_name(pred.kind);
    s += "(";
    for (std::size_t i = 0; i < pred.anchor_refs.size(); ++i) {
      if (i) s += ", ";
      s += pred.anchor_refs[i];
    }
    if (pred.param) {
      if (!pred.anchor_refs.empty()) s += ", ";
      s += format_number(*pred.param);
    }
    s += ")";
    stmts.push_back(std::move(s));
  }
  return join(stmts, "; ");
}

std::string plan_to_json(const PredicatePlan& plan) {
  json doc;
  doc["schema"] = "plan/1";
  doc["targets"] = plan.target_labels;
  json anchors = json::array();
  for (const AnchorDecl& a : plan.anchors) {
    anchors.push_back({{"name", a.name}, {"labels", a.labels}});
  }
  doc["anchors"] = std::move(anchors);
  json constraints = json::array();
  for (const Predicate& p : plan.constraints) {
    json c;
    c["kind"] = kind_name(p.kind);
    c["anchors"] = p.anchor_refs;
    if (p.frame) c["frame"] = (*p.frame == Frame::camera) ? "camera" : "scene";
    if (p.param) c["param"] = *p.param;
    constraints.push_back(std::move(c));
  }
  doc["constraints"] = std::move(constraints);
  if (plan.viewpoint) {
    if (const NamedView* v = std::get_if<NamedView>(&plan.viewpoint->spec)) {
      doc["viewpoint"] = {{"view", named_view_name(*v)}};
    } else {
      const auto& p = std::get<std::array<double, 6>>(plan.viewpoint->spec);
      doc["viewpoint"] = {{"pose", {{"eye", {p[0], p[1], p[2]}}, {"target", {p[3], p[4], p[5]}}}}};
    }
  }
  doc["view_dependent"] = plan.view_dependent();
  return doc.dump();
}

PredicatePlan plan_from_json(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
  try {
    if (doc.value("schema", "") != "plan/1") {
      throw Error(Errc::SchemaVersionMismatch,
                  "expected schema plan/1, got '" + doc.value("schema", "") + "'");
    }
    PredicatePlan plan;
    for (const json& t : doc.at("targets")) plan.target_labels.push_back(t.get<std::string>());
    for (const json& a : doc.value("anchors", json::array())) {
      AnchorDecl decl;
      decl.name = a.at("name").get<std::string>();
      for (const json& l : a.at("labels")) decl.labels.push_back(l.get<std::string>());
      plan.anchors.push_back(std::move(decl));
    }
    for (const json& c : doc.value("constraints", json::array())) {
      Predicate p;
      std::string kind = c.at("kind").get<std::string>();
      auto k = kind_from_name(kind);
      if (!k) throw Error(Errc::UnknownKind, "unknown predicate kind '" + kind + "'");
      p.kind = *k;
      for (const json& r : c.value("anchors", json::array())) {
        p.anchor_refs.push_back(r.get<std::string>());
      }
      if (c.contains("frame")) {
        std::string f = c.at("frame").get<std::string>();
        if (f == "scene") {
          p.frame = Frame::scene;
        } else if (f == "camera") {
          p.frame = Frame::camera;
        } else {
          throw Error(Errc::MalformedJson, "unknown frame '" + f + "'");
        }
      }
      if (c.contains("param")) p.param = c.at("param").get<double>();
      plan.constraints.push_back(std::move(p));
    }
    if (doc.contains("viewpoint")) {
      const json& v = doc.at("viewpoint");
      if (v.contains("view")) {
        std::string name = v.at("view").get<std::string>();
        if (name == "top") plan.viewpoint = Viewpoint{NamedView::top};
        else if (name == "front") plan.viewpoint = Viewpoint{NamedView::front};
        else if (name == "side") plan.viewpoint = Viewpoint{NamedView::side};
        else throw Error(Errc::MalformedJson, "unknown view '" + name + "'");
      } else if (v.contains("pose")) {
        const json& eye = v.at("pose").at("eye");
        const json& target = v.at("pose").at("target");
        std::array<double, 6> pose{eye.at(0).get<double>(),    eye.at(1).get<double>(),
                                   eye.at(2).get<double>(),    target.at(0).get<double>(),
                                   target.at(1).get<double>(), target.at(2).get<double>()};
        plan.viewpoint = Viewpoint{pose};
      } else {
        throw Error(Errc::MalformedJson, "viewpoint needs 'view' or 'pose'");
      }
    }
    check_plan(plan);
    return plan;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
}

CheckedPlan validate_plan(const PredicatePlan& plan, const SceneOLT& olt,
                          const LabelVocabulary& vocab) {
  (void)olt;  // candidate emptiness is the scorer's concern
  CheckedPlan checked;
  checked.plan = plan;

  std::set<std::string> referenced;
  for (const Predicate& p : plan.constraints) {
    for (const std::string& r : p.anchor_refs) referenced.insert(r);
  }

  auto resolve_list = [&](const std::vector<std::string>& terms, std::vector<std::string>& out) {
    for (const std::string& term : terms) {
      try {
        Resolution res = resolve_label(term, vocab);
        if (std::find(out.begin(), out.end(), res.label) == out.end()) out.push_back(res.label);
        checked.resolutions.push_back({term, res.label, res.method});
      } catch (const Error& e) {
        if (e.code() != Errc::UnknownLabel) throw;
        checked.notes.push_back("unresolved label '" + term + "'");
      }
    }
  };

  std::vector<std::string> targets;
  resolve_list(plan.target_labels, targets);
  if (targets.empty()) {
    throw Error(Errc::UnknownLabel, "no target label resolves against the scene vocabulary");
  }
  checked.plan.target_labels = std::move(targets);

  std::vector<AnchorDecl> anchors;
  for (const AnchorDecl& a : plan.anchors) {
    std::vector<std::string> labels;
    resolve_list(a.labels, labels);
    if (labels.empty()) {
      if (referenced.count(a.name)) {
        throw Error(Errc::UnknownLabel,
                    "anchor '" + a.name + "' has no label resolving against the scene vocabulary");
      }
      checked.notes.push_back("dropped unreferenced anchor '" + a.name + "'");
      continue;
    }
    anchors.push_back({a.name, std::move(labels)});
  }
  checked.plan.anchors = std::move(anchors);
  return checked;
}

}  // namespace grounder
