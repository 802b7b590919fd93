#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grounder/frames.hpp"
#include "grounder/labels.hpp"
#include "grounder/olt.hpp"

namespace grounder {

enum class PredicateKind {
  nearest,
  farthest,
  left_of,
  right_of,
  above,
  below,
  in_front_of,
  behind,
  next_to,
  between,
  smallest,
  largest,
};

const char* kind_name(PredicateKind k);
std::optional<PredicateKind> kind_from_name(std::string_view name);

enum class Frame { scene, camera };

struct Predicate {
  PredicateKind kind = PredicateKind::nearest;
  std::vector<std::string> anchor_refs;  // 0..2 declared anchor names
  std::optional<Frame> frame;            // unset: resolved from the plan's viewpoint
  std::optional<double> param;           // next_to radius, in meters

  bool operator==(const Predicate& o) const {
    return kind == o.kind && anchor_refs == o.anchor_refs && frame == o.frame && param == o.param;
  }
};

// True when the predicate produces an orderable key (distance, size, or own
// coordinate) rather than a pass/fail test.
bool is_gradable(const Predicate& p);

struct AnchorDecl {
  std::string name;
  std::vector<std::string> labels;

  bool operator==(const AnchorDecl& o) const { return name == o.name && labels == o.labels; }
};

// Camera hint: a named view or an explicit eye/target pose.
struct Viewpoint {
  std::variant<NamedView, std::array<double, 6>> spec = NamedView::front;

  bool operator==(const Viewpoint& o) const { return spec == o.spec; }
};

struct PredicatePlan {
  std::vector<std::string> target_labels;  // >= 1
  std::vector<AnchorDecl> anchors;
  std::vector<Predicate> constraints;      // ordered pipeline
  std::optional<Viewpoint> viewpoint;

  const AnchorDecl* find_anchor(std::string_view name) const;

  // True iff a constraint is camera-framed, or a left/right/front/behind
  // constraint has no explicit frame while the plan carries a viewpoint.
  bool view_dependent() const;

  bool operator==(const PredicatePlan& o) const {
    return target_labels == o.target_labels && anchors == o.anchors &&
           constraints == o.constraints && viewpoint == o.viewpoint;
  }
};

// DSL text -> plan. Grammar:
//   plan        := stmt (";" stmt)*
//   stmt        := "target" labels | "anchor" IDENT ":" labels
//                | "viewpoint" view_spec | predicate
//   labels      := LABEL ("|" LABEL)*          (LABEL may be several words)
//   predicate   := KIND "(" args? ")" | SUPERLATIVE
//   args        := IDENT ("," IDENT)* ("," NUMBER)?
//   view_spec   := "top" | "front" | "side" | "pose" "(" NUMBER{6} ")"
// Superlatives map onto zero-anchor predicates: leftmost/rightmost ->
// left_of/right_of, lowest/highest -> below/above.
//
// Throws: SyntaxError (with line/column), UndeclaredAnchor, ArityError.
PredicatePlan parse_plan(std::string_view text);

// Canonical DSL text; parse_plan(print_plan(p)) == p for any plan the DSL
// can express (no explicit frames).
std::string print_plan(const PredicatePlan& plan);

// {"schema":"plan/1", ...}; the same shape an LLM backend must emit.
std::string plan_to_json(const PredicatePlan& plan);
PredicatePlan plan_from_json(std::string_view bytes);

struct LabelResolution {
  std::string term;    // as written in the plan
  std::string label;   // canonical OLT label
  ResolveMethod method;
};

// A plan whose labels all map onto the scene vocabulary.
struct CheckedPlan {
  PredicatePlan plan;  // labels rewritten to canonical form
  std::vector<LabelResolution> resolutions;
  std::vector<std::string> notes;  // dropped terms, for the rationale
};

// Resolves every target and anchor label through resolve_label. Throws
// UnknownLabel if no target resolves or a constraint-referenced anchor has
// no resolvable label. An empty candidate set is not detected here.
CheckedPlan validate_plan(const PredicatePlan& plan, const SceneOLT& olt,
                          const LabelVocabulary& vocab);

}  // namespace grounder
