#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grounder/frames.hpp"
#include "grounder/olt.hpp"
#include "grounder/plan.hpp"

namespace grounder {

// Euclidean distance between object centers (Eq. d(i,j) = ||c_i - c_j||).
double pairwise_distance(const ObjectRecord& a, const ObjectRecord& b);

struct DirectionalResult {
  double value = 0.0;  // signed meters along the predicate's axis
  bool passed = false;
};

// Signed projection of (candidate - anchor) onto the kind's axis, with the
// sign flipped for left/below/behind so that "passed" is value > 0. With no
// anchor (superlative form) returns the candidate's own projection relative
// to the frame origin and passed = true. Throws MissingAnchor for binary
// kinds called without an anchor.
DirectionalResult eval_directional(const ObjectRecord& candidate, const ObjectRecord* anchor,
                                   const ReferenceFrame& frame, PredicateKind kind);

enum class SizeProxy { volume, footprint, height };

double size_proxy(const ObjectRecord& record, SizeProxy proxy);

// Volume IoU of two axis-aligned boxes in [0,1]. Zero-size axes are clamped
// to 1e-6 m so degenerate boxes never divide by zero.
double aabb_iou(const AABB& a, const AABB& b);

struct PredicateTrace {
  Predicate predicate;
  double value = 0.0;
  bool passed = false;
};

struct ScoredCandidate {
  ObjectRecord record;
  double score = 0.0;  // negated rank key; argmax = best
  std::vector<PredicateTrace> per_predicate;
};

struct ScoreOptions {
  // Ordered filter-then-rank pipeline; false = single unordered conjunction
  // with thresholds computed over the full candidate set (the planning-off
  // ablation).
  bool ordered_pipeline = true;
  double superlative_tolerance = 1e-6;
  double next_to_default_radius = 1.0;
};

// Filters candidates through the plan's boolean predicates, keeps near-best
// sets for non-final gradable predicates, ranks by the last gradable one,
// and breaks remaining ties by ascending id. Throws NoCandidates when the
// pipeline empties (or the input is already empty).
std::vector<ScoredCandidate> score_candidates(const std::vector<ObjectRecord>& candidates,
                                              const CheckedPlan& plan, const SceneOLT& olt,
                                              const ReferenceFrame& frame,
                                              const ScoreOptions& options = {});

}  // namespace grounder
