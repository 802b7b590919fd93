#include "grounder/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "grounder/errors.hpp"

namespace grounder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double pairwise_distance(const ObjectRecord& a, const ObjectRecord& b) {
  return norm(a.center - b.center);
}

DirectionalResult eval_directional(const ObjectRecord& candidate, const ObjectRecord* anchor,
                                   const ReferenceFrame& frame, PredicateKind kind) {
  Vec3 axis;
  double sign = 1.0;
  switch (kind) {
    case PredicateKind::left_of: axis = frame.right; sign = -1.0; break;
    case PredicateKind::right_of: axis = frame.right; break;
    case PredicateKind::above: axis = frame.up; break;
    case PredicateKind::below: axis = frame.up; sign = -1.0; break;
    case PredicateKind::in_front_of: axis = frame.forward; break;
    case PredicateKind::behind: axis = frame.forward; sign = -1.0; break;
    default:
      throw Error(Errc::MissingAnchor,
                  std::string(kind_name(kind)) + " is not a directional predicate");
  }
  if (anchor == nullptr) {
    // Superlative form: the candidate's own projection in the frame.
    return {dot(candidate.center - frame.origin, axis), true};
  }
  double value = sign * dot(candidate.center - anchor->center, axis);
  return {value, value > 0.0};
}

double size_proxy(const ObjectRecord& record, SizeProxy proxy) {
  switch (proxy) {
    case SizeProxy::volume: return record.size.x * record.size.y * record.size.z;
    case SizeProxy::footprint: return record.size.x * record.size.y;
    case SizeProxy::height: return record.size.z;
  }
  return 0.0;
}

double aabb_iou(const AABB& a, const AABB& b) {
  auto clamped = [](Vec3 size) {
    return Vec3{std::max(size.x, 1e-6), std::max(size.y, 1e-6), std::max(size.z, 1e-6)};
  };
  AABB ca{a.center, clamped(a.size)};
  AABB cb{b.center, clamped(b.size)};

  double inter = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    double lo = std::max(ca.min_corner()[axis], cb.min_corner()[axis]);
    double hi = std::min(ca.max_corner()[axis], cb.max_corner()[axis]);
    if (hi <= lo) return 0.0;
    inter *= hi - lo;
  }
  double uni = ca.volume() + cb.volume() - inter;
  return inter / uni;
}

namespace {

// Distance from the candidate to its closest anchor instance, the candidate
// itself excluded.
double min_anchor_distance(const ObjectRecord& cand, const std::vector<ObjectRecord>& anchors) {
  double best = kInf;
  for (const ObjectRecord& a : anchors) {
    if (a.id == cand.id) continue;
    best = std::min(best, pairwise_distance(cand, a));
  }
  return best;
}

const ObjectRecord* nearest_anchor_instance(const ObjectRecord& cand,
                                            const std::vector<ObjectRecord>& anchors) {
  const ObjectRecord* best = nullptr;
  double best_d = kInf;
  for (const ObjectRecord& a : anchors) {
    if (a.id == cand.id) continue;
    double d = pairwise_distance(cand, a);
    if (d < best_d) {
      best_d = d;
      best = &a;
    }
  }
  return best;
}

struct Evaluated {
  double value = 0.0;   // reported in the trace
  double key = kInf;    // ascending rank key (gradable predicates only)
  bool passed = false;  // boolean predicates only
};

struct AnchorSets {
  std::map<std::string, std::vector<ObjectRecord>> by_name;

  const std::vector<ObjectRecord>& get(const std::string& name) const {
    return by_name.at(name);
  }
};

Evaluated evaluate_predicate(const Predicate& pred, const ObjectRecord& cand,
                             const AnchorSets& anchors, const ReferenceFrame& frame,
                             const ScoreOptions& opts) {
  Evaluated out;
  switch (pred.kind) {
    case PredicateKind::nearest:
    case PredicateKind::farthest: {
      double d = min_anchor_distance(cand, anchors.get(pred.anchor_refs[0]));
      out.value = d;
      out.key = (pred.kind == PredicateKind::nearest) ? d : -d;
      out.passed = std::isfinite(d);
      return out;
    }
    case PredicateKind::smallest:
    case PredicateKind::largest: {
      double v = size_proxy(cand, SizeProxy::volume);
      out.value = v;
      out.key = (pred.kind == PredicateKind::smallest) ? v : -v;
      out.passed = true;
      return out;
    }
    case PredicateKind::next_to: {
      double d = min_anchor_distance(cand, anchors.get(pred.anchor_refs[0]));
      double radius = pred.param.value_or(opts.next_to_default_radius);
      out.value = d;
      out.passed = d <= radius;
      return out;
    }
    case PredicateKind::between: {
      const auto& set_a = anchors.get(pred.anchor_refs[0]);
      const auto& set_b = anchors.get(pred.anchor_refs[1]);
      double best_perp = kInf;
      bool passed = false;
      for (const ObjectRecord& a : set_a) {
        for (const ObjectRecord& b : set_b) {
          if (a.id == cand.id || b.id == cand.id || a.id == b.id) continue;
          Vec3 seg = b.center - a.center;
          double len2 = dot(seg, seg);
          if (len2 == 0.0) continue;
          double t = dot(cand.center - a.center, seg) / len2;
          Vec3 closest = a.center + seg * t;
          double perp = norm(cand.center - closest);
          bool inside = t > 0.0 && t < 1.0;
          double corridor = std::max(norm(a.size) * 0.5, norm(b.size) * 0.5);
          if (inside && perp < corridor) {
            passed = true;
            best_perp = std::min(best_perp, perp);
          } else if (!passed) {
            best_perp = std::min(best_perp, perp);
          }
        }
      }
      out.value = std::isfinite(best_perp) ? best_perp : 0.0;
      out.passed = passed;
      return out;
    }
    case PredicateKind::left_of:
    case PredicateKind::right_of:
    case PredicateKind::above:
    case PredicateKind::below:
    case PredicateKind::in_front_of:
    case PredicateKind::behind: {
      if (pred.anchor_refs.empty()) {
        DirectionalResult r = eval_directional(cand, nullptr, frame, pred.kind);
        out.value = r.value;
        out.passed = true;
        // Rank keys make "most" directions ascend: leftmost/lowest keep the
        // raw projection, rightmost/highest negate it.
        bool negate = pred.kind == PredicateKind::right_of || pred.kind == PredicateKind::above;
        out.key = negate ? -r.value : r.value;
        return out;
      }
      const ObjectRecord* anchor = nearest_anchor_instance(cand, anchors.get(pred.anchor_refs[0]));
      if (anchor == nullptr) {
        out.value = 0.0;
        out.passed = false;
        return out;
      }
      DirectionalResult r = eval_directional(cand, anchor, frame, pred.kind);
      out.value = r.value;
      out.passed = r.passed;
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<ScoredCandidate> score_candidates(const std::vector<ObjectRecord>& candidates,
                                              const CheckedPlan& plan, const SceneOLT& olt,
                                              const ReferenceFrame& frame,
                                              const ScoreOptions& options) {
  const PredicatePlan& p = plan.plan;

  if (candidates.empty()) {
    throw Error(Errc::NoCandidates, "no candidates retrieved for the target labels");
  }

  AnchorSets anchors;
  for (const AnchorDecl& a : p.anchors) {
    std::set<std::string> labels(a.labels.begin(), a.labels.end());
    anchors.by_name[a.name] = retrieve_by_label(olt, labels);
  }
  for (const Predicate& pred : p.constraints) {
    for (const std::string& ref : pred.anchor_refs) {
      auto it = anchors.by_name.find(ref);
      if (it == anchors.by_name.end()) {
        throw Error(Errc::UndeclaredAnchor, "predicate references undeclared anchor '" + ref + "'");
      }
      if (it->second.empty()) {
        throw Error(Errc::NoCandidates, "anchor '" + ref + "' matched no objects in the scene");
      }
    }
  }

  std::vector<ObjectRecord> cands = candidates;
  std::sort(cands.begin(), cands.end(),
            [](const ObjectRecord& a, const ObjectRecord& b) { return a.id < b.id; });
  const std::size_t n = cands.size();

  // Evaluate every predicate for every candidate up front; survivors keep
  // the full trace.
  std::vector<std::vector<Evaluated>> eval(n, std::vector<Evaluated>(p.constraints.size()));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      eval[c][i] = evaluate_predicate(p.constraints[i], cands[c], anchors, frame, options);
    }
  }

  std::ptrdiff_t rank_idx = -1;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (is_gradable(p.constraints[i])) rank_idx = static_cast<std::ptrdiff_t>(i);
  }

  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;
  std::vector<std::size_t> all = alive;

  std::vector<std::vector<bool>> kept(n, std::vector<bool>(p.constraints.size(), true));

  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Predicate& pred = p.constraints[i];
    if (static_cast<std::ptrdiff_t>(i) == rank_idx) continue;

    std::vector<std::size_t> next;
    if (is_gradable(pred)) {
      const std::vector<std::size_t>& base = options.ordered_pipeline ? alive : all;
      double best = kInf;
      for (std::size_t c : base) best = std::min(best, eval[c][i].key);
      for (std::size_t c : alive) {
        bool keep = eval[c][i].key <= best + options.superlative_tolerance;
        kept[c][i] = keep;
        if (keep) next.push_back(c);
      }
    } else {
      for (std::size_t c : alive) {
        bool keep = eval[c][i].passed;
        kept[c][i] = keep;
        if (keep) next.push_back(c);
      }
    }
    alive = std::move(next);
    if (alive.empty()) {
      throw Error(Errc::NoCandidates, std::string("no candidate satisfies '") +
                                          kind_name(pred.kind) + "' (constraint " +
                                          std::to_string(i + 1) + ")");
    }
  }

  if (rank_idx >= 0) {
    // Candidates with no usable rank key (e.g. the only anchor instance is
    // the candidate itself) cannot be ordered; drop them.
    std::vector<std::size_t> rankable;
    for (std::size_t c : alive) {
      if (std::isfinite(eval[c][static_cast<std::size_t>(rank_idx)].key)) rankable.push_back(c);
    }
    alive = std::move(rankable);
    if (alive.empty()) {
      throw Error(Errc::NoCandidates, "no candidate has a finite ranking key");
    }
    std::stable_sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) {
      double ka = eval[a][static_cast<std::size_t>(rank_idx)].key;
      double kb = eval[b][static_cast<std::size_t>(rank_idx)].key;
      if (ka != kb) return ka < kb;
      return cands[a].id < cands[b].id;
    });
  }

  std::vector<ScoredCandidate> out;
  out.reserve(alive.size());
  for (std::size_t c : alive) {
    ScoredCandidate sc;
    sc.record = cands[c];
    sc.score = rank_idx >= 0 ? -eval[c][static_cast<std::size_t>(rank_idx)].key : 0.0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      bool passed = static_cast<std::ptrdiff_t>(i) == rank_idx
                        ? true
                        : (is_gradable(p.constraints[i]) ? kept[c][i] : eval[c][i].passed);
      sc.per_predicate.push_back({p.constraints[i], eval[c][i].value, passed});
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace grounder
