#include "grounder/frames.hpp"

#include "grounder/errors.hpp"

namespace grounder {

const char* named_view_name(NamedView v) {
  switch (v) {
    case NamedView::top: return "top";
    case NamedView::front: return "front";
    case NamedView::side: return "side";
  }
  return "?";
}

ReferenceFrame scene_frame(const PointCloud& cloud) {
  Vec3 centroid;
  for (const Vec3& p : cloud.points) centroid = centroid + p;
  if (!cloud.points.empty()) centroid = centroid / static_cast<double>(cloud.points.size());
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, centroid};
}

ReferenceFrame scene_frame(const SceneOLT& olt) {
  Vec3 centroid;
  for (const ObjectRecord& r : olt.records) centroid = centroid + r.center;
  if (!olt.records.empty()) centroid = centroid / static_cast<double>(olt.records.size());
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, centroid};
}

ReferenceFrame camera_frame(const CameraPose& pose) {
  Vec3 gaze = pose.target - pose.eye;
  if (norm(gaze) == 0.0) {
    throw Error(Errc::DegeneratePose, "camera eye coincides with target");
  }
  Vec3 forward = normalized(gaze);
  Vec3 right_raw = cross(forward, pose.worldup);
  if (norm(right_raw) < 1e-9) {
    throw Error(Errc::DegeneratePose, "camera forward is parallel to worldup");
  }
  Vec3 right = normalized(right_raw);
  Vec3 up = cross(right, forward);
  return {right, forward, up, pose.eye};
}

}  // namespace grounder
