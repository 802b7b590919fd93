#pragma once

#include <variant>

#include "grounder/geometry.hpp"
#include "grounder/olt.hpp"
#include "grounder/point_cloud.hpp"

namespace grounder {

// Right-handed orthonormal triad: right x forward = up.
struct ReferenceFrame {
  Vec3 right{1, 0, 0};
  Vec3 forward{0, 1, 0};
  Vec3 up{0, 0, 1};
  Vec3 origin{0, 0, 0};
};

enum class NamedView { top, front, side };

const char* named_view_name(NamedView v);

struct Perspective {
  double fov_y_deg = 60.0;
  bool operator==(const Perspective& o) const { return fov_y_deg == o.fov_y_deg; }
};

struct Orthographic {
  double half_height_m = 1.0;
  bool operator==(const Orthographic& o) const { return half_height_m == o.half_height_m; }
};

struct CameraPose {
  Vec3 eye;
  Vec3 target;
  Vec3 worldup{0, 0, 1};
  std::variant<Perspective, Orthographic> projection = Perspective{};

  bool operator==(const CameraPose& o) const {
    return eye == o.eye && target == o.target && worldup == o.worldup && projection == o.projection;
  }
};

// World axes with the origin at the scene centroid.
ReferenceFrame scene_frame(const PointCloud& cloud);
ReferenceFrame scene_frame(const SceneOLT& olt);

// Look-at basis: forward = normalize(target - eye), right = normalize(forward
// x worldup), up = right x forward. Throws DegeneratePose when eye == target
// or forward is parallel to worldup.
ReferenceFrame camera_frame(const CameraPose& pose);

}  // namespace grounder
