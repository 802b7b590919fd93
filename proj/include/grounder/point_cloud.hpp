#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grounder/geometry.hpp"

namespace grounder {

// Colored scene point cloud. points and colors are index-aligned.
struct PointCloud {
  std::string scene_id;
  std::vector<Vec3> points;
  std::vector<Rgb8> colors;

  std::size_t size() const { return points.size(); }

  bool operator==(const PointCloud& o) const {
    return scene_id == o.scene_id && points == o.points && colors == o.colors;
  }
};

struct Instance {
  std::uint32_t instance_id = 0;
  std::string label;                        // lowercase, trimmed
  std::vector<std::uint32_t> point_indices; // sorted, unique
  double confidence = 1.0;

  bool operator==(const Instance& o) const {
    return instance_id == o.instance_id && label == o.label &&
           point_indices == o.point_indices && confidence == o.confidence;
  }
};

struct InstanceSegmentation {
  std::string scene_id;
  std::vector<Instance> instances;

  bool operator==(const InstanceSegmentation& o) const {
    return scene_id == o.scene_id && instances == o.instances;
  }
};

// Throws IndexOutOfRange if any instance references a point index
// outside the cloud.
void validate_segmentation(const InstanceSegmentation& seg, const PointCloud& cloud);

// Minimal axis-aligned box containing all points. Throws EmptyMask on an
// empty span.
AABB compute_bbox(std::span<const Vec3> points);

}  // namespace grounder
