#include "grounder/point_cloud.hpp"

#include <limits>
#include <string>

#include "grounder/errors.hpp"

namespace grounder {

void validate_segmentation(const InstanceSegmentation& seg, const PointCloud& cloud) {
  for (const Instance& inst : seg.instances) {
    for (std::uint32_t idx : inst.point_indices) {
      if (idx >= cloud.points.size()) {
        throw Error(Errc::IndexOutOfRange,
                    "instance " + std::to_string(inst.instance_id) + " references point " +
                        std::to_string(idx) + " in a cloud of " +
                        std::to_string(cloud.points.size()) + " points");
      }
    }
  }
}

AABB compute_bbox(std::span<const Vec3> points) {
  if (points.empty()) {
    throw Error(Errc::EmptyMask, "cannot fit a box to zero points");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Vec3 lo{kInf, kInf, kInf};
  Vec3 hi{-kInf, -kInf, -kInf};
  for (const Vec3& p : points) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
    hi.z = std::max(hi.z, p.z);
  }
  return {(lo + hi) * 0.5, hi - lo};
}

}  // namespace grounder
