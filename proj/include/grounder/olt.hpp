#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grounder/point_cloud.hpp"

namespace grounder {

// One row of the Object Lookup Table: everything the online stage knows
// about an object instance.
struct ObjectRecord {
  std::uint32_t id = 0;
  std::string label;
  Vec3 center;
  Vec3 size;

  AABB box() const { return {center, size}; }

  bool operator==(const ObjectRecord& o) const {
    return id == o.id && label == o.label && center == o.center && size == o.size;
  }
};

struct SceneOLT {
  std::string scene_id;
  std::vector<ObjectRecord> records;                            // sorted by id
  std::map<std::string, std::vector<std::uint32_t>> label_index; // label -> sorted ids

  const ObjectRecord* find(std::uint32_t id) const;

  bool operator==(const SceneOLT& o) const {
    return scene_id == o.scene_id && records == o.records;
  }
};

// Fits one record per segmentation instance. Throws IndexOutOfRange for
// indices outside the cloud and EmptyScene for zero instances.
SceneOLT build_olt(const PointCloud& cloud, const InstanceSegmentation& seg);

// Exact-label retrieval, ascending id. An empty result is valid.
std::vector<ObjectRecord> retrieve_by_label(const SceneOLT& olt,
                                            const std::set<std::string>& labels);

// Stable key-sorted JSON ({"schema":"olt/1", ...}); load(persist(x)) == x.
std::string persist_olt(const SceneOLT& olt);
SceneOLT load_olt(std::string_view bytes);

// Union of all record boxes. Throws EmptyScene on an empty table.
AABB scene_bounds(const SceneOLT& olt);

}  // namespace grounder
