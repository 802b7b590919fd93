#include "grounder/olt.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "grounder/errors.hpp"

namespace grounder {

using json = nlohmann::json;

const ObjectRecord* SceneOLT::find(std::uint32_t id) const {
  auto it = std::lower_bound(records.begin(), records.end(), id,
                             [](const ObjectRecord& r, std::uint32_t v) { return r.id < v; });
  if (it != records.end() && it->id == id) return &*it;
  return nullptr;
}

SceneOLT build_olt(const PointCloud& cloud, const InstanceSegmentation& seg) {
  if (seg.instances.empty()) {
    throw Error(Errc::EmptyScene, "segmentation has zero instances");
  }
  validate_segmentation(seg, cloud);

  SceneOLT olt;
  olt.scene_id = seg.scene_id.empty() ? cloud.scene_id : seg.scene_id;

  for (const Instance& inst : seg.instances) {
    std::vector<Vec3> pts;
    pts.reserve(inst.point_indices.size());
    for (std::uint32_t idx : inst.point_indices) pts.push_back(cloud.points[idx]);
    AABB box = compute_bbox(pts);
    olt.records.push_back({inst.instance_id, inst.label, box.center, box.size});
  }
  std::sort(olt.records.begin(), olt.records.end(),
            [](const ObjectRecord& a, const ObjectRecord& b) { return a.id < b.id; });
  for (const ObjectRecord& r : olt.records) olt.label_index[r.label].push_back(r.id);
  return olt;
}

std::vector<ObjectRecord> retrieve_by_label(const SceneOLT& olt,
                                            const std::set<std::string>& labels) {
  std::vector<ObjectRecord> out;
  for (const ObjectRecord& r : olt.records) {
    if (labels.count(r.label)) out.push_back(r);
  }
  return out;  // records are id-sorted already
}

std::string persist_olt(const SceneOLT& olt) {
  json doc;
  doc["schema"] = "olt/1";
  doc["scene_id"] = olt.scene_id;
  json objs = json::array();
  for (const ObjectRecord& r : olt.records) {
    objs.push_back({{"id", r.id},
                    {"label", r.label},
                    {"center", {r.center.x, r.center.y, r.center.z}},
                    {"size", {r.size.x, r.size.y, r.size.z}}});
  }
  doc["objects"] = std::move(objs);
  return doc.dump(2) + "\n";
}

SceneOLT load_olt(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
  try {
    if (doc.value("schema", "") != "olt/1") {
      throw Error(Errc::SchemaVersionMismatch,
                  "expected schema olt/1, got '" + doc.value("schema", "") + "'");
    }
    SceneOLT olt;
    olt.scene_id = doc.at("scene_id").get<std::string>();
    for (const json& j : doc.at("objects")) {
      ObjectRecord r;
      long long raw_id = j.at("id").get<long long>();
      if (raw_id < 0) throw Error(Errc::MalformedJson, "object id must be non-negative");
      r.id = static_cast<std::uint32_t>(raw_id);
      r.label = j.at("label").get<std::string>();
      if (r.label.empty()) throw Error(Errc::MalformedJson, "object label is empty");
      const json& c = j.at("center");
      const json& s = j.at("size");
      r.center = {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
      r.size = {s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()};
      if (r.size.x < 0 || r.size.y < 0 || r.size.z < 0) {
        throw Error(Errc::MalformedJson, "object size has negative component");
      }
      olt.records.push_back(std::move(r));
    }
    std::sort(olt.records.begin(), olt.records.end(),
              [](const ObjectRecord& a, const ObjectRecord& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < olt.records.size(); ++i) {
      if (olt.records[i].id == olt.records[i - 1].id) {
        throw Error(Errc::DuplicateInstanceId,
                    "duplicate object id " + std::to_string(olt.records[i].id));
      }
    }
    for (const ObjectRecord& r : olt.records) olt.label_index[r.label].push_back(r.id);
    return olt;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
}

AABB scene_bounds(const SceneOLT& olt) {
  if (olt.records.empty()) throw Error(Errc::EmptyScene, "OLT has no records");
  AABB acc = olt.records.front().box();
  for (std::size_t i = 1; i < olt.records.size(); ++i) {
    acc = aabb_union(acc, olt.records[i].box());
  }
  return acc;
}

}  // namespace grounder
