#include "grounder/segmentation_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "grounder/errors.hpp"

namespace grounder {

using json = nlohmann::json;

namespace {

std::string normalize_label(std::string s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  s = (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

InstanceSegmentation parse_segmentation(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedJson, e.what());
  }

  try {
    InstanceSegmentation seg;
    seg.scene_id = doc.at("scene_id").get<std::string>();

    std::set<std::uint32_t> seen_ids;
    for (const json& j : doc.at("instances")) {
      Instance inst;
      long long raw_id = j.at("instance_id").get<long long>();
      if (raw_id < 0) {
        throw Error(Errc::MalformedJson, "instance_id must be non-negative");
      }
      inst.instance_id = static_cast<std::uint32_t>(raw_id);
      if (!seen_ids.insert(inst.instance_id).second) {
        throw Error(Errc::DuplicateInstanceId,
                    "instance_id " + std::to_string(inst.instance_id) + " appears twice");
      }
      inst.label = normalize_label(j.at("label").get<std::string>());
      if (inst.label.empty()) {
        throw Error(Errc::MalformedJson, "instance label is empty");
      }

      std::set<std::uint32_t> idx;
      for (const json& v : j.at("point_indices")) {
        long long raw = v.get<long long>();
        if (raw < 0) throw Error(Errc::MalformedJson, "negative point index");
        idx.insert(static_cast<std::uint32_t>(raw));
      }
      if (idx.empty()) {
        throw Error(Errc::MalformedJson, "instance " + std::to_string(inst.instance_id) +
                                             " has no point indices");
      }
      inst.point_indices.assign(idx.begin(), idx.end());

      inst.confidence = j.value("confidence", 1.0);
      if (!(inst.confidence >= 0.0 && inst.confidence <= 1.0)) {
        throw Error(Errc::MalformedJson, "confidence outside [0,1]");
      }
      seg.instances.push_back(std::move(inst));
    }
    return seg;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedJson, e.what());
  }
}

std::string write_segmentation(const InstanceSegmentation& seg) {
  json doc;
  doc["scene_id"] = seg.scene_id;
  json arr = json::array();
  for (const Instance& inst : seg.instances) {
    arr.push_back({{"instance_id", inst.instance_id},
                   {"label", inst.label},
                   {"point_indices", inst.point_indices},
                   {"confidence", inst.confidence}});
  }
  doc["instances"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace grounder
