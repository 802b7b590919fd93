#pragma once

#include <string>
#include <string_view>

#include "grounder/point_cloud.hpp"

namespace grounder {

// Parses the segmentation JSON format:
//   {"scene_id": str,
//    "instances": [{"instance_id": int, "label": str,
//                   "point_indices": [int, ...], "confidence": float?}]}
// Labels are lowercased and trimmed; indices deduplicated and sorted;
// confidence defaults to 1.0.
//
// Throws: MalformedJson, DuplicateInstanceId.
InstanceSegmentation parse_segmentation(std::string_view bytes);

// Canonical serialization (sorted keys, sorted indices). Applying
// parse + write twice yields a fixed point.
std::string write_segmentation(const InstanceSegmentation& seg);

}  // namespace grounder
