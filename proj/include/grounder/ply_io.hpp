#pragma once

#include <string>
#include <string_view>

#include "grounder/point_cloud.hpp"

namespace grounder {

// Reads ASCII or binary_little_endian PLY. The vertex element must carry
// float32/float64 x,y,z; uchar r,g,b (or red,green,blue) are picked up when
// present, otherwise colors default to (128,128,128). Unknown properties
// and trailing elements are skipped. A "comment scene_id <id>" line, when
// present, populates PointCloud::scene_id.
//
// Throws: MalformedHeader, TruncatedBody, UnsupportedFormat.
PointCloud parse_ply(std::string_view bytes);

// Inverse of parse_ply: emits double-precision vertices so that
// parse_ply(write_ply(pc)) == pc exactly.
std::string write_ply(const PointCloud& cloud, bool binary = true);

}  // namespace grounder
