#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grounder/frames.hpp"
#include "grounder/olt.hpp"
#include "grounder/point_cloud.hpp"

namespace grounder {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  static Image filled(int w, int h, Rgb8 color);

  Rgb8 at(int x, int y) const {
    std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }

  void set(int x, int y, Rgb8 c) {
    std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) * 3;
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }

  bool operator==(const Image& o) const {
    return width == o.width && height == o.height && pixels == o.pixels;
  }
};

// Candidate ids to outline; colors are assigned from the palette in order
// (cycling after 8).
struct HighlightSet {
  std::vector<std::uint32_t> ids;
};

const std::array<Rgb8, 8>& highlight_palette();

struct Legend {
  std::map<std::uint32_t, Rgb8> colors;
  CameraPose camera;
};

std::string legend_to_json(const Legend& legend);

struct RenderOptions {
  int splat_radius = 1;          // square splat, Chebyshev radius in px
  Rgb8 background{40, 40, 40};
  double near_clip = 1e-4;       // meters, perspective cameras
};

// Camera for a named view: eye on the view axis at 1.5x the scene diagonal
// from the bounds center, orthographic for top and perspective (fov 60)
// otherwise. Throws DegenerateBounds on a zero-diagonal scene.
CameraPose auto_camera(const AABB& bounds, NamedView view);

// Continuous screen coordinates of a world point, or nullopt when clipped.
// Pixel ownership is floor() of the returned coordinates.
std::optional<std::pair<double, double>> project_point(const CameraPose& camera, int width,
                                                       int height, const Vec3& point,
                                                       double near_clip = 1e-4);

// Deterministic point-splat rendering with a z-buffer (nearest wins, ties to
// the lower point index) and box wireframes for highlighted objects drawn
// over the splats. Same inputs always produce byte-identical images.
Image render(const PointCloud& cloud, const CameraPose& camera, const HighlightSet& highlights,
             const SceneOLT& olt, int width, int height, const RenderOptions& options = {});

Legend make_legend(const HighlightSet& highlights, const CameraPose& camera);

}  // namespace grounder
