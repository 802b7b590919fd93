#include "grounder/render.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "grounder/errors.hpp"

namespace grounder {

using json = nlohmann::json;

Image Image::filled(int w, int h, Rgb8 color) {
  Image img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = color.r;
    img.pixels[i + 1] = color.g;
    img.pixels[i + 2] = color.b;
  }
  return img;
}

const std::array<Rgb8, 8>& highlight_palette() {
  static const std::array<Rgb8, 8> palette = {{{255, 64, 64},
                                               {64, 255, 64},
                                               {64, 128, 255},
                                               {255, 255, 64},
                                               {255, 64, 255},
                                               {64, 255, 255},
                                               {255, 160, 32},
                                               {160, 64, 255}}};
  return palette;
}

namespace {

void check_pose(const CameraPose& pose) {
  if (const Perspective* p = std::get_if<Perspective>(&pose.projection)) {
    if (!(p->fov_y_deg > 10.0 && p->fov_y_deg < 140.0)) {
      throw Error(Errc::DegeneratePose, "fov_y must lie in (10, 140) degrees");
    }
  } else if (const Orthographic* o = std::get_if<Orthographic>(&pose.projection)) {
    if (!(o->half_height_m > 0.0)) {
      throw Error(Errc::DegeneratePose, "orthographic half height must be positive");
    }
  }
}

struct Projector {
  ReferenceFrame frame;
  CameraPose pose;
  double w, h;
  double near_clip;

  // Screen coordinates plus view depth; nullopt when clipped.
  std::optional<std::array<double, 3>> operator()(const Vec3& p) const {
    Vec3 d = p - pose.eye;
    double zc = dot(d, frame.forward);
    double xn, yn;
    if (const Perspective* persp = std::get_if<Perspective>(&pose.projection)) {
      if (zc <= near_clip) return std::nullopt;
      double tan_half = std::tan(persp->fov_y_deg * 0.5 * M_PI / 180.0);
      double aspect = w / h;
      xn = dot(d, frame.right) / (zc * tan_half * aspect);
      yn = dot(d, frame.up) / (zc * tan_half);
    } else {
      const Orthographic& ortho = std::get<Orthographic>(pose.projection);
      if (zc <= 0.0) return std::nullopt;
      double aspect = w / h;
      xn = dot(d, frame.right) / (ortho.half_height_m * aspect);
      yn = dot(d, frame.up) / ortho.half_height_m;
    }
    return std::array<double, 3>{(xn + 1.0) * 0.5 * w, (1.0 - yn) * 0.5 * h, zc};
  }

  // Camera-space depth along forward, for near-plane clipping of segments.
  double depth(const Vec3& p) const { return dot(p - pose.eye, frame.forward); }
};

void draw_segment(Image& img, const Projector& proj, Vec3 a, Vec3 b, Rgb8 color, double near_clip,
                  bool perspective) {
  double za = proj.depth(a);
  double zb = proj.depth(b);
  double lo = perspective ? near_clip : 0.0;
  if (za <= lo && zb <= lo) return;
  if (za <= lo || zb <= lo) {
    double t = (lo + 1e-9 - za) / (zb - za);
    Vec3 cut = a + (b - a) * t;
    if (za <= lo) a = cut; else b = cut;
  }
  auto sa = proj(a);
  auto sb = proj(b);
  if (!sa || !sb) return;
  double dx = (*sb)[0] - (*sa)[0];
  double dy = (*sb)[1] - (*sa)[1];
  int steps = static_cast<int>(std::ceil(std::max(std::abs(dx), std::abs(dy)))) + 1;
  for (int s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) / steps;
    int x = static_cast<int>(std::floor((*sa)[0] + dx * t));
    int y = static_cast<int>(std::floor((*sa)[1] + dy * t));
    if (x >= 0 && x < img.width && y >= 0 && y < img.height) img.set(x, y, color);
  }
}

}  // namespace

CameraPose auto_camera(const AABB& bounds, NamedView view) {
  double diag = bounds.diagonal();
  if (diag <= 0.0) {
    throw Error(Errc::DegenerateBounds, "scene bounds have zero diagonal");
  }
  double dist = 1.5 * diag;
  CameraPose pose;
  pose.target = bounds.center;
  switch (view) {
    case NamedView::top:
      pose.eye = bounds.center + Vec3{0, 0, dist};
      pose.worldup = {0, 1, 0};  // +z is the viewing axis
      pose.projection = Orthographic{0.55 * diag};
      break;
    case NamedView::front:
      pose.eye = bounds.center + Vec3{0, -dist, 0};
      pose.worldup = {0, 0, 1};
      pose.projection = Perspective{60.0};
      break;
    case NamedView::side:
      pose.eye = bounds.center + Vec3{dist, 0, 0};
      pose.worldup = {0, 0, 1};
      pose.projection = Perspective{60.0};
      break;
  }
  return pose;
}

std::optional<std::pair<double, double>> project_point(const CameraPose& camera, int width,
                                                       int height, const Vec3& point,
                                                       double near_clip) {
  check_pose(camera);
  Projector proj{camera_frame(camera), camera, static_cast<double>(width),
                 static_cast<double>(height), near_clip};
  auto s = proj(point);
  if (!s) return std::nullopt;
  return std::make_pair((*s)[0], (*s)[1]);
}

Image render(const PointCloud& cloud, const CameraPose& camera, const HighlightSet& highlights,
             const SceneOLT& olt, int width, int height, const RenderOptions& options) {
  if (width < 16 || height < 16) {
    throw Error(Errc::DegenerateBounds, "image size must be at least 16x16");
  }
  check_pose(camera);

  Image img = Image::filled(width, height, options.background);
  std::vector<double> zbuf(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                           std::numeric_limits<double>::infinity());

  const bool perspective = std::holds_alternative<Perspective>(camera.projection);
  Projector proj{camera_frame(camera), camera, static_cast<double>(width),
                 static_cast<double>(height), options.near_clip};

  const int r = options.splat_radius;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    auto s = proj(cloud.points[i]);
    if (!s) continue;
    int px = static_cast<int>(std::floor((*s)[0]));
    int py = static_cast<int>(std::floor((*s)[1]));
    double depth = (*s)[2];
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        int x = px + dx;
        int y = py + dy;
        if (x < 0 || x >= width || y < 0 || y >= height) continue;
        std::size_t zi = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                         static_cast<std::size_t>(x);
        // Strict comparison: equal depths keep the earlier (lower) index.
        if (depth < zbuf[zi]) {
          zbuf[zi] = depth;
          img.set(x, y, cloud.colors[i]);
        }
      }
    }
  }

  // Wireframes draw over the splats, unoccluded.
  const auto& palette = highlight_palette();
  for (std::size_t h = 0; h < highlights.ids.size(); ++h) {
    const ObjectRecord* rec = olt.find(highlights.ids[h]);
    if (rec == nullptr) {
      throw Error(Errc::IndexOutOfRange,
                  "highlight id " + std::to_string(highlights.ids[h]) + " not in OLT");
    }
    Rgb8 color = palette[h % palette.size()];
    AABB box = rec->box();
    Vec3 lo = box.min_corner();
    Vec3 hi = box.max_corner();
    Vec3 corner[8];
    for (int c = 0; c < 8; ++c) {
      corner[c] = {(c & 1) ? hi.x : lo.x, (c & 2) ? hi.y : lo.y, (c & 4) ? hi.z : lo.z};
    }
    static const int edges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {0, 2}, {1, 3},
                                     {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    for (const auto& e : edges) {
      draw_segment(img, proj, corner[e[0]], corner[e[1]], color, options.near_clip, perspective);
    }
  }
  return img;
}

Legend make_legend(const HighlightSet& highlights, const CameraPose& camera) {
  Legend legend;
  legend.camera = camera;
  const auto& palette = highlight_palette();
  for (std::size_t i = 0; i < highlights.ids.size(); ++i) {
    legend.colors[highlights.ids[i]] = palette[i % palette.size()];
  }
  return legend;
}

std::string legend_to_json(const Legend& legend) {
  json doc;
  json colors = json::object();
  for (const auto& [id, c] : legend.colors) {
    colors[std::to_string(id)] = {c.r, c.g, c.b};
  }
  doc["legend"] = std::move(colors);
  json cam;
  cam["eye"] = {legend.camera.eye.x, legend.camera.eye.y, legend.camera.eye.z};
  cam["target"] = {legend.camera.target.x, legend.camera.target.y, legend.camera.target.z};
  cam["worldup"] = {legend.camera.worldup.x, legend.camera.worldup.y, legend.camera.worldup.z};
  if (const Perspective* p = std::get_if<Perspective>(&legend.camera.projection)) {
    cam["projection"] = {{"type", "perspective"}, {"fov_y_deg", p->fov_y_deg}};
  } else {
    const Orthographic& o = std::get<Orthographic>(legend.camera.projection);
    cam["projection"] = {{"type", "orthographic"}, {"half_height_m", o.half_height_m}};
  }
  doc["camera"] = std::move(cam);
  return doc.dump();
}

}  // namespace grounder
