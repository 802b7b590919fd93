#include "grounder/ply_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <optional>
#include <sstream>
#include <vector>

#include "grounder/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary PLY reader assumes a little-endian host");

namespace grounder {

namespace {

enum class PropType { i8, u8, i16, u16, i32, u32, f32, f64 };

std::optional<PropType> prop_type_from(const std::string& name) {
  if (name == "char" || name == "int8") return PropType::i8;
  if (name == "uchar" || name == "uint8") return PropType::u8;
  if (name == "short" || name == "int16") return PropType::i16;
  if (name == "ushort" || name == "uint16") return PropType::u16;
  if (name == "int" || name == "int32") return PropType::i32;
  if (name == "uint" || name == "uint32") return PropType::u32;
  if (name == "float" || name == "float32") return PropType::f32;
  if (name == "double" || name == "float64") return PropType::f64;
  return std::nullopt;
}

std::size_t prop_size(PropType t) {
  switch (t) {
    case PropType::i8:
    case PropType::u8: return 1;
    case PropType::i16:
    case PropType::u16: return 2;
    case PropType::i32:
    case PropType::u32: return 4;
    case PropType::f32: return 4;
    case PropType::f64: return 8;
  }
  return 0;
}

double read_scalar(const char* p, PropType t) {
  switch (t) {
    case PropType::i8: { std::int8_t v; std::memcpy(&v, p, 1); return v; }
    case PropType::u8: { std::uint8_t v; std::memcpy(&v, p, 1); return v; }
    case PropType::i16: { std::int16_t v; std::memcpy(&v, p, 2); return v; }
    case PropType::u16: { std::uint16_t v; std::memcpy(&v, p, 2); return v; }
    case PropType::i32: { std::int32_t v; std::memcpy(&v, p, 4); return v; }
    case PropType::u32: { std::uint32_t v; std::memcpy(&v, p, 4); return v; }
    case PropType::f32: { float v; std::memcpy(&v, p, 4); return v; }
    case PropType::f64: { double v; std::memcpy(&v, p, 8); return v; }
  }
  return 0.0;
}

struct Property {
  std::string name;
  PropType type = PropType::f32;
  bool is_list = false;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;

  bool has_list() const {
    for (const Property& p : properties)
      if (p.is_list) return true;
    return false;
  }

  std::size_t row_size() const {
    std::size_t n = 0;
    for (const Property& p : properties) n += prop_size(p.type);
    return n;
  }
};

struct Header {
  bool binary = false;
  std::string scene_id;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
};

// Reads one header line ending in '\n'; tolerates trailing '\r'.
bool next_line(std::string_view bytes, std::size_t& pos, std::string& line) {
  if (pos >= bytes.size()) return false;
  std::size_t nl = bytes.find('\n', pos);
  if (nl == std::string_view::npos) {
    line.assign(bytes.substr(pos));
    pos = bytes.size();
  } else {
    line.assign(bytes.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

Header parse_header(std::string_view bytes) {
  Header h;
  std::size_t pos = 0;
  std::string line;

  if (!next_line(bytes, pos, line) || line != "ply") {
    throw Error(Errc::MalformedHeader, "missing 'ply' magic");
  }

  bool have_format = false;
  bool done = false;
  while (next_line(bytes, pos, line)) {
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "comment" || tok[0] == "obj_info") {
      if (tok.size() == 3 && tok[1] == "scene_id") h.scene_id = tok[2];
      continue;
    }
    if (tok[0] == "format") {
      if (tok.size() < 3 || tok[2] != "1.0") {
        throw Error(Errc::MalformedHeader, "bad format line: " + line);
      }
      if (tok[1] == "ascii") {
        h.binary = false;
      } else if (tok[1] == "binary_little_endian") {
        h.binary = true;
      } else if (tok[1] == "binary_big_endian") {
        throw Error(Errc::UnsupportedFormat, "binary_big_endian is not supported");
      } else {
        throw Error(Errc::MalformedHeader, "unknown format: " + tok[1]);
      }
      have_format = true;
      continue;
    }
    if (tok[0] == "element") {
      if (tok.size() != 3) throw Error(Errc::MalformedHeader, "bad element line: " + line);
      Element e;
      e.name = tok[1];
      try {
        long long n = std::stoll(tok[2]);
        if (n < 0) throw std::invalid_argument("negative");
        e.count = static_cast<std::size_t>(n);
      } catch (const std::exception&) {
        throw Error(Errc::MalformedHeader, "bad element count: " + line);
      }
      h.elements.push_back(std::move(e));
      continue;
    }
    if (tok[0] == "property") {
      if (h.elements.empty()) {
        throw Error(Errc::MalformedHeader, "property outside element: " + line);
      }
      Property p;
      if (tok.size() >= 5 && tok[1] == "list") {
        p.is_list = true;
        p.name = tok[4];
      } else if (tok.size() == 3) {
        auto t = prop_type_from(tok[1]);
        if (!t) throw Error(Errc::MalformedHeader, "unknown property type: " + tok[1]);
        p.type = *t;
        p.name = tok[2];
      } else {
        throw Error(Errc::MalformedHeader, "bad property line: " + line);
      }
      h.elements.back().properties.push_back(std::move(p));
      continue;
    }
    if (tok[0] == "end_header") {
      done = true;
      break;
    }
    throw Error(Errc::MalformedHeader, "unrecognized header line: " + line);
  }

  if (!done) throw Error(Errc::MalformedHeader, "missing end_header");
  if (!have_format) throw Error(Errc::MalformedHeader, "missing format line");
  h.body_offset = pos;
  return h;
}

struct VertexLayout {
  int x = -1, y = -1, z = -1;  // property indices
  int r = -1, g = -1, b = -1;
};

VertexLayout vertex_layout(const Element& vertex) {
  VertexLayout lay;
  for (int i = 0; i < static_cast<int>(vertex.properties.size()); ++i) {
    const Property& p = vertex.properties[i];
    if (p.is_list) continue;
    if (p.name == "x") lay.x = i;
    else if (p.name == "y") lay.y = i;
    else if (p.name == "z") lay.z = i;
    else if ((p.name == "r" || p.name == "red") && p.type == PropType::u8) lay.r = i;
    else if ((p.name == "g" || p.name == "green") && p.type == PropType::u8) lay.g = i;
    else if ((p.name == "b" || p.name == "blue") && p.type == PropType::u8) lay.b = i;
  }
  if (lay.x < 0 || lay.y < 0 || lay.z < 0) {
    throw Error(Errc::MalformedHeader, "vertex element lacks x/y/z properties");
  }
  for (int idx : {lay.x, lay.y, lay.z}) {
    PropType t = vertex.properties[idx].type;
    if (t != PropType::f32 && t != PropType::f64) {
      throw Error(Errc::MalformedHeader, "vertex coordinates must be float32 or float64");
    }
  }
  return lay;
}

}  // namespace

PointCloud parse_ply(std::string_view bytes) {
  Header h = parse_header(bytes);

  std::size_t vertex_idx = h.elements.size();
  for (std::size_t i = 0; i < h.elements.size(); ++i) {
    if (h.elements[i].name == "vertex") {
      vertex_idx = i;
      break;
    }
  }
  if (vertex_idx == h.elements.size()) {
    throw Error(Errc::MalformedHeader, "no vertex element declared");
  }
  const Element& vertex = h.elements[vertex_idx];
  if (vertex.count == 0) {
    throw Error(Errc::MalformedHeader, "vertex element declares zero vertices");
  }
  if (vertex.has_list()) {
    throw Error(Errc::UnsupportedFormat, "list property inside vertex element");
  }
  VertexLayout lay = vertex_layout(vertex);

  PointCloud cloud;
  cloud.scene_id = h.scene_id;
  cloud.points.reserve(vertex.count);
  cloud.colors.reserve(vertex.count);
  const bool has_color = lay.r >= 0 && lay.g >= 0 && lay.b >= 0;

  std::size_t pos = h.body_offset;

  if (h.binary) {
    // Skip fixed-size elements that precede the vertex element.
    for (std::size_t i = 0; i < vertex_idx; ++i) {
      if (h.elements[i].has_list()) {
        throw Error(Errc::UnsupportedFormat,
                    "cannot skip binary element with list properties: " + h.elements[i].name);
      }
      pos += h.elements[i].count * h.elements[i].row_size();
    }
    const std::size_t row = vertex.row_size();
    if (pos > bytes.size() || (bytes.size() - pos) / row < vertex.count) {
      std::size_t have = pos > bytes.size() ? 0 : (bytes.size() - pos) / row;
      throw Error(Errc::TruncatedBody, "header declares " + std::to_string(vertex.count) +
                                           " vertices, body has " + std::to_string(have));
    }
    std::vector<std::size_t> offsets(vertex.properties.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
      offsets[i] = off;
      off += prop_size(vertex.properties[i].type);
    }
    auto scalar = [&](const char* base, int prop) {
      return read_scalar(base + offsets[prop], vertex.properties[prop].type);
    };
    for (std::size_t v = 0; v < vertex.count; ++v) {
      const char* base = bytes.data() + pos + v * row;
      cloud.points.push_back({scalar(base, lay.x), scalar(base, lay.y), scalar(base, lay.z)});
      if (has_color) {
        cloud.colors.push_back({static_cast<std::uint8_t>(scalar(base, lay.r)),
                                static_cast<std::uint8_t>(scalar(base, lay.g)),
                                static_cast<std::uint8_t>(scalar(base, lay.b))});
      } else {
        cloud.colors.push_back({128, 128, 128});
      }
    }
  } else {
    std::string line;
    for (std::size_t i = 0; i < vertex_idx; ++i) {
      for (std::size_t skip = 0; skip < h.elements[i].count; ++skip) {
        if (!next_line(bytes, pos, line)) {
          throw Error(Errc::TruncatedBody, "body ends inside element " + h.elements[i].name);
        }
      }
    }
    for (std::size_t v = 0; v < vertex.count; ++v) {
      if (!next_line(bytes, pos, line)) {
        throw Error(Errc::TruncatedBody, "header declares " + std::to_string(vertex.count) +
                                             " vertices, body has " + std::to_string(v));
      }
      auto tok = split_ws(line);
      if (tok.size() < vertex.properties.size()) {
        throw Error(Errc::TruncatedBody,
                    "vertex line " + std::to_string(v) + " has too few values");
      }
      auto scalar = [&](int prop) {
        const std::string& s = tok[static_cast<std::size_t>(prop)];
        char* end = nullptr;
        double val = std::strtod(s.c_str(), &end);
        if (end == s.c_str()) {
          throw Error(Errc::TruncatedBody, "non-numeric vertex value: " + s);
        }
        return val;
      };
      cloud.points.push_back({scalar(lay.x), scalar(lay.y), scalar(lay.z)});
      if (has_color) {
        cloud.colors.push_back({static_cast<std::uint8_t>(scalar(lay.r)),
                                static_cast<std::uint8_t>(scalar(lay.g)),
                                static_cast<std::uint8_t>(scalar(lay.b))});
      } else {
        cloud.colors.push_back({128, 128, 128});
      }
    }
  }
  return cloud;
}

std::string write_ply(const PointCloud& cloud, bool binary) {
  std::string out;
  out += "ply\n";
  out += binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n";
  if (!cloud.scene_id.empty()) out += "comment scene_id " + cloud.scene_id + "\n";
  out += "element vertex " + std::to_string(cloud.points.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "end_header\n";

  if (binary) {
    out.reserve(out.size() + cloud.points.size() * 27);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      char buf[24];
      std::memcpy(buf, &cloud.points[i].x, 8);
      std::memcpy(buf + 8, &cloud.points[i].y, 8);
      std::memcpy(buf + 16, &cloud.points[i].z, 8);
      out.append(buf, 24);
      const Rgb8& c = cloud.colors[i];
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  } else {
    char buf[128];
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Vec3& p = cloud.points[i];
      const Rgb8& c = cloud.colors[i];
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %u %u %u\n", p.x, p.y, p.z, c.r, c.g, c.b);
      out += buf;
    }
  }
  return out;
}

}  // namespace grounder
