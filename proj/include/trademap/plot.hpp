#pragma once

#include <map>
#include <optional>
#include <string>

#include "trademap/embedding.hpp"

namespace trademap {

enum class LabelMode { Code, FullName, None };

struct PlotSpec {
  int width = 800;
  int height = 800;
  LabelMode label_mode = LabelMode::Code;
  std::optional<std::string> color_file;  // `code,color-group`
  double margin_fraction = 0.08;
};

using ColorGroups = std::map<std::string, std::string>;

// Screen position of every country: the coordinate bounding box is mapped
// into the margin-inset viewport with a single scale factor (aspect ratio
// preserved), centered, y pointing up.
struct ScreenPoint {
  double x = 0.0;
  double y = 0.0;
};
std::vector<ScreenPoint> screen_positions(const Embedding& emb, const PlotSpec& spec);

// Standalone SVG: one <circle> and (unless labels are off) one <text> per
// country, in roster order. Color groups only pick fill colors.
std::string render_svg(const Embedding& emb, const PlotSpec& spec, const ColorGroups& groups);

// Loads `spec.color_file` when set.
std::string render_svg(const Embedding& emb, const PlotSpec& spec);

}  // namespace trademap
