#include "trademap/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>

#include "trademap/error.hpp"
#include "trademap/ingest.hpp"

namespace trademap {
namespace {

constexpr const char* kDefaultColor = "#555555";
constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<ScreenPoint> screen_positions(const Embedding& emb, const PlotSpec& spec) {
  if (emb.dims() != 2) throw Error(ErrorCode::Dimension, "plotting needs a 2-D embedding");
  if (spec.width <= 0 || spec.height <= 0) throw Error(ErrorCode::InvalidArgument, "plot size must be positive");
  if (!(spec.margin_fraction >= 0.0 && spec.margin_fraction < 0.5))
    throw Error(ErrorCode::InvalidArgument, "margin fraction must be in [0, 0.5)");
  const std::size_t n = emb.size();
  std::vector<ScreenPoint> out(n);
  if (n == 0) return out;

  double xmin = emb.coordinates(0, 0), xmax = xmin;
  double ymin = emb.coordinates(0, 1), ymax = ymin;
  for (std::size_t i = 1; i < n; ++i) {
    xmin = std::min(xmin, emb.coordinates(i, 0));
    xmax = std::max(xmax, emb.coordinates(i, 0));
    ymin = std::min(ymin, emb.coordinates(i, 1));
    ymax = std::max(ymax, emb.coordinates(i, 1));
  }
  const double w = spec.width;
  const double h = spec.height;
  const double inner_w = w * (1.0 - 2.0 * spec.margin_fraction);
  const double inner_h = h * (1.0 - 2.0 * spec.margin_fraction);
  const double rx = xmax - xmin;
  const double ry = ymax - ymin;
  double scale = 1.0;
  if (rx > 0.0 && ry > 0.0) scale = std::min(inner_w / rx, inner_h / ry);
  else if (rx > 0.0) scale = inner_w / rx;
  else if (ry > 0.0) scale = inner_h / ry;
  const double mx = 0.5 * (xmin + xmax);
  const double my = 0.5 * (ymin + ymax);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].x = 0.5 * w + (emb.coordinates(i, 0) - mx) * scale;
    out[i].y = 0.5 * h - (emb.coordinates(i, 1) - my) * scale;
  }
  return out;
}

std::string render_svg(const Embedding& emb, const PlotSpec& spec, const ColorGroups& groups) {
  const std::vector<ScreenPoint> pts = screen_positions(emb, spec);

  std::set<std::string> names;
  for (const auto& [_, g] : groups) names.insert(g);
  std::map<std::string, const char*> group_color;
  std::size_t idx = 0;
  for (const auto& g : names) group_color[g] = kPalette[idx++ % kPalette.size()];

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g id=\"markers\" stroke=\"black\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string& code = emb.roster.code(i);
    auto g = groups.find(code);
    const char* color = g == groups.end() ? kDefaultColor : group_color.at(g->second);
    svg << "<circle cx=\"" << fixed(pts[i].x) << "\" cy=\"" << fixed(pts[i].y) << "\" r=\"4\" fill=\"" << color
        << "\" data-code=\"" << xml_escape(code) << "\"/>\n";
  }
  svg << "</g>\n";
  if (spec.label_mode != LabelMode::None) {
    svg << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string& text = spec.label_mode == LabelMode::Code ? emb.roster.code(i) : emb.roster.label(i);
      svg << "<text x=\"" << fixed(pts[i].x + 6.0) << "\" y=\"" << fixed(pts[i].y + 4.0) << "\">"
          << xml_escape(text) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_svg(const Embedding& emb, const PlotSpec& spec) {
  const ColorGroups groups = spec.color_file ? read_code_map(*spec.color_file) : ColorGroups{};
  return render_svg(emb, spec, groups);
}

}  // namespace trademap
