#pragma once

// SVG figures of a covering, its doubly covered region, and constructed paths.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "dcpath/covering.hpp"
#include "dcpath/geom.hpp"

namespace dcpath {

struct RenderOptions {
  double shadePitch = 0.1;  // <= 0 disables shading
  double discStroke = 0.02;
  double gammaStroke = 0.06;
  double pieceStroke = 0.03;
  double oracleStroke = 0.03;
  std::string discColor = "#4a6fa5";
  std::string shadeColor = "#f2d16b";
  std::string gammaColor = "#c0392b";
  std::string pieceColor = "#27ae60";
  std::string oracleColor = "#8e44ad";
};

struct RenderScene {
  std::optional<PathCurve> gamma;
  std::vector<PathCurve> gammaPieces;
  std::vector<Point> oracle;
  std::optional<Segment> line;   // the segment A'B'
  std::vector<Point> milestones;
};

namespace detail {

/// Fixed-precision number with trailing zeros removed.
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

inline std::string pathData(const PathCurve& path) {
  std::string d;
  Point cur;
  bool started = false;
  for (const auto& piece : path.pieces) {
    Point s = pieceStart(piece);
    if (!started || distance(cur, s) > 1e-9) d += "M" + num(s.x) + " " + num(s.y) + " ";
    started = true;
    if (const auto* seg = std::get_if<Segment>(&piece)) {
      d += "L" + num(seg->to.x) + " " + num(seg->to.y) + " ";
      cur = seg->to;
    } else {
      const auto& arc = std::get<ArcPiece>(piece);
      double r = arc.disc().radius;
      Point e = arc.end();
      // A full circle cannot be a single SVG arc; split it at the midpoint.
      std::vector<std::pair<Point, double>> parts;
      if (arc.sweep() > kPi + 1e-9) {
        parts.push_back({arc.pointAt(0.5 * arc.length()), 0.5 * arc.sweep()});
        parts.push_back({e, 0.5 * arc.sweep()});
      } else {
        parts.push_back({e, arc.sweep()});
      }
      for (const auto& [to, sweep] : parts)
        d += "A" + num(r) + " " + num(r) + " 0 " + (sweep > kPi ? "1" : "0") + " " +
             (arc.orientation() == Orientation::CCW ? "1" : "0") + " " + num(to.x) + " " + num(to.y) +
             " ";
      cur = e;
    }
  }
  if (!d.empty()) d.pop_back();
  return d;
}

}  // namespace detail

/// World coordinates are kept inside a y-flipped group so that arc sweep
/// flags read counter-clockwise as 1; labels are placed outside the group.
inline std::string renderSvg(const Covering& c, const RenderScene& scene, const RenderOptions& opt = {}) {
  using detail::num;
  const BBox view = c.bbox().expanded(0.5);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(view.xmin) + " " + num(-view.ymax) +
         " " + num(view.width()) + " " + num(view.height()) + "\" width=\"" + num(view.width() * 40.0) +
         "\" height=\"" + num(view.height() * 40.0) + "\">\n";
  out += "<rect class=\"background\" x=\"" + num(view.xmin) + "\" y=\"" + num(-view.ymax) + "\" width=\"" +
         num(view.width()) + "\" height=\"" + num(view.height()) + "\" fill=\"white\"/>\n";
  out += "<g transform=\"scale(1,-1)\">\n";

  if (opt.shadePitch > 0.0) {
    // Doubly covered samples, merged into horizontal strips per row.
    out += "<g class=\"doubly-covered\" fill=\"" + opt.shadeColor + "\" stroke=\"none\">\n";
    const BBox& b = c.bbox();
    const double p = opt.shadePitch;
    long nx = static_cast<long>(std::floor(b.width() / p + 1e-9)) + 1;
    long ny = static_cast<long>(std::floor(b.height() / p + 1e-9)) + 1;
    for (long j = 0; j < ny; ++j) {
      double y = b.ymin + static_cast<double>(j) * p;
      long i = 0;
      while (i < nx) {
        if (c.coverageCount({b.xmin + static_cast<double>(i) * p, y}) < 2) {
          ++i;
          continue;
        }
        long i0 = i;
        while (i < nx && c.coverageCount({b.xmin + static_cast<double>(i) * p, y}) >= 2) ++i;
        double x0 = b.xmin + (static_cast<double>(i0) - 0.5) * p;
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y - 0.5 * p) + "\" width=\"" +
               num(static_cast<double>(i - i0) * p) + "\" height=\"" + num(p) + "\"/>\n";
      }
    }
    out += "</g>\n";
  }

  out += "<g class=\"discs\" fill=\"none\" stroke=\"" + opt.discColor + "\" stroke-width=\"" +
         num(opt.discStroke) + "\">\n";
  for (const auto& ctr : c.centers()) {
    if (!view.expanded(1.0).contains(ctr)) continue;
    out += "<circle cx=\"" + num(ctr.x) + "\" cy=\"" + num(ctr.y) + "\" r=\"1\"/>\n";
  }
  out += "</g>\n";

  if (scene.line)
    out += "<line class=\"segment\" x1=\"" + num(scene.line->from.x) + "\" y1=\"" + num(scene.line->from.y) +
           "\" x2=\"" + num(scene.line->to.x) + "\" y2=\"" + num(scene.line->to.y) +
           "\" stroke=\"black\" stroke-width=\"" + num(opt.pieceStroke) + "\" stroke-dasharray=\"0.1 0.1\"/>\n";

  for (const auto& piece : scene.gammaPieces)
    out += "<path class=\"gamma-i\" d=\"" + detail::pathData(piece) + "\" fill=\"none\" stroke=\"" +
           opt.pieceColor + "\" stroke-width=\"" + num(opt.pieceStroke) + "\"/>\n";

  if (!scene.oracle.empty()) {
    out += "<polyline class=\"oracle\" points=\"";
    for (std::size_t k = 0; k < scene.oracle.size(); ++k)
      out += (k ? " " : "") + num(scene.oracle[k].x) + "," + num(scene.oracle[k].y);
    out += "\" fill=\"none\" stroke=\"" + opt.oracleColor + "\" stroke-width=\"" + num(opt.oracleStroke) +
           "\"/>\n";
  }

  if (scene.gamma)
    out += "<path class=\"gamma\" d=\"" + detail::pathData(*scene.gamma) + "\" fill=\"none\" stroke=\"" +
           opt.gammaColor + "\" stroke-width=\"" + num(opt.gammaStroke) + "\"/>\n";

  const double tick = 0.15;
  for (const auto& m : scene.milestones)
    out += "<rect class=\"milestone\" x=\"" + num(m.x - 0.5 * tick) + "\" y=\"" + num(m.y - 0.5 * tick) +
           "\" width=\"" + num(tick) + "\" height=\"" + num(tick) + "\" fill=\"black\"/>\n";
  out += "</g>\n";

  for (std::size_t k = 0; k < scene.milestones.size(); ++k)
    out += "<text class=\"label\" x=\"" + num(scene.milestones[k].x + 0.1) + "\" y=\"" +
           num(-scene.milestones[k].y - 0.15) + "\" font-size=\"0.3\">M" + std::to_string(k) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace dcpath
