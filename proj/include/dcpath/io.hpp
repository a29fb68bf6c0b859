#pragma once

// JSON encodings of coverings, paths and path reports.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dcpath/covering.hpp"
#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"
#include "dcpath/pipeline.hpp"

namespace dcpath {

using json = nlohmann::ordered_json;

inline json toJson(Point p) { return json::array({p.x, p.y}); }

inline Point pointFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidCovering("expected a point [x, y]");
  Point p{j[0].get<double>(), j[1].get<double>()};
  if (!isFinite(p)) throw InvalidCovering("non-finite coordinate");
  return p;
}

inline json coveringToJson(const Covering& c) {
  json discs = json::array();
  for (const auto& p : c.centers()) discs.push_back(toJson(p));
  const BBox& b = c.bbox();
  return json{{"radius", 1.0}, {"discs", discs}, {"bbox", json::array({b.xmin, b.ymin, b.xmax, b.ymax})}};
}

inline Covering coveringFromJson(const json& j) {
  if (!j.is_object()) throw InvalidCovering("covering must be a JSON object");
  if (!j.contains("radius") || !j["radius"].is_number() || j["radius"].get<double>() != 1.0)
    throw InvalidCovering("covering radius must be 1.0");
  if (!j.contains("discs") || !j["discs"].is_array() || j["discs"].empty())
    throw InvalidCovering("covering needs at least one disc");
  if (!j.contains("bbox") || !j["bbox"].is_array() || j["bbox"].size() != 4)
    throw InvalidCovering("bbox must be [xmin, ymin, xmax, ymax]");
  std::vector<Point> centers;
  for (const auto& d : j["discs"]) centers.push_back(pointFromJson(d));
  double v[4];
  for (int k = 0; k < 4; ++k) {
    if (!j["bbox"][static_cast<std::size_t>(k)].is_number()) throw InvalidCovering("bbox entries must be numbers");
    v[k] = j["bbox"][static_cast<std::size_t>(k)].get<double>();
    if (!std::isfinite(v[k])) throw InvalidCovering("non-finite bbox");
  }
  return Covering(std::move(centers), BBox{v[0], v[1], v[2], v[3]});
}

inline json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidCovering(path + ": " + e.what());
  }
}

inline void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline Covering loadCovering(const std::string& path) { return coveringFromJson(readJsonFile(path)); }

inline void saveCovering(const std::string& path, const Covering& c) {
  writeTextFile(path, coveringToJson(c).dump(1) + "\n");
}

inline json pieceToJson(const Piece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece))
    return json{{"type", "seg"}, {"from", toJson(s->from)}, {"to", toJson(s->to)}};
  const auto& a = std::get<ArcPiece>(piece);
  return json{{"type", "arc"},
              {"center", toJson(a.disc().center)},
              {"radius", a.disc().radius},
              {"from_angle", a.startAngle()},
              {"to_angle", a.endAngle()},
              {"ccw", a.orientation() == Orientation::CCW}};
}

inline json pathToJson(const PathCurve& path) {
  json pieces = json::array();
  for (const auto& p : path.pieces) pieces.push_back(pieceToJson(p));
  return json{{"length", pathLength(path)}, {"pieces", pieces}};
}

inline PathCurve pathFromJson(const json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw StructuralError("path JSON needs a pieces array");
  PathCurve path;
  for (const auto& p : j["pieces"]) {
    std::string type = p.value("type", "");
    if (type == "seg") {
      path.append(Segment{pointFromJson(p.at("from")), pointFromJson(p.at("to"))});
    } else if (type == "arc") {
      Disc d{pointFromJson(p.at("center")), p.at("radius").get<double>()};
      path.append(ArcPiece(d, p.at("from_angle").get<double>(), p.at("to_angle").get<double>(),
                           p.at("ccw").get<bool>() ? Orientation::CCW : Orientation::CW));
    } else {
      throw StructuralError("unknown piece type '" + type + "'");
    }
  }
  return path;
}

inline json coverageToJson(const CoverageReport& r) {
  return json{{"pass", r.pass},
              {"min_count", r.samplesChecked > 0 ? json(r.minCount) : json(nullptr)},
              {"worst_point", r.samplesChecked > 0 ? toJson(r.worstPoint) : json(nullptr)},
              {"samples", r.samplesChecked}};
}

/// Path JSON (length and pieces of the constructed path, world coordinates)
/// extended with connectors, chain, comparison pieces and checks.
inline json reportToJson(const PathReport& r) {
  json out = pathToJson(r.gamma);
  const RigidMotion& w = r.ends.frame.toWorld;
  out["endpoints"] = json{{"a_prime", toJson(w.apply(Point{r.ends.xA, 0.0}))},
                          {"b_prime", toJson(w.apply(Point{r.ends.xB, 0.0}))},
                          {"distance", r.ends.d},
                          {"normalized_distance", r.normalizedDistance}};
  auto connector = [](const Connector& c) {
    json j = pathToJson(c.path);
    j["kind"] = toString(c.kind);
    return j;
  };
  out["connector_a"] = connector(r.ends.connectorA);
  out["connector_b"] = connector(r.ends.connectorB);

  json chords = json::array();
  for (std::size_t i = 0; i < r.chain.size(); ++i) {
    const auto& ch = r.chain.chords[i];
    chords.push_back(json{{"disc", ch.discIndex},
                          {"a", toJson(w.apply(Point{ch.a, 0.0}))},
                          {"b", toJson(w.apply(Point{ch.b, 0.0}))},
                          {"side", toString(r.chain.sides[i])}});
  }
  json milestones = json::array();
  for (double m : r.chain.milestones) milestones.push_back(toJson(w.apply(Point{m, 0.0})));
  json runs = json::array();
  for (const auto& run : r.runs)
    runs.push_back(json{{"start", run.start}, {"k", run.k}, {"side", toString(run.side)}});
  out["chain"] = json{{"chords", chords}, {"milestones", milestones}, {"runs", runs}};

  json pieces = json::array();
  for (std::size_t i = 0; i < r.pieces.size(); ++i) {
    const auto& p = r.pieces[i];
    json j = pathToJson(w.apply(p.curve));
    j["index"] = p.index;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["span"] = p.span;
    j["normalized_length"] = r.pieceBounds[i].normLen;
    j["bound"] = r.pieceBounds[i].bound;
    j["ok"] = r.pieceBounds[i].ok;
    pieces.push_back(std::move(j));
  }
  out["gamma_pieces"] = pieces;

  out["checks"] = json{{"ratio", r.ratio()},
                       {"constant", theoremConstant()},
                       {"pieces_length", r.piecesLength},
                       {"total_length", r.totalLength()},
                       {"lemma", r.lemmaOk},
                       {"domination", r.dominationOk},
                       {"global_bound", r.globalBoundOk},
                       {"chain_problems", r.chainProblems},
                       {"strong_spacing_violations", r.strongSpacingViolations},
                       {"ok", r.ok()}};
  out["coverage"] = json{{"gamma", coverageToJson(r.gammaCoverage)},
                         {"connectors", coverageToJson(r.connectorCoverage)}};
  return out;
}

}  // namespace dcpath
