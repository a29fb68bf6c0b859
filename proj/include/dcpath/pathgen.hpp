#pragma once

// Construction of the doubly covered path: endpoint normalization, maximal
// same-side runs of the subcover chain, the arc envelope of each run, and the
// per-disc comparison paths used to bound the total length.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dcpath/covering.hpp"
#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"
#include "dcpath/oracle.hpp"
#include "dcpath/subcover.hpp"

namespace dcpath {

/// Verticals shorter than this are dropped from constructed paths.
inline constexpr double kMinPieceLength = 1e-12;

/// Rigid motion taking A to the origin and B onto the positive x-axis.
struct Frame {
  RigidMotion toLocal;
  RigidMotion toWorld;

  static Frame fromEndpoints(Point a, Point b) {
    double theta = std::atan2(b.y - a.y, b.x - a.x);
    Frame f;
    f.toWorld = {theta, a};
    RigidMotion rot{-theta, {}};
    Point shifted = rot.apply(a);
    f.toLocal = {-theta, {-shifted.x, -shifted.y}};
    return f;
  }
};

/// Same covering expressed in frame coordinates.
inline Covering transformCovering(const Covering& c, const RigidMotion& m) {
  std::vector<Point> centers;
  centers.reserve(c.size());
  for (const auto& p : c.centers()) centers.push_back(m.apply(p));
  BBox src = c.bbox().expanded(kBoxMargin);
  BBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Point corner : {Point{src.xmin, src.ymin}, Point{src.xmax, src.ymin},
                       Point{src.xmin, src.ymax}, Point{src.xmax, src.ymax}}) {
    Point q = m.apply(corner);
    box = {std::min(box.xmin, q.x), std::min(box.ymin, q.y), std::max(box.xmax, q.x),
           std::max(box.ymax, q.y)};
  }
  return Covering(std::move(centers), box.shrunk(kBoxMargin), c.cellSize());
}

/// Chords start+1 .. start+k (1-based) all on `side`; milestones M_start .. M_{start+k}.
struct Run {
  int start = 0;
  int k = 1;
  Side side = Side::Above;
};

inline std::vector<Run> buildRuns(const SubcoverChain& chain) {
  std::vector<Run> runs;
  const int n = static_cast<int>(chain.sides.size());
  int i = 0;
  while (i < n) {
    int k = 1;
    while (i + k < n && chain.sides[static_cast<std::size_t>(i + k)] == chain.sides[static_cast<std::size_t>(i)]) ++k;
    runs.push_back({i, k, chain.sides[static_cast<std::size_t>(i)]});
    i += k;
  }
  return runs;
}

namespace detail {

inline double sideSign(Side s) { return s == Side::Above ? 1.0 : -1.0; }

/// Height of the outer boundary of `d` above (or below, for Side::Below) the
/// line, measured away from the line; clamps outside the span.
inline double signedHeight(const Disc& d, double y0, Side side, double x) {
  double dx = x - d.center.x;
  double root = std::sqrt(std::max(0.0, d.radius * d.radius - dx * dx));
  return sideSign(side) * (d.center.y - y0) + root;
}

inline Point boundaryPoint(const Disc& d, double y0, Side side, double x) {
  return {x, y0 + sideSign(side) * signedHeight(d, y0, side, x)};
}

/// Arc of `d` between the boundary points over x0 < x1, traversed left to right.
inline std::optional<ArcPiece> arcBetween(const Disc& d, double y0, Side side, double x0, double x1) {
  Point p = boundaryPoint(d, y0, side, x0);
  Point q = boundaryPoint(d, y0, side, x1);
  if (distance(p, q) <= kMinPieceLength) return std::nullopt;
  return ArcPiece(d, d.angleOf(p), d.angleOf(q),
                  side == Side::Above ? Orientation::CW : Orientation::CCW);
}

inline void appendVertical(PathCurve& path, Point from, Point to) {
  if (distance(from, to) > kMinPieceLength) path.append(Segment{from, to});
}

}  // namespace detail

/// Envelope value of the run at x: the outermost boundary height among run
/// discs whose chord span contains x.
inline double envelopeHeight(const SubcoverChain& chain, const Run& run, double x) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = run.start; j < run.start + run.k; ++j) {
    const auto& ch = chain.chords[static_cast<std::size_t>(j)];
    if (x < ch.a - kTol || x > ch.b + kTol) continue;
    best = std::max(best, detail::signedHeight(chain.discs[static_cast<std::size_t>(j)],
                                               chain.lineY, run.side, x));
  }
  if (!std::isfinite(best)) throw StructuralError("envelope undefined at x = " + std::to_string(x));
  return best;
}

/// Outer boundary of the union of the run's minor components over
/// [xFrom, xTo], as arcs traversed left to right.
inline std::vector<ArcPiece> envelope(const SubcoverChain& chain, const Run& run, double xFrom,
                                      double xTo) {
  const double y0 = chain.lineY;
  std::vector<double> breaks{xFrom, xTo};
  auto addBreak = [&](double x) {
    if (x > xFrom && x < xTo) breaks.push_back(x);
  };
  const int first = run.start;
  const int last = run.start + run.k;
  auto reflected = [&](int j) {
    Disc d = chain.discs[static_cast<std::size_t>(j)];
    d.center.y = y0 + detail::sideSign(run.side) * (d.center.y - y0);
    return d;
  };
  for (int j = first; j < last; ++j) {
    addBreak(chain.chords[static_cast<std::size_t>(j)].a);
    addBreak(chain.chords[static_cast<std::size_t>(j)].b);
    for (int m = j + 1; m < last; ++m) {
      std::vector<Point> hits;
      try {
        hits = circleCircleIntersections(reflected(j), reflected(m));
      } catch (const DegenerateInput&) {
        continue;  // coincident discs: either one traces the envelope
      }
      for (const auto& p : hits) addBreak(p.x);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> xs;
  for (double x : breaks)
    if (xs.empty() || x - xs.back() > kMinPieceLength) xs.push_back(x);
  if (xs.back() < xTo) xs.back() = xTo;

  // Winning disc on each elementary interval, merged when it repeats.
  struct Span {
    int disc;
    double x0;
    double x1;
  };
  std::vector<Span> spans;
  for (std::size_t s = 1; s < xs.size(); ++s) {
    double mid = 0.5 * (xs[s - 1] + xs[s]);
    int winner = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int j = first; j < last; ++j) {
      const auto& ch = chain.chords[static_cast<std::size_t>(j)];
      if (mid < ch.a || mid > ch.b) continue;
      double h = detail::signedHeight(chain.discs[static_cast<std::size_t>(j)], y0, run.side, mid);
      if (h > best) {
        best = h;
        winner = j;
      }
    }
    if (winner < 0) throw StructuralError("run chords leave a gap at x = " + std::to_string(mid));
    if (!spans.empty() && spans.back().disc == winner)
      spans.back().x1 = xs[s];
    else
      spans.push_back({winner, xs[s - 1], xs[s]});
  }
  std::vector<ArcPiece> arcs;
  for (const auto& sp : spans)
    if (auto arc = detail::arcBetween(chain.discs[static_cast<std::size_t>(sp.disc)], y0, run.side,
                                      sp.x0, sp.x1))
      arcs.push_back(*arc);
  return arcs;
}

struct GammaResult {
  PathCurve gamma;
  std::vector<Run> runs;
};

/// The path from (xA, y0) to (xB, y0): per run, a vertical to the envelope,
/// the envelope itself, and a vertical back to the line.
inline GammaResult buildGamma(const SubcoverChain& chain) {
  GammaResult out;
  out.runs = buildRuns(chain);
  const double y0 = chain.lineY;
  for (const auto& run : out.runs) {
    double x0 = chain.milestones[static_cast<std::size_t>(run.start)];
    double x1 = chain.milestones[static_cast<std::size_t>(run.start + run.k)];
    double s = detail::sideSign(run.side);
    Point top0{x0, y0 + s * envelopeHeight(chain, run, x0)};
    Point top1{x1, y0 + s * envelopeHeight(chain, run, x1)};
    detail::appendVertical(out.gamma, {x0, y0}, top0);
    for (const auto& arc : envelope(chain, run, x0, x1)) {
      // Tangent discs hand over at a chord end where both heights are only
      // zero up to rounding; the square root turns that into a short jump.
      if (!out.gamma.pieces.empty()) detail::appendVertical(out.gamma, out.gamma.end(), arc.start());
      out.gamma.append(arc);
    }
    detail::appendVertical(out.gamma, out.gamma.pieces.empty() ? top1 : out.gamma.end(), {x1, y0});
  }
  if (!out.gamma.isChained())
    throw StructuralError("constructed path is not chained (gap " +
                          std::to_string(out.gamma.maxChainGap()) + ")");
  return out;
}

/// Comparison path for one disc of the chain.
struct GammaPiece {
  int index = 0;  // 1-based position in the chain
  PathCurve curve;
  double alpha = 0.0;  // angle C_i O_i A_i
  double beta = 0.0;   // angle B_i O_i D_i
  Point cPoint;
  Point dPoint;
  double span = 0.0;  // M_i - M_{i-1}
  double chordA = 0.0;  // x of A_i
  double chordB = 0.0;  // x of B_i

  double length() const { return pathLength(curve); }
};

inline double angleBetween(Point u, Point v) { return std::atan2(std::abs(cross(u, v)), dot(u, v)); }

inline std::vector<GammaPiece> buildGammaPieces(const SubcoverChain& chain) {
  std::vector<GammaPiece> out;
  const double y0 = chain.lineY;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const Disc& d = chain.discs[j];
    const Side side = chain.sides[j];
    double m0 = chain.milestones[j];
    double m1 = chain.milestones[j + 1];
    GammaPiece piece;
    piece.index = static_cast<int>(j) + 1;
    piece.span = m1 - m0;
    piece.chordA = chain.chords[j].a;
    piece.chordB = chain.chords[j].b;
    piece.cPoint = detail::boundaryPoint(d, y0, side, m0);
    piece.dPoint = detail::boundaryPoint(d, y0, side, m1);
    detail::appendVertical(piece.curve, {m0, y0}, piece.cPoint);
    if (auto arc = detail::arcBetween(d, y0, side, m0, m1)) piece.curve.append(*arc);
    detail::appendVertical(piece.curve, piece.dPoint, {m1, y0});
    Point aPt{chain.chords[j].a, y0};
    Point bPt{chain.chords[j].b, y0};
    piece.alpha = angleBetween(piece.cPoint - d.center, aPt - d.center);
    piece.beta = angleBetween(bPt - d.center, piece.dPoint - d.center);
    out.push_back(std::move(piece));
  }
  return out;
}

struct NormalizeOptions {
  double oracleStep = kOracleStep;
  double connectorWindow = 4.0;
  double verifySpacing = 0.01;
  double verifyTol = 1e-6;
  double endpointTol = kTol;
};

enum class ConnectorKind { Empty, Straight, Oracle };

inline const char* toString(ConnectorKind k) {
  switch (k) {
    case ConnectorKind::Empty: return "empty";
    case ConnectorKind::Straight: return "straight";
    case ConnectorKind::Oracle: return "oracle";
  }
  return "?";
}

struct Connector {
  PathCurve path;  // world coordinates
  ConnectorKind kind = ConnectorKind::Empty;
  double length = 0.0;
};

struct NormalizedEndpoints {
  Frame frame;
  double d = 0.0;   // |AB|
  double xA = 0.0;  // A' on the frame x-axis
  double xB = 0.0;  // B'
  int discA = -1;   // C_1
  int discB = -1;   // C_n
  Connector connectorA;  // A -> A'
  Connector connectorB;  // B' -> B
};

namespace detail {

inline bool segmentDoublyCovered(const Covering& c, Point p, Point q, const NormalizeOptions& opt) {
  PathCurve s;
  s.append(Segment{p, q});
  return verifyDoublyCoveredPath(c, s, opt.verifySpacing, opt.verifyTol).pass;
}

/// Greedy string pulling: from each kept vertex jump to the furthest later
/// vertex joined by a verified segment. Returns false when some consecutive
/// pair had to be kept unverified.
inline bool shortcut(const Covering& c, const std::vector<Point>& pts, const NormalizeOptions& opt,
                     std::vector<Point>& out) {
  bool clean = true;
  out.assign(1, pts.front());
  std::size_t at = 0;
  while (at + 1 < pts.size()) {
    std::size_t next = at + 1;
    bool found = false;
    for (std::size_t k = pts.size() - 1; k > at; --k) {
      if (segmentDoublyCovered(c, pts[at], pts[k], opt)) {
        next = k;
        found = true;
        break;
      }
    }
    clean = clean && found;
    out.push_back(pts[next]);
    at = next;
  }
  return clean;
}

/// Doubly covered route between two nearby points: the straight segment when
/// it samples clean, otherwise the grid oracle on a window around `from`.
/// The grid is first classified with an inward margin of h/2 so that the
/// route keeps off the region's boundary; the plain grid is the fallback.
inline Connector connect(const Covering& c, Point from, Point to, const NormalizeOptions& opt) {
  Connector out;
  if (distance(from, to) <= kMinPieceLength) return out;
  if (segmentDoublyCovered(c, from, to, opt)) {
    out.path.append(Segment{from, to});
    out.kind = ConnectorKind::Straight;
    out.length = pathLength(out.path);
    return out;
  }
  double w = opt.connectorWindow;
  BBox window{from.x - w, from.y - w, from.x + w, from.y + w};
  std::string lastError;
  bool haveRoute = false;
  for (double gridTol : {-0.5 * opt.oracleStep, kTol}) {
    try {
      GridGraph g = buildGrid(c, window, opt.oracleStep, gridTol);
      OraclePath route = shortestPath(g, from, to);
      std::vector<Point> pulled;
      bool clean = shortcut(c, route.polyline, opt, pulled);
      if (clean || !haveRoute) {
        out.path = polylineToPath(pulled);
        out.kind = ConnectorKind::Oracle;
        out.length = pathLength(out.path);
        haveRoute = true;
      }
      if (clean) return out;
    } catch (const EmptyGraph& e) {
      lastError = e.what();
    } catch (const SnapFailed& e) {
      lastError = e.what();
    } catch (const Unreachable& e) {
      lastError = e.what();
    }
  }
  if (!haveRoute) throw ConnectorNotFound(lastError);
  return out;
}

}  // namespace detail

/// Rotates the problem so AB is horizontal and moves A, B out to the extreme
/// chord endpoints of discs containing them.
inline NormalizedEndpoints normalizeEndpoints(const Covering& c, Point a, Point b,
                                              const NormalizeOptions& opt = {}) {
  if (!isFinite(a) || !isFinite(b)) throw DomainError("endpoints must be finite");
  if (distance(a, b) <= kMinPieceLength) throw DomainError("endpoints coincide");
  if (c.coverageCount(a, opt.endpointTol) < 2) throw NotDoublyCovered("A is not doubly covered");
  if (c.coverageCount(b, opt.endpointTol) < 2) throw NotDoublyCovered("B is not doubly covered");

  NormalizedEndpoints out;
  out.frame = Frame::fromEndpoints(a, b);
  out.d = distance(a, b);
  out.xA = 0.0;
  out.xB = out.d;
  double bestA = std::numeric_limits<double>::infinity();
  double bestB = -std::numeric_limits<double>::infinity();
  for (int i : c.discsContaining(a, opt.endpointTol)) {
    Disc local{out.frame.toLocal.apply(c.centers()[static_cast<std::size_t>(i)]), 1.0};
    auto pts = circleHorizontalLineIntersections(local, 0.0);
    double left = pts.size() == 2 ? pts[0].x : 0.0;
    if (left < bestA) {
      bestA = left;
      out.discA = i;
    }
  }
  for (int i : c.discsContaining(b, opt.endpointTol)) {
    Disc local{out.frame.toLocal.apply(c.centers()[static_cast<std::size_t>(i)]), 1.0};
    auto pts = circleHorizontalLineIntersections(local, 0.0);
    double right = pts.size() == 2 ? pts[1].x : out.d;
    if (right > bestB) {
      bestB = right;
      out.discB = i;
    }
  }
  out.xA = std::min(bestA, 0.0);
  out.xB = std::max(bestB, out.d);
  if (out.xB - out.xA > out.d + 4.0 + 1e-9)
    throw StructuralError("normalized segment grew by more than 4");

  Point aPrime = out.frame.toWorld.apply({out.xA, 0.0});
  Point bPrime = out.frame.toWorld.apply({out.xB, 0.0});
  out.connectorA = detail::connect(c, a, aPrime, opt);
  out.connectorB = detail::connect(c, bPrime, b, opt);
  return out;
}

}  // namespace dcpath
