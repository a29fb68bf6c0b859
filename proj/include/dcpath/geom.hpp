#pragma once

// Planar primitives: points, discs, circular arc pieces, and mixed
// segment/arc paths with exact length.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "dcpath/errors.hpp"

namespace dcpath {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default tolerance of membership and incidence predicates.
inline constexpr double kTol = 1e-9;
/// Discriminants closer than this to zero are treated as exact tangency.
inline constexpr double kTangencyEps = 1e-12;
/// Maximum gap between consecutive pieces of a chained path.
inline constexpr double kChainTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool isFinite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Disc {
  Point center;
  double radius = 1.0;

  /// Closed-disc membership with tolerance.
  bool contains(Point p, double tol = kTol) const { return distance(p, center) <= radius + tol; }
  Point pointAt(double angle) const {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
  }
  double angleOf(Point p) const { return std::atan2(p.y - center.y, p.x - center.x); }
};

/// Maps any angle to (-pi, pi].
inline double normalizeAngle(double a) {
  double r = std::remainder(a, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

enum class Orientation { CCW, CW };

/// A circular arc traversed from startAngle to endAngle in the given
/// orientation. Equal start and end angles denote the full circle.
class ArcPiece {
 public:
  ArcPiece(Disc disc, double startAngle, double endAngle, Orientation orientation)
      : disc_(disc),
        start_(normalizeAngle(startAngle)),
        end_(normalizeAngle(endAngle)),
        orientation_(orientation) {
    if (!(disc.radius > 0.0) || !std::isfinite(disc.radius) || !isFinite(disc.center))
      throw DomainError("arc on an invalid disc");
  }

  const Disc& disc() const { return disc_; }
  double startAngle() const { return start_; }
  double endAngle() const { return end_; }
  Orientation orientation() const { return orientation_; }

  /// Angular sweep in (0, 2pi].
  double sweep() const {
    double d = orientation_ == Orientation::CCW ? end_ - start_ : start_ - end_;
    if (d <= 0.0) d += kTwoPi;
    return d;
  }
  double length() const { return disc_.radius * sweep(); }
  Point start() const { return disc_.pointAt(start_); }
  Point end() const { return disc_.pointAt(end_); }

  /// Point at arc-length parameter s in [0, length()].
  Point pointAt(double s) const {
    double t = s / disc_.radius;
    return disc_.pointAt(orientation_ == Orientation::CCW ? start_ + t : start_ - t);
  }

 private:
  Disc disc_;
  double start_;
  double end_;
  Orientation orientation_;
};

struct Segment {
  Point from;
  Point to;

  double length() const { return distance(from, to); }
  Point start() const { return from; }
  Point end() const { return to; }
  Point pointAt(double s) const {
    double len = length();
    if (len == 0.0) return from;
    double t = s / len;
    return {from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
  }
};

using Piece = std::variant<Segment, ArcPiece>;

inline double pieceLength(const Piece& p) {
  return std::visit([](const auto& q) { return q.length(); }, p);
}
inline Point pieceStart(const Piece& p) {
  return std::visit([](const auto& q) { return q.start(); }, p);
}
inline Point pieceEnd(const Piece& p) {
  return std::visit([](const auto& q) { return q.end(); }, p);
}
inline Point piecePointAt(const Piece& p, double s) {
  return std::visit([s](const auto& q) { return q.pointAt(s); }, p);
}

/// Ordered chain of segments and arcs.
struct PathCurve {
  std::vector<Piece> pieces;

  bool empty() const { return pieces.empty(); }
  Point start() const { return pieceStart(pieces.front()); }
  Point end() const { return pieceEnd(pieces.back()); }

  /// Largest distance between the end of a piece and the start of the next.
  double maxChainGap() const {
    double gap = 0.0;
    for (std::size_t k = 1; k < pieces.size(); ++k)
      gap = std::max(gap, distance(pieceEnd(pieces[k - 1]), pieceStart(pieces[k])));
    return gap;
  }
  bool isChained(double tol = kChainTol) const { return maxChainGap() <= tol; }

  void append(const Piece& p) { pieces.push_back(p); }
  void append(const PathCurve& other) {
    pieces.insert(pieces.end(), other.pieces.begin(), other.pieces.end());
  }
};

/// Exact length: segment lengths plus radius times sweep for arcs.
inline double pathLength(const PathCurve& path) {
  if (!path.isChained())
    throw StructuralError("path pieces are not chained (gap " + std::to_string(path.maxChainGap()) +
                          ")");
  double total = 0.0;
  for (const auto& p : path.pieces) total += pieceLength(p);
  return total;
}

/// Intersections of the circle boundary with the line y = y0, sorted by x.
inline std::vector<Point> circleHorizontalLineIntersections(const Disc& d, double y0) {
  double dy = y0 - d.center.y;
  double disc = d.radius * d.radius - dy * dy;
  if (std::abs(disc) <= kTangencyEps) return {{d.center.x, y0}};
  if (disc < 0.0) return {};
  double h = std::sqrt(disc);
  return {{d.center.x - h, y0}, {d.center.x + h, y0}};
}

/// Common boundary points of two circles, ordered by y then x.
inline std::vector<Point> circleCircleIntersections(const Disc& d1, const Disc& d2) {
  Point v = d2.center - d1.center;
  double d = norm(v);
  if (d <= kTangencyEps) {
    if (std::abs(d1.radius - d2.radius) <= kTangencyEps)
      throw DegenerateInput("concentric equal circles intersect in infinitely many points");
    return {};
  }
  double r1 = d1.radius;
  double r2 = d2.radius;
  double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  double h2 = r1 * r1 - along * along;
  Point u = (1.0 / d) * v;
  Point base = d1.center + along * u;
  if (std::abs(h2) <= kTangencyEps) return {base};
  if (h2 < 0.0) return {};
  double h = std::sqrt(h2);
  Point perp{-u.y, u.x};
  Point p = base + h * perp;
  Point q = base - h * perp;
  if (q.y < p.y || (q.y == p.y && q.x < p.x)) std::swap(p, q);
  return {p, q};
}

/// Topmost boundary point height of `d` above abscissa x, when x is in its span.
inline std::optional<double> upperArcHeight(const Disc& d, double x) {
  double dx = x - d.center.x;
  if (std::abs(dx) > d.radius) return std::nullopt;
  return d.center.y + std::sqrt(std::max(0.0, d.radius * d.radius - dx * dx));
}

/// Rotation by `angle` about the origin followed by translation by `offset`.
struct RigidMotion {
  double angle = 0.0;
  Point offset;

  Point apply(Point p) const {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {c * p.x - s * p.y + offset.x, s * p.x + c * p.y + offset.y};
  }
  Piece apply(const Piece& piece) const {
    if (const auto* seg = std::get_if<Segment>(&piece)) return Segment{apply(seg->from), apply(seg->to)};
    const auto& arc = std::get<ArcPiece>(piece);
    Disc moved{apply(arc.disc().center), arc.disc().radius};
    return ArcPiece(moved, arc.startAngle() + angle, arc.endAngle() + angle, arc.orientation());
  }
  PathCurve apply(const PathCurve& path) const {
    PathCurve out;
    out.pieces.reserve(path.pieces.size());
    for (const auto& p : path.pieces) out.pieces.push_back(apply(p));
    return out;
  }
};

}  // namespace dcpath
