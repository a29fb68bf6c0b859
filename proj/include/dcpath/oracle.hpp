#pragma once

// Brute-force shortest paths through the doubly covered region: an 8-neighbor
// grid whose nodes and edge midpoints are classified once, searched with
// Dijkstra.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "dcpath/covering.hpp"
#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"

namespace dcpath {

inline constexpr double kOracleStep = 0.02;

/// Grid over a box. Coverage flags are kept on the half-pitch lattice so
/// that node (i, j) sits at fine index (2i, 2j) and the midpoint of any
/// 8-neighbor edge is a fine lattice point as well.
struct GridGraph {
  Point origin;
  double h = kOracleStep;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> fine;  // 1 where the point is doubly covered

  int fineWidth() const { return 2 * nx - 1; }
  bool fineAt(int fi, int fj) const {
    return fine[static_cast<std::size_t>(fj) * static_cast<std::size_t>(fineWidth()) +
                static_cast<std::size_t>(fi)] != 0;
  }
  bool node(int i, int j) const { return fineAt(2 * i, 2 * j); }
  Point position(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  int index(int i, int j) const { return j * nx + i; }

  /// Edge from (i, j) to (i + di, j + dj) for an 8-neighbor offset.
  bool edge(int i, int j, int di, int dj) const {
    int i2 = i + di;
    int j2 = j + dj;
    if (i2 < 0 || j2 < 0 || i2 >= nx || j2 >= ny) return false;
    return node(i, j) && node(i2, j2) && fineAt(2 * i + di, 2 * j + dj);
  }
  std::size_t nodeCount() const {
    std::size_t n = 0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) n += node(i, j) ? 1 : 0;
    return n;
  }
};

inline GridGraph buildGrid(const Covering& c, const BBox& box, double h = kOracleStep,
                           double tol = kTol) {
  if (!(h > 0.0)) throw DomainError("buildGrid: pitch must be positive");
  if (!box.valid()) throw DomainError("buildGrid: invalid box");
  GridGraph g;
  g.origin = {box.xmin, box.ymin};
  g.h = h;
  g.nx = static_cast<int>(std::floor(box.width() / h + 1e-9)) + 1;
  g.ny = static_cast<int>(std::floor(box.height() / h + 1e-9)) + 1;
  const int fw = 2 * g.nx - 1;
  const int fh = 2 * g.ny - 1;
  g.fine.assign(static_cast<std::size_t>(fw) * static_cast<std::size_t>(fh), 0);
  bool any = false;
  for (int fj = 0; fj < fh; ++fj) {
    for (int fi = 0; fi < fw; ++fi) {
      Point p{g.origin.x + 0.5 * h * fi, g.origin.y + 0.5 * h * fj};
      bool doubly = c.coverageCount(p, tol) >= 2;
      g.fine[static_cast<std::size_t>(fj) * static_cast<std::size_t>(fw) +
             static_cast<std::size_t>(fi)] = doubly ? 1 : 0;
      if (doubly && fi % 2 == 0 && fj % 2 == 0) any = true;
    }
  }
  if (!any) throw EmptyGraph("no grid node is doubly covered");
  return g;
}

struct OraclePath {
  double length = 0.0;
  std::vector<Point> polyline;  // A, grid nodes..., B
};

namespace detail {

inline constexpr std::array<std::pair<int, int>, 8> kNeighbors{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};

/// Nearest doubly covered node within 2h, ties to the smaller index.
inline std::pair<int, int> snap(const GridGraph& g, Point p) {
  int ci = static_cast<int>(std::lround((p.x - g.origin.x) / g.h));
  int cj = static_cast<int>(std::lround((p.y - g.origin.y) / g.h));
  std::pair<int, int> best{-1, -1};
  double bestD = std::numeric_limits<double>::infinity();
  for (int j = cj - 2; j <= cj + 2; ++j) {
    for (int i = ci - 2; i <= ci + 2; ++i) {
      if (i < 0 || j < 0 || i >= g.nx || j >= g.ny || !g.node(i, j)) continue;
      double d = distance(p, g.position(i, j));
      if (d <= 2.0 * g.h + 1e-12 && d < bestD) {
        bestD = d;
        best = {i, j};
      }
    }
  }
  if (best.first < 0) throw SnapFailed("no doubly covered grid node within 2h of the endpoint");
  return best;
}

}  // namespace detail

inline OraclePath shortestPath(const GridGraph& g, Point a, Point b) {
  auto [ai, aj] = detail::snap(g, a);
  auto [bi, bj] = detail::snap(g, b);
  const int source = g.index(ai, aj);
  const int target = g.index(bi, bj);
  const std::size_t n = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[static_cast<std::size_t>(source)] = 0.0;
  queue.push({0.0, source});
  const double diag = g.h * std::sqrt(2.0);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == target) break;
    int ui = u % g.nx;
    int uj = u / g.nx;
    for (auto [di, dj] : detail::kNeighbors) {
      if (!g.edge(ui, uj, di, dj)) continue;
      int v = g.index(ui + di, uj + dj);
      double nd = d + ((di != 0 && dj != 0) ? diag : g.h);
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        prev[static_cast<std::size_t>(v)] = u;
        queue.push({nd, v});
      }
    }
  }
  if (!std::isfinite(dist[static_cast<std::size_t>(target)]))
    throw Unreachable("endpoints are not connected through doubly covered grid nodes");

  OraclePath out;
  std::vector<Point> nodes;
  for (int v = target; v != -1; v = prev[static_cast<std::size_t>(v)])
    nodes.push_back(g.position(v % g.nx, v / g.nx));
  out.polyline.push_back(a);
  out.polyline.insert(out.polyline.end(), nodes.rbegin(), nodes.rend());
  out.polyline.push_back(b);
  out.length = dist[static_cast<std::size_t>(target)] + distance(a, nodes.back()) +
               distance(b, nodes.front());
  return out;
}

/// Polyline as a chained path; zero-length links and collinear runs are merged.
inline PathCurve polylineToPath(const std::vector<Point>& pts) {
  PathCurve path;
  std::vector<Point> kept;
  for (const auto& p : pts) {
    if (!kept.empty() && distance(kept.back(), p) <= 1e-12) continue;
    if (kept.size() >= 2) {
      Point u = kept.back() - kept[kept.size() - 2];
      Point v = p - kept.back();
      if (std::abs(cross(u, v)) <= 1e-12 * norm(u) * norm(v) && dot(u, v) > 0.0) {
        kept.back() = p;
        continue;
      }
    }
    kept.push_back(p);
  }
  for (std::size_t k = 1; k < kept.size(); ++k) path.append(Segment{kept[k - 1], kept[k]});
  return path;
}

}  // namespace dcpath
