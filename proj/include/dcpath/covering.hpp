#pragma once

// Finite model of a locally finite unit-disc covering: a disc family over a
// bounding box with a spatial hash for coverage-count queries, plus covering
// generators and sampling verifiers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"

namespace dcpath {

struct BBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool valid() const { return xmin <= xmax && ymin <= ymax; }
  bool contains(Point p, double tol = 0.0) const {
    return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol && p.y <= ymax + tol;
  }
  BBox expanded(double m) const { return {xmin - m, ymin - m, xmax + m, ymax + m}; }
  BBox shrunk(double m) const { return expanded(-m); }
};

/// Margin between the bounding box and the region where guarantees are asserted.
inline constexpr double kBoxMargin = 2.0;

class Covering {
 public:
  Covering(std::vector<Point> centers, BBox bbox, double cellSize = 1.0)
      : centers_(std::move(centers)), bbox_(bbox), cellSize_(cellSize) {
    if (!(cellSize_ > 0.0)) throw InvalidCovering("cell size must be positive");
    if (!bbox_.valid() || !std::isfinite(bbox_.xmin) || !std::isfinite(bbox_.xmax) ||
        !std::isfinite(bbox_.ymin) || !std::isfinite(bbox_.ymax))
      throw InvalidCovering("invalid bounding box");
    if (centers_.empty()) throw InvalidCovering("a covering needs at least one disc");
    BBox outer = bbox_.expanded(kBoxMargin);
    for (const auto& c : centers_) {
      if (!isFinite(c)) throw InvalidCovering("non-finite disc center");
      if (!outer.contains(c, 1e-12)) throw InvalidCovering("disc center outside bbox + 2");
    }
    buildIndex();
  }

  std::size_t size() const { return centers_.size(); }
  const std::vector<Point>& centers() const { return centers_; }
  Disc disc(std::size_t i) const { return {centers_[i], 1.0}; }
  const BBox& bbox() const { return bbox_; }
  double cellSize() const { return cellSize_; }

  /// Number of discs whose closed (tolerance-inflated) disc contains p.
  int coverageCount(Point p, double tol = kTol) const {
    const double r = 1.0 + tol;
    int count = 0;
    auto cell = tol <= kIndexSlack ? cellOf(p) : std::nullopt;
    if (!cell) {
      for (const auto& c : centers_)
        if (distance(p, c) <= r) ++count;
      return count;
    }
    for (std::uint32_t k = cellStart_[*cell]; k < cellStart_[*cell + 1]; ++k)
      if (distance(p, centers_[cellItems_[k]]) <= r) ++count;
    return count;
  }

  /// Indices of the discs containing p, increasing.
  std::vector<int> discsContaining(Point p, double tol = kTol) const {
    std::vector<int> out;
    const double r = 1.0 + tol;
    for (std::size_t i = 0; i < centers_.size(); ++i)
      if (distance(p, centers_[i]) <= r) out.push_back(static_cast<int>(i));
    return out;
  }

  int bruteForceCount(Point p, double tol = kTol) const {
    int count = 0;
    for (const auto& c : centers_)
      if (distance(p, c) <= 1.0 + tol) ++count;
    return count;
  }

 private:
  // Discs are registered in every cell their (slightly inflated) bounding
  // square touches, so a point query only reads its own cell.
  static constexpr double kIndexSlack = 1e-3;

  void buildIndex() {
    BBox ext = bbox_.expanded(kBoxMargin + 1.0 + kIndexSlack);
    originX_ = ext.xmin;
    originY_ = ext.ymin;
    nx_ = static_cast<long>(std::ceil(ext.width() / cellSize_)) + 1;
    ny_ = static_cast<long>(std::ceil(ext.height() / cellSize_)) + 1;
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    auto forCells = [&](Point c, auto&& fn) {
      const double reach = 1.0 + kIndexSlack;
      long i0 = std::max(0L, cellCoord(c.x - reach, originX_));
      long i1 = std::min(nx_ - 1, cellCoord(c.x + reach, originX_));
      long j0 = std::max(0L, cellCoord(c.y - reach, originY_));
      long j1 = std::min(ny_ - 1, cellCoord(c.y + reach, originY_));
      for (long j = j0; j <= j1; ++j)
        for (long i = i0; i <= i1; ++i) fn(static_cast<std::size_t>(j * nx_ + i));
    };
    for (const auto& c : centers_) forCells(c, [&](std::size_t cell) { ++counts[cell + 1]; });
    for (std::size_t k = 1; k < counts.size(); ++k) counts[k] += counts[k - 1];
    cellStart_ = counts;
    cellItems_.assign(cellStart_.back(), 0);
    std::vector<std::uint32_t> fill(cellStart_.begin(), cellStart_.end() - 1);
    for (std::size_t i = 0; i < centers_.size(); ++i)
      forCells(centers_[i], [&](std::size_t cell) { cellItems_[fill[cell]++] = static_cast<std::uint32_t>(i); });
  }

  long cellCoord(double v, double origin) const {
    return static_cast<long>(std::floor((v - origin) / cellSize_));
  }

  std::optional<std::size_t> cellOf(Point p) const {
    long i = cellCoord(p.x, originX_);
    long j = cellCoord(p.y, originY_);
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
    return static_cast<std::size_t>(j * nx_ + i);
  }

  std::vector<Point> centers_;
  BBox bbox_;
  double cellSize_;
  double originX_ = 0.0;
  double originY_ = 0.0;
  long nx_ = 0;
  long ny_ = 0;
  std::vector<std::uint32_t> cellStart_;
  std::vector<std::uint32_t> cellItems_;
};

struct CoverageReport {
  int minCount = std::numeric_limits<int>::max();
  Point worstPoint;
  long samplesChecked = 0;
  bool pass = true;
};

namespace detail {

inline void accumulate(CoverageReport& r, int count, Point p) {
  ++r.samplesChecked;
  if (count < r.minCount) {
    r.minCount = count;
    r.worstPoint = p;
  }
}

/// Sample positions lo, lo + step, ... up to hi, always including hi.
inline std::vector<double> samplePositions(double lo, double hi, double step) {
  std::vector<double> out;
  if (hi < lo) return out;
  long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  if (hi - out.back() > 1e-12) out.push_back(hi);
  return out;
}

}  // namespace detail

/// Samples the box (shrunk by `margin`) at pitch `step`; passes iff every
/// sample is covered at least once.
inline CoverageReport verifyCovering(const Covering& c, double step, double margin = kBoxMargin,
                                     double tol = kTol) {
  if (!(step > 0.0)) throw DomainError("verifyCovering: step must be positive");
  BBox box = c.bbox().shrunk(margin);
  CoverageReport report;
  for (double y : detail::samplePositions(box.ymin, box.ymax, step))
    for (double x : detail::samplePositions(box.xmin, box.xmax, step))
      detail::accumulate(report, c.coverageCount({x, y}, tol), {x, y});
  report.pass = report.samplesChecked > 0 && report.minCount >= 1;
  return report;
}

/// Samples every piece at arc-length pitch at most `spacing` (endpoints
/// included); passes iff every sample lies in at least two discs.
inline CoverageReport verifyDoublyCoveredPath(const Covering& c, const PathCurve& path,
                                              double spacing = 0.01, double tol = 1e-6) {
  if (!(spacing > 0.0)) throw DomainError("verifyDoublyCoveredPath: spacing must be positive");
  CoverageReport report;
  for (const auto& piece : path.pieces) {
    double len = pieceLength(piece);
    long n = std::max(1L, static_cast<long>(std::ceil(len / spacing)));
    for (long k = 0; k <= n; ++k) {
      Point p = piecePointAt(piece, len * static_cast<double>(k) / static_cast<double>(n));
      detail::accumulate(report, c.coverageCount(p, tol), p);
    }
  }
  report.pass = report.samplesChecked == 0 || report.minCount >= 2;
  return report;
}

/// Lattice points of pitch `spacing` (anchored at the origin) whose discs meet bbox.
inline Covering genSquareLattice(double spacing, const BBox& bbox) {
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  std::vector<Point> centers;
  long i0 = static_cast<long>(std::ceil((bbox.xmin - 1.0) / spacing));
  long i1 = static_cast<long>(std::floor((bbox.xmax + 1.0) / spacing));
  long j0 = static_cast<long>(std::ceil((bbox.ymin - 1.0) / spacing));
  long j1 = static_cast<long>(std::floor((bbox.ymax + 1.0) / spacing));
  for (long j = j0; j <= j1; ++j) {
    for (long i = i0; i <= i1; ++i) {
      Point p{static_cast<double>(i) * spacing, static_cast<double>(j) * spacing};
      double dx = std::max({bbox.xmin - p.x, 0.0, p.x - bbox.xmax});
      double dy = std::max({bbox.ymin - p.y, 0.0, p.y - bbox.ymax});
      if (std::hypot(dx, dy) <= 1.0) centers.push_back(p);
    }
  }
  return Covering(std::move(centers), bbox);
}

/// Deterministic uniform double in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform point in the disc of radius `r` about the origin (rejection sampling).
inline Point uniformInDisc(std::mt19937_64& rng, double r) {
  for (;;) {
    double x = 2.0 * uniform01(rng) - 1.0;
    double y = 2.0 * uniform01(rng) - 1.0;
    if (x * x + y * y <= 1.0) return {r * x, r * y};
  }
}

struct GeneratedCovering {
  Covering covering;
  double jitter;     // jitter actually used after shrinking
  int attempts;      // 1 when the first draw passed
  CoverageReport report;
};

inline constexpr int kMaxJitterRetries = 8;
inline constexpr double kGenVerifyStep = 0.05;

inline GeneratedCovering genPerturbedLattice(double spacing, double jitter, std::uint64_t seed,
                                             const BBox& bbox, double verifyStep = kGenVerifyStep) {
  if (jitter < 0.0) throw DomainError("jitter must be non-negative");
  const Covering base = genSquareLattice(spacing, bbox);
  double j = jitter;
  CoverageReport last;
  for (int attempt = 0; attempt <= kMaxJitterRetries; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    std::vector<Point> centers = base.centers();
    if (j > 0.0)
      for (auto& c : centers) c = c + uniformInDisc(rng, j);
    Covering cov(std::move(centers), bbox);
    last = verifyCovering(cov, verifyStep);
    if (last.pass) return {std::move(cov), j, attempt + 1, last};
    j *= 0.5;
  }
  throw GenerationFailed("perturbed lattice is not a covering after " +
                         std::to_string(kMaxJitterRetries) + " jitter halvings");
}

/// Random covering: scans the box (plus a unit margin) in row order and drops
/// a disc near every sample that is still uncovered.
inline GeneratedCovering genRandomCovering(std::uint64_t seed, const BBox& bbox,
                                           double verifyStep = kGenVerifyStep) {
  std::mt19937_64 rng(seed);
  BBox region = bbox.expanded(1.0);
  const double bucket = 1.0;
  long nx = static_cast<long>(std::ceil(region.width() / bucket)) + 3;
  long ny = static_cast<long>(std::ceil(region.height() / bucket)) + 3;
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(nx * ny));
  auto bucketOf = [&](Point p) {
    long i = static_cast<long>(std::floor((p.x - region.xmin) / bucket)) + 1;
    long j = static_cast<long>(std::floor((p.y - region.ymin) / bucket)) + 1;
    return std::pair{std::clamp(i, 0L, nx - 1), std::clamp(j, 0L, ny - 1)};
  };
  std::vector<Point> centers;
  auto covered = [&](Point p) {
    auto [bi, bj] = bucketOf(p);
    for (long j = std::max(0L, bj - 2); j <= std::min(ny - 1, bj + 2); ++j)
      for (long i = std::max(0L, bi - 2); i <= std::min(nx - 1, bi + 2); ++i)
        for (int k : buckets[static_cast<std::size_t>(j * nx + i)])
          if (distance(p, centers[static_cast<std::size_t>(k)]) <= 1.0 - 1e-6) return true;
    return false;
  };
  const double step = std::min(verifyStep, 0.25);
  for (double y : detail::samplePositions(region.ymin, region.ymax, step)) {
    for (double x : detail::samplePositions(region.xmin, region.xmax, step)) {
      Point p{x, y};
      if (covered(p)) continue;
      Point c = p + uniformInDisc(rng, 0.6);
      auto [bi, bj] = bucketOf(c);
      buckets[static_cast<std::size_t>(bj * nx + bi)].push_back(static_cast<int>(centers.size()));
      centers.push_back(c);
    }
  }
  Covering cov(std::move(centers), bbox);
  CoverageReport report = verifyCovering(cov, verifyStep);
  if (!report.pass) throw GenerationFailed("random covering failed verification");
  return {std::move(cov), 0.0, 1, report};
}

}  // namespace dcpath
