#pragma once

// Length-ratio bounds: the per-disc ratio in the diameter-normalized frame,
// its maximization, and the restricted two-circle problem.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <gsl/gsl_multimin.h>

#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"
#include "dcpath/pathgen.hpp"

namespace dcpath {

inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
/// Inset keeping searches away from the span-zero corner.
inline constexpr double kCornerInset = 1e-6;
inline constexpr int kGoldenIters = 60;

/// pi/3 + sqrt(3).
inline double theoremConstant() { return std::numbers::pi / 3.0 + std::numbers::sqrt3; }

struct RatioPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gammaLen = 0.0;
  double span = 0.0;
  double ratio = 0.0;
};

inline RatioPoint ratio(double alpha, double beta) {
  constexpr double slack = 1e-12;
  if (!(alpha >= -slack && alpha <= kHalfPi + slack && beta >= -slack && beta <= kHalfPi + slack))
    throw DomainError("ratio: angles must lie in [0, pi/2]");
  RatioPoint r{alpha, beta};
  r.gammaLen = (std::sin(alpha) + std::sin(beta)) + kPi - (alpha + beta);
  r.span = std::cos(alpha) + std::cos(beta);
  if (r.span < 1e-12) {
    r.span = 0.0;
    r.ratio = std::numeric_limits<double>::infinity();
  } else {
    r.ratio = r.gammaLen / r.span;
  }
  return r;
}

/// beta = 0 restriction of the ratio.
inline double boundaryCase(double alpha) {
  return (std::sin(alpha) + kPi - alpha) / (std::cos(alpha) + 1.0);
}

/// beta = alpha restriction of the ratio.
inline double diagonalCase(double alpha) {
  if (!(alpha < kHalfPi)) throw DomainError("diagonalCase: alpha must be below pi/2");
  return (2.0 * std::sin(alpha) + kPi - 2.0 * alpha) / (2.0 * std::cos(alpha));
}

/// Angle pairs reachable by a chain piece: the milestone span is at least half
/// the chord, i.e. cos(alpha) + cos(beta) >= 1 on the unit-radius normalization.
inline bool lemmaFeasible(double alpha, double beta) {
  return std::cos(alpha) + std::cos(beta) >= 1.0 - 1e-12;
}

/// Maximizer of a unimodal (or monotone) function on [lo, hi].
template <class F>
double goldenSectionMax(F&& f, double lo, double hi, int iters = kGoldenIters) {
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invPhi * (hi - lo);
  double x2 = lo + invPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  double best = 0.5 * (lo + hi);
  for (double x : {lo, hi, x1, x2})
    if (f(x) > f(best)) best = x;
  return best;
}

struct RatioMaximum {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
  double gridAlpha = 0.0;  // best grid node before refinement
  double gridBeta = 0.0;
  double gridValue = 0.0;
  long evaluations = 0;
};

/// Grid search of the ratio over the feasible angle pairs, then golden-section
/// refinement along the diagonal and along the beta = 0 boundary.
inline RatioMaximum maximizeRatio(double gridStep = 1e-3, int refineIters = kGoldenIters) {
  if (!(gridStep > 0.0 && gridStep <= 1e-2)) throw DomainError("maximizeRatio: gridStep must be in (0, 1e-2]");
  const double hi = kHalfPi - kCornerInset;
  const long n = static_cast<long>(std::floor(hi / gridStep));
  RatioMaximum out;
  out.gridValue = -std::numeric_limits<double>::infinity();
  for (long i = 0; i <= n; ++i) {
    double a = static_cast<double>(i) * gridStep;
    for (long j = 0; j <= n; ++j) {
      double b = static_cast<double>(j) * gridStep;
      if (!lemmaFeasible(a, b)) continue;
      ++out.evaluations;
      double r = ratio(a, b).ratio;
      if (r > out.gridValue) {
        out.gridValue = r;
        out.gridAlpha = a;
        out.gridBeta = b;
      }
    }
  }
  out.alpha = out.gridAlpha;
  out.beta = out.gridBeta;
  out.value = out.gridValue;

  const double diagHi = std::acos(0.5);  // 2cos(a) >= 1
  double a = goldenSectionMax(diagonalCase, 0.0, diagHi, refineIters);
  if (diagonalCase(a) > out.value) {
    out.alpha = out.beta = a;
    out.value = diagonalCase(a);
  }
  double e = goldenSectionMax(boundaryCase, 0.0, hi, refineIters);
  if (boundaryCase(e) > out.value) {
    out.alpha = e;
    out.beta = 0.0;
    out.value = boundaryCase(e);
  }
  return out;
}

/// Grid argmax of the ratio on the contour cos(alpha) + cos(beta) = s,
/// parametrized by alpha at the given pitch.
inline std::optional<RatioPoint> contourArgmax(double s, double pitch) {
  std::optional<RatioPoint> best;
  const long n = static_cast<long>(std::floor(kHalfPi / pitch));
  for (long i = 0; i <= n; ++i) {
    double a = static_cast<double>(i) * pitch;
    double cb = s - std::cos(a);
    if (cb < 0.0 || cb > 1.0) continue;
    double b = std::acos(cb);
    RatioPoint r = ratio(a, b);
    if (r.span == 0.0) continue;
    if (!best || r.ratio > best->ratio) best = r;
  }
  return best;
}

struct NormalizedBound {
  double normLen = 0.0;
  double bound = 0.0;  // constant * span
  bool ok = false;
};

/// Replaces disc i by the circle on diameter A_iB_i, measures the comparison
/// path on it in closed form, and checks |gamma_i| <= normLen <= c * span.
inline NormalizedBound normalizedGammaPieceBound(const GammaPiece& piece, double span) {
  double center = 0.5 * (piece.chordA + piece.chordB);
  double r = 0.5 * (piece.chordB - piece.chordA);
  double m0 = piece.cPoint.x;
  double m1 = piece.dPoint.x;
  double a = std::acos(std::clamp((center - m0) / r, -1.0, 1.0));
  double b = std::acos(std::clamp((m1 - center) / r, -1.0, 1.0));
  NormalizedBound out;
  out.normLen = r * (std::sin(a) + std::sin(b) + kPi - a - b);
  out.bound = theoremConstant() * span;
  out.ok = piece.length() <= out.normLen + 1e-9 && out.normLen <= out.bound + 1e-9;
  return out;
}

// Two intersecting unit circles centered at (-t/2, 0) and (t/2, 0); A on the
// first at angle thetaA, B on the second at angle thetaB.
struct TwoCircleConfig {
  double t = 1.0;
  double thetaA = kPi;
  double thetaB = 0.0;

  Disc c1() const { return {{-0.5 * t, 0.0}, 1.0}; }
  Disc c2() const { return {{0.5 * t, 0.0}, 1.0}; }
  Point a() const { return c1().pointAt(thetaA); }
  Point b() const { return c2().pointAt(thetaB); }
};

inline double shorterArc(const Disc& d, Point p, Point q) {
  double delta = std::abs(normalizeAngle(d.angleOf(q) - d.angleOf(p)));
  return d.radius * std::min(delta, kTwoPi - delta);
}

inline void checkTwoCircle(const TwoCircleConfig& cfg) {
  if (!(cfg.t > 0.0 && cfg.t < 2.0)) throw DegenerateInput("two-circle center distance must be in (0, 2)");
  if (distance(cfg.a(), cfg.c2().center) < 1.0 - kTol) throw DomainError("A lies inside the second disc");
  if (distance(cfg.b(), cfg.c1().center) < 1.0 - kTol) throw DomainError("B lies inside the first disc");
}

/// Candidate lengths, indexed (P, Q) in {up, down}^2 as (up,up), (up,down),
/// (down,up), (down,down).
inline std::array<double, 4> twoCircleCandidates(const TwoCircleConfig& cfg) {
  checkTwoCircle(cfg);
  auto corners = circleCircleIntersections(cfg.c1(), cfg.c2());
  Point down = corners.front();
  Point up = corners.back();
  std::array<Point, 2> ps{up, down};
  std::array<double, 4> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[static_cast<std::size_t>(2 * i + j)] =
          shorterArc(cfg.c1(), cfg.a(), ps[static_cast<std::size_t>(i)]) +
          distance(ps[static_cast<std::size_t>(i)], ps[static_cast<std::size_t>(j)]) +
          shorterArc(cfg.c2(), ps[static_cast<std::size_t>(j)], cfg.b());
  return out;
}

struct TwoCircleResult {
  double length = 0.0;
  int choice = 1;  // 1..4, position in twoCircleCandidates
};

inline TwoCircleResult twoCircleShortest(const TwoCircleConfig& cfg) {
  auto cand = twoCircleCandidates(cfg);
  TwoCircleResult r{cand[0], 1};
  for (int k = 1; k < 4; ++k)
    if (cand[static_cast<std::size_t>(k)] < r.length) r = {cand[static_cast<std::size_t>(k)], k + 1};
  return r;
}

/// Whether the segment AB lies in the union of the two discs.
inline bool segmentCovered(const TwoCircleConfig& cfg) {
  Point a = cfg.a();
  Point b = cfg.b();
  Point u = b - a;
  double len2 = dot(u, u);
  if (len2 == 0.0) return true;
  // Parameter range of the line a + s u inside a unit disc centered at o.
  auto inside = [&](Point o) -> std::optional<std::pair<double, double>> {
    Point w = a - o;
    double bb = dot(w, u) / len2;
    double cc = (dot(w, w) - 1.0) / len2;
    double disc = bb * bb - cc;
    if (disc < 0.0) return std::nullopt;
    double root = std::sqrt(disc);
    return std::pair{-bb - root, -bb + root};
  };
  auto r1 = inside(cfg.c1().center);
  auto r2 = inside(cfg.c2().center);
  if (!r1 || !r2) return false;
  return r1->second >= r2->first - 1e-12;
}

/// |gamma| / |AB| for admissible configurations; nullopt otherwise.
inline std::optional<double> twoCircleRatio(const TwoCircleConfig& cfg) {
  if (!(cfg.t > 0.0 && cfg.t < 2.0)) return std::nullopt;
  if (distance(cfg.a(), cfg.c2().center) < 1.0 || distance(cfg.b(), cfg.c1().center) < 1.0)
    return std::nullopt;
  if (!segmentCovered(cfg)) return std::nullopt;
  double d = distance(cfg.a(), cfg.b());
  if (d < 1e-9) return std::nullopt;
  return twoCircleShortest(cfg).length / d;
}

struct TwoCircleWorst {
  TwoCircleConfig cfg;
  double ratio = 0.0;
  long evaluations = 0;
};

namespace detail {

struct SimplexState {
  long* evaluations;
};

inline double negRatio(const gsl_vector* x, void* params) {
  auto* st = static_cast<SimplexState*>(params);
  ++*st->evaluations;
  auto r = twoCircleRatio({gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2)});
  return r ? -*r : 1.0;
}

/// Nelder-Mead from `start`, restarted until a restart no longer improves.
inline TwoCircleConfig simplexRefine(const TwoCircleConfig& start, double size, long& evaluations) {
  SimplexState st{&evaluations};
  gsl_multimin_function fn{&negRatio, 3, &st};
  gsl_vector* x = gsl_vector_alloc(3);
  gsl_vector* step = gsl_vector_alloc(3);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  TwoCircleConfig best = start;
  auto r0 = twoCircleRatio(start);
  double fBest = r0 ? -*r0 : 1.0;
  for (int restart = 0; restart < 8; ++restart) {
    gsl_vector_set(x, 0, best.t);
    gsl_vector_set(x, 1, best.thetaA);
    gsl_vector_set(x, 2, best.thetaB);
    gsl_vector_set_all(step, size);
    gsl_multimin_fminimizer_set(m, &fn, x, step);
    for (int it = 0; it < 5000; ++it) {
      if (gsl_multimin_fminimizer_iterate(m)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-13) == GSL_SUCCESS) break;
    }
    const gsl_vector* xm = gsl_multimin_fminimizer_x(m);
    double f = gsl_multimin_fminimizer_minimum(m);
    bool improved = f < fBest - 1e-15;
    if (f < fBest) {
      fBest = f;
      best = {gsl_vector_get(xm, 0), gsl_vector_get(xm, 1), gsl_vector_get(xm, 2)};
    }
    if (!improved) break;
    size *= 0.5;
  }
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return best;
}

}  // namespace detail

/// Coarse grid over (t, thetaA, thetaB); the best `starts` grid nodes seed
/// Nelder-Mead runs. The ratio is the maximum of a minimum of four smooth
/// candidates, so the optimum sits on a kink where two candidates tie.
inline TwoCircleWorst twoCircleWorstRatio(double coarseStep = 0.05, int starts = 8) {
  if (!(coarseStep > 0.0 && coarseStep < 1.0)) throw DomainError("twoCircleWorstRatio: bad coarse step");
  if (starts < 1) throw DomainError("twoCircleWorstRatio: need at least one start");
  TwoCircleWorst best;
  const long nt = static_cast<long>(std::floor(2.0 / coarseStep));
  const long nth = static_cast<long>(std::floor(kTwoPi / coarseStep));
  std::vector<std::pair<double, TwoCircleConfig>> top;
  for (long i = 1; i < nt; ++i) {
    for (long ja = 0; ja < nth; ++ja) {
      for (long jb = 0; jb < nth; ++jb) {
        TwoCircleConfig c{static_cast<double>(i) * coarseStep, -kPi + static_cast<double>(ja) * coarseStep,
                          -kPi + static_cast<double>(jb) * coarseStep};
        ++best.evaluations;
        auto r = twoCircleRatio(c);
        if (!r) continue;
        if (static_cast<int>(top.size()) < starts || *r > top.back().first) {
          top.push_back({*r, c});
          std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
          if (static_cast<int>(top.size()) > starts) top.pop_back();
        }
      }
    }
  }
  if (top.empty()) throw DomainError("twoCircleWorstRatio: no admissible grid node");
  best.ratio = top.front().first;
  best.cfg = top.front().second;
  for (const auto& [r0, c0] : top) {
    TwoCircleConfig c = detail::simplexRefine(c0, coarseStep, best.evaluations);
    auto r = twoCircleRatio(c);
    if (r && *r > best.ratio) {
      best.ratio = *r;
      best.cfg = c;
    }
  }
  best.cfg.thetaA = normalizeAngle(best.cfg.thetaA);
  best.cfg.thetaB = normalizeAngle(best.cfg.thetaB);
  return best;
}

}  // namespace dcpath
