#pragma once

// Chord intervals of discs on a horizontal line, the greedy minimum cover of
// a segment, and the ordered chain of milestones built from it.

#include <algorithm>
#include <string>
#include <vector>

#include "dcpath/covering.hpp"
#include "dcpath/errors.hpp"
#include "dcpath/geom.hpp"

namespace dcpath {

/// Chord [a, b] cut by a disc on the line; a < b.
struct ChordInterval {
  int discIndex = -1;
  double a = 0.0;
  double b = 0.0;

  double center() const { return 0.5 * (a + b); }
  double length() const { return b - a; }
};

/// Side of the line holding the part of a disc that excludes its center.
enum class Side { Above, Below };

inline const char* toString(Side s) { return s == Side::Above ? "above" : "below"; }

struct SubcoverChain {
  double lineY = 0.0;
  double xA = 0.0;
  double xB = 0.0;
  std::vector<ChordInterval> chords;  // C_1 .. C_n
  std::vector<Disc> discs;            // disc of each chord
  std::vector<double> milestones;     // M_0 .. M_n
  std::vector<Side> sides;            // side of C_i' for each chord

  std::size_t size() const { return chords.size(); }
};

/// All discs whose open chord on y = y0 meets [xA, xB], by disc index.
/// Tangent discs are skipped.
inline std::vector<ChordInterval> chordsOnSegment(const Covering& c, double y0, double xA,
                                                  double xB) {
  if (!(xA < xB)) throw DomainError("chordsOnSegment: need xA < xB");
  std::vector<ChordInterval> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto pts = circleHorizontalLineIntersections(c.disc(i), y0);
    if (pts.size() != 2) continue;
    double a = pts[0].x;
    double b = pts[1].x;
    if (a < xB && b > xA) out.push_back({static_cast<int>(i), a, b});
  }
  return out;
}

/// Furthest-reach greedy cover of [xA, xB]. Returns the chosen intervals in
/// order of increasing reach.
inline std::vector<ChordInterval> greedyMinimalSubcover(const std::vector<ChordInterval>& intervals,
                                                        double xA, double xB, double tol = kTol) {
  std::vector<ChordInterval> chosen;
  double x = xA;
  do {
    const ChordInterval* best = nullptr;
    for (const auto& iv : intervals) {
      if (iv.a > x + tol || iv.b <= x) continue;
      if (!best || iv.b > best->b || (iv.b == best->b && iv.discIndex < best->discIndex)) best = &iv;
    }
    if (!best) throw UncoveredGap(x);
    chosen.push_back(*best);
    x = best->b;
  } while (x < xB - tol);
  return chosen;
}

/// Brute-force minimum cover size by subset enumeration (tests and audits;
/// exponential in the number of intervals).
inline int bruteForceMinCoverSize(const std::vector<ChordInterval>& intervals, double xA, double xB,
                                  double tol = kTol) {
  const std::size_t n = intervals.size();
  if (n > 20) throw DomainError("bruteForceMinCoverSize: too many intervals");
  int best = -1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int bits = __builtin_popcount(mask);
    if (best != -1 && bits >= best) continue;
    std::vector<ChordInterval> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(intervals[i]);
    std::sort(sub.begin(), sub.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    double reach = xA;
    for (const auto& iv : sub) {
      if (iv.a > reach + tol) break;
      reach = std::max(reach, iv.b);
    }
    if (reach >= xB - tol) best = bits;
  }
  return best;
}

inline Side minorSide(const Disc& d, double y0) {
  double dy = d.center.y - y0;
  if (std::abs(dy) <= 1e-12 || dy < 0.0) return Side::Above;
  return Side::Below;
}

/// Builds the ordered minimal subcover of [xA, xB] on y = y0, its milestones
/// and sides. Chords sticking out past either end are dropped first when the
/// remaining pool still covers the segment, so that A_1 = xA and B_n = xB when
/// the endpoints are chord endpoints.
inline SubcoverChain buildChain(const Covering& c, double y0, double xA, double xB,
                                double tol = kTol) {
  auto pool = chordsOnSegment(c, y0, xA, xB);
  std::vector<ChordInterval> anchored;
  for (const auto& iv : pool)
    if (iv.a >= xA - tol && iv.b <= xB + tol) anchored.push_back(iv);

  std::vector<ChordInterval> chords;
  try {
    chords = greedyMinimalSubcover(anchored, xA, xB, tol);
  } catch (const UncoveredGap&) {
    chords = greedyMinimalSubcover(pool, xA, xB, tol);
  }

  SubcoverChain chain;
  chain.lineY = y0;
  chain.xA = xA;
  chain.xB = xB;
  chain.chords = chords;
  const std::size_t n = chords.size();
  chain.milestones.resize(n + 1);
  chain.milestones.front() = xA;
  chain.milestones.back() = xB;
  for (std::size_t i = 1; i < n; ++i)
    chain.milestones[i] = 0.5 * (chords[i].a + chords[i - 1].b);
  for (const auto& iv : chords) {
    Disc d = c.disc(static_cast<std::size_t>(iv.discIndex));
    chain.discs.push_back(d);
    chain.sides.push_back(minorSide(d, y0));
  }
  return chain;
}

/// Lists every violated chain invariant; empty when the chain is valid.
inline std::vector<std::string> chainViolations(const SubcoverChain& ch, double tol = kTol) {
  std::vector<std::string> bad;
  const std::size_t n = ch.chords.size();
  auto say = [&](std::string s, std::size_t i) { bad.push_back(s + " at " + std::to_string(i)); };
  if (n == 0) {
    bad.emplace_back("empty chain");
    return bad;
  }
  if (ch.milestones.size() != n + 1 || ch.sides.size() != n || ch.discs.size() != n) {
    bad.emplace_back("size mismatch");
    return bad;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = ch.chords[i];
    if (!(c.a < c.b)) say("a >= b", i);
    if (i + 1 < n) {
      if (!(ch.discs[i].center.x < ch.discs[i + 1].center.x ||
            (ch.discs[i].center.x == ch.discs[i + 1].center.x &&
             c.discIndex < ch.chords[i + 1].discIndex)))
        say("centers not ordered", i);
      if (ch.chords[i + 1].a > c.b + tol) say("consecutive chords do not overlap", i);
    }
    if (i + 2 < n && !(ch.chords[i + 2].a > c.b)) say("not minimal", i);
  }
  if (ch.chords.front().a > ch.xA + tol) bad.emplace_back("chain starts after xA");
  if (ch.chords.back().b < ch.xB - tol) bad.emplace_back("chain ends before xB");
  if (ch.milestones.front() != ch.xA || ch.milestones.back() != ch.xB)
    bad.emplace_back("end milestones differ from xA/xB");
  for (std::size_t i = 1; i <= n; ++i) {
    double span = ch.milestones[i] - ch.milestones[i - 1];
    if (!(span > 0.0)) say("milestones not increasing", i);
    if (span < 0.5 * ch.chords[i - 1].length() - tol) say("milestone spacing below half chord", i);
  }
  return bad;
}

/// Pieces where the milestone span is shorter than the full chord length.
inline int strongSpacingViolations(const SubcoverChain& ch, double tol = kTol) {
  int count = 0;
  for (std::size_t i = 1; i < ch.milestones.size(); ++i)
    if (ch.milestones[i] - ch.milestones[i - 1] < ch.chords[i - 1].length() - tol) ++count;
  return count;
}

}  // namespace dcpath
