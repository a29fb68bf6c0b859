#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcpath/pathgen.hpp"
#include "dcpath/subcover.hpp"

using namespace dcpath;

namespace {

Covering onLine(std::vector<Point> centers) { return Covering(std::move(centers), {-1, -1, 5, 1}); }

std::vector<ChordInterval> intervals(std::initializer_list<std::pair<double, double>> spans) {
  std::vector<ChordInterval> out;
  int k = 0;
  for (auto [a, b] : spans) out.push_back({k++, a, b});
  return out;
}

}  // namespace

TEST(Chords, FourDiscsOnTheLine) {
  auto iv = chordsOnSegment(onLine({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), 0.0, 0.0, 3.0);
  ASSERT_EQ(iv.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(iv[i].a, i - 1.0);
    EXPECT_DOUBLE_EQ(iv[i].b, i + 1.0);
  }
}

TEST(Chords, MissingAndTangentDiscsExcluded) {
  Covering c({{5, 0.6}, {1, 1}, {1, -1}, {1.5, 0}}, {0, -1, 5, 1});
  auto iv = chordsOnSegment(c, 0.0, 0.0, 3.0);
  ASSERT_EQ(iv.size(), 1u);
  EXPECT_EQ(iv[0].discIndex, 3);
  EXPECT_THROW(chordsOnSegment(c, 0.0, 3.0, 3.0), DomainError);
}

TEST(Greedy, PicksFurthestReach) {
  auto chosen = greedyMinimalSubcover(intervals({{-1, 1}, {0, 2}, {1, 3}, {2, 4}}), 0, 3);
  ASSERT_EQ(chosen.size(), 2u);
  EXPECT_EQ(chosen[0].b, 2);
  EXPECT_EQ(chosen[1].b, 4);
  EXPECT_EQ(bruteForceMinCoverSize(intervals({{-1, 1}, {0, 2}, {1, 3}, {2, 4}}), 0, 3), 2);
}

TEST(Greedy, SingleInterval) {
  auto chosen = greedyMinimalSubcover(intervals({{-1, 1}}), -0.5, 0.5);
  ASSERT_EQ(chosen.size(), 1u);
}

TEST(Greedy, GapIsReported) {
  try {
    greedyMinimalSubcover(intervals({{0, 1}, {1.5, 2}}), 0, 2);
    FAIL() << "expected UncoveredGap";
  } catch (const UncoveredGap& e) {
    EXPECT_DOUBLE_EQ(e.x(), 1.0);
  }
}

TEST(Greedy, TieBreaksOnDiscIndex) {
  std::vector<ChordInterval> iv{{7, 0, 2}, {3, -1, 2}};
  EXPECT_EQ(greedyMinimalSubcover(iv, 0, 1.5).front().discIndex, 3);
}

TEST(Greedy, MatchesBruteForceMinimum) {
  std::mt19937_64 rng(42);
  int covered = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    std::vector<ChordInterval> iv;
    for (int k = 0; k < n; ++k) {
      double c = 6 * uniform01(rng);
      double half = 0.5 + uniform01(rng);
      iv.push_back({k, c - half, c + half});
    }
    int best = bruteForceMinCoverSize(iv, 0.5, 5.5);
    try {
      auto g = greedyMinimalSubcover(iv, 0.5, 5.5);
      ++covered;
      EXPECT_EQ(static_cast<int>(g.size()), best);
      for (std::size_t i = 0; i + 2 < g.size(); ++i) EXPECT_GT(g[i + 2].a, g[i].b);
    } catch (const UncoveredGap&) {
      EXPECT_EQ(best, -1);
    }
  }
  EXPECT_GT(covered, 50);
}

TEST(Chain, FourDiscMilestones) {
  SubcoverChain ch = buildChain(onLine({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), 0.0, 0.0, 4.0);
  ASSERT_EQ(ch.size(), 2u);
  EXPECT_EQ(ch.milestones, (std::vector<double>{0, 2, 4}));
  EXPECT_TRUE(chainViolations(ch).empty());
}

TEST(Chain, OneDisc) {
  SubcoverChain ch = buildChain(onLine({{1, 0}}), 0.0, 0.0, 2.0);
  ASSERT_EQ(ch.size(), 1u);
  EXPECT_EQ(ch.milestones, (std::vector<double>{0, 2}));
  EXPECT_EQ(ch.sides[0], Side::Above);
}

TEST(Chain, SidesExcludeTheCenter) {
  SubcoverChain ch = buildChain(Covering({{0, -0.2}, {1.2, 0.3}}, {-1, -1, 2, 1}), 0.0, -0.5, 1.8);
  ASSERT_EQ(ch.size(), 2u);
  EXPECT_EQ(ch.sides, (std::vector<Side>{Side::Above, Side::Below}));
}

TEST(Chain, CenterOnLineCountsAsAbove) {
  EXPECT_EQ(minorSide({{0, 1e-13}, 1}, 0.0), Side::Above);
  EXPECT_EQ(minorSide({{0, 1e-6}, 1}, 0.0), Side::Below);
}

// Endpoints are moved out to chord ends first; the half-chord spacing of the
// outer milestones depends on it.
TEST(Chain, InvariantsOnGeneratedCoverings) {
  std::mt19937_64 rng(7);
  int chains = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    BBox box{0, 0, 16, 16};
    Covering c = seed % 3 == 0 ? genRandomCovering(seed, box).covering
                               : genPerturbedLattice(1.1 + 0.25 * uniform01(rng), 0.12, seed, box).covering;
    BBox inner = box.shrunk(kBoxMargin + 1);
    auto draw = [&] {
      for (;;) {
        Point p{inner.xmin + inner.width() * uniform01(rng), inner.ymin + inner.height() * uniform01(rng)};
        if (c.coverageCount(p) >= 2) return p;
      }
    };
    Point a = draw();
    Point b = draw();
    if (distance(a, b) < 1) continue;
    NormalizedEndpoints ends = normalizeEndpoints(c, a, b);
    Covering local = transformCovering(c, ends.frame.toLocal);
    SubcoverChain ch = buildChain(local, 0.0, ends.xA, ends.xB);
    ++chains;
    auto bad = chainViolations(ch);
    EXPECT_TRUE(bad.empty()) << "seed " << seed << ": " << bad.front();
    double total = 0;
    for (std::size_t i = 1; i < ch.milestones.size(); ++i) total += ch.milestones[i] - ch.milestones[i - 1];
    EXPECT_NEAR(total, ch.xB - ch.xA, 1e-12);
  }
  EXPECT_GE(chains, 100);
}

TEST(Chain, StrongSpacingIsCountedNotEnforced) {
  // Three unit discs with a shallow overlap: the middle span is shorter than
  // the chord but at least half of it.
  SubcoverChain ch = buildChain(onLine({{1, 0}, {2.8, 0}, {4.6, 0}}), 0.0, 0.0, 5.6);
  EXPECT_TRUE(chainViolations(ch).empty());
  EXPECT_GT(strongSpacingViolations(ch), 0);
}

TEST(Chain, ViolationsAreDetected) {
  SubcoverChain ch = buildChain(onLine({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), 0.0, 0.0, 4.0);
  SubcoverChain broken = ch;
  broken.milestones[1] = broken.milestones[0];
  EXPECT_FALSE(chainViolations(broken).empty());
  broken = ch;
  broken.chords[1].a = 2.5;
  EXPECT_FALSE(chainViolations(broken).empty());
}
