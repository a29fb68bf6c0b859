#pragma once

// End-to-end construction for a pair of endpoints: normalize, build the
// chain, the path and its comparison pieces, and run every check.

#include <string>
#include <vector>

#include "dcpath/bounds.hpp"
#include "dcpath/covering.hpp"
#include "dcpath/pathgen.hpp"
#include "dcpath/subcover.hpp"

namespace dcpath {

struct PathOptions {
  NormalizeOptions normalize;
  double verifySpacing = 0.01;
  double verifyTol = 1e-6;
  double checkTol = 1e-9;
};

struct PathReport {
  NormalizedEndpoints ends;
  SubcoverChain chain;  // frame coordinates
  std::vector<Run> runs;
  PathCurve gammaLocal;
  PathCurve gamma;  // world coordinates, A' to B'
  std::vector<GammaPiece> pieces;  // frame coordinates
  std::vector<NormalizedBound> pieceBounds;

  double gammaLength = 0.0;
  double piecesLength = 0.0;
  double normalizedDistance = 0.0;  // |A'B'|
  CoverageReport gammaCoverage;
  CoverageReport connectorCoverage;
  std::vector<std::string> chainProblems;
  int strongSpacingViolations = 0;

  bool lemmaOk = true;
  bool dominationOk = true;
  bool globalBoundOk = true;
  bool coverageOk = true;

  bool ok() const {
    return lemmaOk && dominationOk && globalBoundOk && coverageOk && chainProblems.empty();
  }
  double ratio() const { return gammaLength / normalizedDistance; }
  double totalLength() const {
    return gammaLength + ends.connectorA.length + ends.connectorB.length;
  }
  /// Connector A, then the path, then connector B.
  PathCurve fullPath() const {
    PathCurve full = ends.connectorA.path;
    full.append(gamma);
    full.append(ends.connectorB.path);
    return full;
  }
};

/// Throws NotDoublyCovered, UncoveredGap or ConnectorNotFound when the
/// construction cannot start; every other failure is reported in the flags.
inline PathReport constructPath(const Covering& c, Point a, Point b, const PathOptions& opt = {}) {
  PathReport r;
  r.ends = normalizeEndpoints(c, a, b, opt.normalize);
  Covering local = transformCovering(c, r.ends.frame.toLocal);
  r.chain = buildChain(local, 0.0, r.ends.xA, r.ends.xB);
  r.chainProblems = chainViolations(r.chain);
  r.strongSpacingViolations = strongSpacingViolations(r.chain);

  GammaResult g = buildGamma(r.chain);
  r.runs = g.runs;
  r.gammaLocal = g.gamma;
  r.gamma = r.ends.frame.toWorld.apply(g.gamma);
  r.gammaLength = pathLength(r.gammaLocal);
  r.normalizedDistance = r.ends.xB - r.ends.xA;

  const double cst = theoremConstant();
  r.pieces = buildGammaPieces(r.chain);
  for (const auto& p : r.pieces) {
    double len = p.length();
    r.piecesLength += len;
    NormalizedBound nb = normalizedGammaPieceBound(p, p.span);
    r.pieceBounds.push_back(nb);
    if (!nb.ok || len > cst * p.span + opt.checkTol) r.lemmaOk = false;
  }
  r.dominationOk = r.gammaLength <= r.piecesLength + opt.checkTol;
  r.globalBoundOk = r.gammaLength <= cst * r.normalizedDistance + opt.checkTol;

  r.gammaCoverage = verifyDoublyCoveredPath(c, r.gamma, opt.verifySpacing, opt.verifyTol);
  PathCurve connectors = r.ends.connectorA.path;
  connectors.append(r.ends.connectorB.path);
  r.connectorCoverage = verifyDoublyCoveredPath(c, connectors, opt.verifySpacing, opt.verifyTol);
  r.coverageOk = r.gammaCoverage.pass && r.connectorCoverage.pass;
  return r;
}

}  // namespace dcpath
