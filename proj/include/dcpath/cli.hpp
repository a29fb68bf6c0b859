#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/dcpath.cpp is a two-line wrapper.
//
// Exit codes: 0 ok, 1 usage error, 2 generation or covering failure,
// 3 endpoint not doubly covered, 4 segment uncovered, 5 path verification failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dcpath/bounds.hpp"
#include "dcpath/covering.hpp"
#include "dcpath/errors.hpp"
#include "dcpath/io.hpp"
#include "dcpath/oracle.hpp"
#include "dcpath/pipeline.hpp"
#include "dcpath/svg.hpp"

namespace dcpath {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitCovering = 2,
  kExitEndpoint = 3,
  kExitUncovered = 4,
  kExitVerify = 5,
};

namespace cli {

inline BBox boxFrom(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }
inline Point pointFrom(const std::vector<double>& v) { return {v[0], v[1]}; }

/// Writes to `file` when given, to `out` otherwise.
inline void emit(const std::string& file, const std::string& text, std::ostream& out) {
  if (file.empty())
    out << text;
  else
    writeTextFile(file, text);
}

inline std::string dumpJson(const json& j) { return j.dump(2) + "\n"; }

inline void positive(CLI::Option* opt) { opt->check(CLI::PositiveNumber); }

}  // namespace cli

inline int runCli(int argc, const char* const* argv, std::ostream& out = std::cout,
                  std::ostream& err = std::cerr) {
  CLI::App app{"Short paths through the doubly covered region of a unit-disc covering"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all");

  int code = kExitOk;

  // gen ----------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a covering and verify it");
  gen->require_subcommand(1);
  struct GenArgs {
    double spacing = std::sqrt(2.0);
    double jitter = 0.1;
    std::uint64_t seed = 0;
    std::vector<double> bbox{0.0, 0.0, 40.0, 40.0};
    double step = kGenVerifyStep;
    std::string output;
  } ga;
  auto addCommon = [&](CLI::App* s) {
    s->add_option("--bbox", ga.bbox, "xmin ymin xmax ymax")->expected(4);
    cli::positive(s->add_option("--step", ga.step, "verification sample pitch"));
    s->add_option("-o,--output", ga.output, "covering JSON file (stdout if omitted)");
  };
  auto* genLattice = gen->add_subcommand("lattice", "Square lattice anchored at the origin");
  cli::positive(genLattice->add_option("--spacing", ga.spacing, "lattice pitch"));
  addCommon(genLattice);
  auto* genPerturbed = gen->add_subcommand("perturbed", "Square lattice with random jitter");
  cli::positive(genPerturbed->add_option("--spacing", ga.spacing, "lattice pitch"));
  genPerturbed->add_option("--jitter", ga.jitter, "jitter radius")->check(CLI::NonNegativeNumber);
  genPerturbed->add_option("--seed", ga.seed, "random seed");
  addCommon(genPerturbed);
  auto* genRandom = gen->add_subcommand("random", "Irregular covering from a row scan");
  genRandom->add_option("--seed", ga.seed, "random seed");
  addCommon(genRandom);

  auto runGen = [&](const std::string& kind) {
    BBox box = cli::boxFrom(ga.bbox);
    if (!box.valid()) throw CLI::ValidationError("--bbox", "xmin <= xmax and ymin <= ymax required");
    try {
      std::optional<Covering> cov;
      CoverageReport report;
      json meta{{"kind", kind}};
      if (kind == "lattice") {
        cov = genSquareLattice(ga.spacing, box);
        report = verifyCovering(*cov, ga.step);
        meta["spacing"] = ga.spacing;
      } else if (kind == "perturbed") {
        GeneratedCovering g = genPerturbedLattice(ga.spacing, ga.jitter, ga.seed, box, ga.step);
        cov = std::move(g.covering);
        report = g.report;
        meta["spacing"] = ga.spacing;
        meta["jitter"] = g.jitter;
        meta["attempts"] = g.attempts;
        meta["seed"] = ga.seed;
      } else {
        GeneratedCovering g = genRandomCovering(ga.seed, box, ga.step);
        cov = std::move(g.covering);
        report = g.report;
        meta["seed"] = ga.seed;
      }
      meta["discs"] = cov->size();
      meta["verify"] = coverageToJson(report);
      if (!report.pass) {
        err << cli::dumpJson(meta);
        code = kExitCovering;
        return;
      }
      std::string text = coveringToJson(*cov).dump(1) + "\n";
      if (ga.output.empty()) {
        out << text;
        err << cli::dumpJson(meta);
      } else {
        writeTextFile(ga.output, text);
        out << cli::dumpJson(meta);
      }
    } catch (const GenerationFailed& e) {
      err << "generation failed: " << e.what() << "\n";
      code = kExitCovering;
    }
  };
  genLattice->callback([&] { runGen("lattice"); });
  genPerturbed->callback([&] { runGen("perturbed"); });
  genRandom->callback([&] { runGen("random"); });

  // path ---------------------------------------------------------------------
  auto* path = app.add_subcommand("path", "Build the path between two points and check it");
  std::string pathCovering;
  std::vector<double> from, to;
  std::string pathOutput;
  PathOptions popt;
  path->add_option("-c,--covering", pathCovering, "covering JSON")->required();
  path->add_option("--from", from, "A")->expected(2)->required();
  path->add_option("--to", to, "B")->expected(2)->required();
  path->add_option("-o,--output", pathOutput, "report JSON file (stdout if omitted)");
  cli::positive(path->add_option("--h", popt.normalize.oracleStep, "grid pitch for connectors"));
  cli::positive(path->add_option("--spacing", popt.verifySpacing, "verification sample spacing"));
  path->add_option("--tol", popt.verifyTol, "verification tolerance")->check(CLI::NonNegativeNumber);
  path->callback([&] {
    Covering c = loadCovering(pathCovering);
    popt.normalize.verifySpacing = popt.verifySpacing;
    popt.normalize.verifyTol = popt.verifyTol;
    try {
      PathReport r = constructPath(c, cli::pointFrom(from), cli::pointFrom(to), popt);
      cli::emit(pathOutput, cli::dumpJson(reportToJson(r)), out);
      if (!r.ok()) code = kExitVerify;
    } catch (const NotDoublyCovered& e) {
      err << "endpoint not doubly covered: " << e.what() << "\n";
      code = kExitEndpoint;
    } catch (const UncoveredGap& e) {
      err << "segment not covered near x = " << e.x() << " (frame coordinates): " << e.what() << "\n";
      code = kExitUncovered;
    } catch (const ConnectorNotFound& e) {
      err << "no doubly covered connector: " << e.what() << "\n";
      code = kExitVerify;
    }
  });

  // bounds -------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Maximize the per-piece ratio");
  double pitch = 1e-3;
  bounds->add_option("--pitch", pitch, "grid pitch")->check(CLI::Range(1e-6, 1e-2));
  bounds->callback([&] {
    RatioMaximum m = maximizeRatio(pitch);
    json j{{"constant", theoremConstant()},
           {"max_ratio", m.value},
           {"argmax", json::array({m.alpha, m.beta})},
           {"grid_max", m.gridValue},
           {"grid_argmax", json::array({m.gridAlpha, m.gridBeta})},
           {"pitch", pitch},
           {"evaluations", m.evaluations}};
    out << cli::dumpJson(j);
  });

  // worstpair ----------------------------------------------------------------
  auto* worst = app.add_subcommand("worstpair", "Worst configuration of two circles");
  double coarse = 0.05;
  worst->add_option("--coarse", coarse, "coarse grid step")->check(CLI::Range(1e-3, 0.5));
  worst->callback([&] {
    TwoCircleWorst w = twoCircleWorstRatio(coarse);
    TwoCircleResult s = twoCircleShortest(w.cfg);
    json j{{"ratio", w.ratio},
           {"exceeds_sqrt2", w.ratio > std::sqrt(2.0)},
           {"t", w.cfg.t},
           {"theta_a", w.cfg.thetaA},
           {"theta_b", w.cfg.thetaB},
           {"a", toJson(w.cfg.a())},
           {"b", toJson(w.cfg.b())},
           {"length", s.length},
           {"distance", distance(w.cfg.a(), w.cfg.b())},
           {"choice", s.choice},
           {"evaluations", w.evaluations}};
    out << cli::dumpJson(j);
  });

  // oracle -------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Grid shortest path in the doubly covered region");
  std::string oracleCovering, oracleOutput;
  std::vector<double> oFrom, oTo, oBox;
  double h = kOracleStep;
  double oracleMargin = 3.0;
  oracle->add_option("-c,--covering", oracleCovering, "covering JSON")->required();
  oracle->add_option("--from", oFrom, "A")->expected(2)->required();
  oracle->add_option("--to", oTo, "B")->expected(2)->required();
  cli::positive(oracle->add_option("--h", h, "grid pitch"));
  oracle->add_option("--bbox", oBox, "grid box (default: AB box plus margin, clipped)")->expected(4);
  oracle->add_option("--margin", oracleMargin, "margin around AB")->check(CLI::NonNegativeNumber);
  oracle->add_option("-o,--output", oracleOutput, "output JSON (stdout if omitted)");
  oracle->callback([&] {
    Covering c = loadCovering(oracleCovering);
    Point a = cli::pointFrom(oFrom);
    Point b = cli::pointFrom(oTo);
    BBox box;
    if (!oBox.empty()) {
      box = cli::boxFrom(oBox);
    } else {
      const BBox& cb = c.bbox();
      box = {std::max(std::min(a.x, b.x) - oracleMargin, cb.xmin), std::max(std::min(a.y, b.y) - oracleMargin, cb.ymin),
             std::min(std::max(a.x, b.x) + oracleMargin, cb.xmax), std::min(std::max(a.y, b.y) + oracleMargin, cb.ymax)};
    }
    try {
      GridGraph g = buildGrid(c, box, h);
      OraclePath p = shortestPath(g, a, b);
      json poly = json::array();
      for (const auto& q : p.polyline) poly.push_back(toJson(q));
      json j{{"length", p.length},
             {"h", h},
             {"bbox", json::array({box.xmin, box.ymin, box.xmax, box.ymax})},
             {"distance", distance(a, b)},
             {"ratio", p.length / distance(a, b)},
             {"polyline", poly}};
      cli::emit(oracleOutput, cli::dumpJson(j), out);
    } catch (const SnapFailed& e) {
      err << "snap failed: " << e.what() << "\n";
      code = kExitEndpoint;
    } catch (const EmptyGraph& e) {
      err << "empty graph: " << e.what() << "\n";
      code = kExitVerify;
    } catch (const Unreachable& e) {
      err << "unreachable: " << e.what() << "\n";
      code = kExitVerify;
    }
  });

  // verify -------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check a covering and optionally a path");
  std::string verifyCoveringFile, verifyPathFile;
  double verifyStep = 0.05;
  double verifyMargin = kBoxMargin;
  double verifySpacing = 0.01;
  double verifyTol = 1e-6;
  verify->add_option("-c,--covering", verifyCoveringFile, "covering JSON")->required();
  cli::positive(verify->add_option("--step", verifyStep, "covering sample pitch"));
  verify->add_option("--margin", verifyMargin, "box shrink before sampling")->check(CLI::NonNegativeNumber);
  verify->add_option("--path", verifyPathFile, "path JSON to check for double coverage");
  cli::positive(verify->add_option("--spacing", verifySpacing, "path sample spacing"));
  verify->add_option("--tol", verifyTol, "path tolerance")->check(CLI::NonNegativeNumber);
  verify->callback([&] {
    Covering c = loadCovering(verifyCoveringFile);
    CoverageReport rc = verifyCovering(c, verifyStep, verifyMargin);
    json j{{"covering", coverageToJson(rc)}};
    if (!rc.pass) code = kExitCovering;
    if (!verifyPathFile.empty()) {
      json pj = readJsonFile(verifyPathFile);
      PathCurve p = pathFromJson(pj);
      CoverageReport rp = verifyDoublyCoveredPath(c, p, verifySpacing, verifyTol);
      json pr = coverageToJson(rp);
      pr["length"] = pathLength(p);
      if (pj.contains("length")) pr["recorded_length"] = pj["length"];
      j["path"] = pr;
      if (!rp.pass && code == kExitOk) code = kExitVerify;
    }
    out << cli::dumpJson(j);
  });

  // render -------------------------------------------------------------------
  auto* render = app.add_subcommand("render", "Draw a covering and paths as SVG");
  std::string renderCovering, renderPath, renderOracle, renderOutput;
  RenderOptions ropt;
  render->add_option("-c,--covering", renderCovering, "covering JSON")->required();
  render->add_option("--path", renderPath, "path report or path JSON");
  render->add_option("--oracle", renderOracle, "oracle JSON");
  render->add_option("-o,--output", renderOutput, "SVG file (stdout if omitted)");
  render->add_option("--shade-pitch", ropt.shadePitch, "sample pitch of the shading (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cli::positive(render->add_option("--gamma-stroke", ropt.gammaStroke, "stroke width of the path"));
  cli::positive(render->add_option("--piece-stroke", ropt.pieceStroke, "stroke width of the comparison pieces"));
  cli::positive(render->add_option("--disc-stroke", ropt.discStroke, "stroke width of the discs"));
  render->add_option("--gamma-color", ropt.gammaColor, "color of the path");
  render->add_option("--piece-color", ropt.pieceColor, "color of the comparison pieces");
  render->add_option("--oracle-color", ropt.oracleColor, "color of the oracle polyline");
  render->callback([&] {
    Covering c = loadCovering(renderCovering);
    RenderScene scene;
    if (!renderPath.empty()) {
      json pj = readJsonFile(renderPath);
      scene.gamma = pathFromJson(pj);
      if (pj.contains("gamma_pieces"))
        for (const auto& gp : pj["gamma_pieces"]) scene.gammaPieces.push_back(pathFromJson(gp));
      if (pj.contains("chain"))
        for (const auto& m : pj["chain"]["milestones"]) scene.milestones.push_back(pointFromJson(m));
      if (pj.contains("endpoints"))
        scene.line = Segment{pointFromJson(pj["endpoints"]["a_prime"]), pointFromJson(pj["endpoints"]["b_prime"])};
    }
    if (!renderOracle.empty()) {
      json oj = readJsonFile(renderOracle);
      for (const auto& q : oj.at("polyline")) scene.oracle.push_back(pointFromJson(q));
    }
    cli::emit(renderOutput, renderSvg(c, scene, ropt), out);
  });

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidCovering& e) {
    err << "invalid covering: " << e.what() << "\n";
    return kExitCovering;
  } catch (const StructuralError& e) {
    err << "invalid path: " << e.what() << "\n";
    return kExitVerify;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "bad JSON: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

}  // namespace dcpath
