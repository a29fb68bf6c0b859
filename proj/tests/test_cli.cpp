#include <gtest/gtest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcpath/cli.hpp"

using namespace dcpath;
namespace fs = std::filesystem;

namespace {

const double kRoot2 = std::sqrt(2.0);

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dcpath");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = runCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::size_t countOf(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) ++n;
  return n;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("dcpath_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string file(const std::string& name) { return (dir_ / name).string(); }

  static std::string criticalLattice() {
    std::string f = file("critical.json");
    if (!fs::exists(f)) {
      Result r = run({"gen", "lattice", "--spacing", "1.4142135623730951", "--bbox", "0", "0", "40", "40", "-o", f});
      EXPECT_EQ(r.code, 0) << r.err;
    }
    return f;
  }

  static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, GenCriticalLatticePasses) {
  Result r = run({"gen", "lattice", "--spacing", "1.41421356", "--bbox", "0", "0", "40", "40", "-o", file("g.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json meta = json::parse(r.out);
  EXPECT_TRUE(meta["verify"]["pass"].get<bool>());
  Covering c = loadCovering(file("g.json"));
  EXPECT_EQ(static_cast<std::size_t>(meta["discs"].get<int>()), c.size());
}

TEST_F(Cli, GenSparseLatticeNamesAWitness) {
  Result r = run({"gen", "lattice", "--spacing", "1.5", "-o", file("sparse.json")});
  EXPECT_EQ(r.code, 2);
  json meta = json::parse(r.err);
  EXPECT_FALSE(meta["verify"]["pass"].get<bool>());
  EXPECT_EQ(meta["verify"]["min_count"], 0);
  EXPECT_TRUE(meta["verify"]["worst_point"].is_array());
  EXPECT_FALSE(fs::exists(file("sparse.json")));
}

TEST_F(Cli, GenPerturbedIsDeterministic) {
  for (const char* name : {"p1.json", "p2.json"})
    ASSERT_EQ(run({"gen", "perturbed", "--seed", "7", "--spacing", "1.2", "--bbox", "0", "0", "12", "12", "-o", file(name)})
                  .code,
              0);
  EXPECT_EQ(slurp(file("p1.json")), slurp(file("p2.json")));
  Result a = run({"gen", "perturbed", "--seed", "7", "--spacing", "1.2", "--bbox", "0", "0", "12", "12"});
  EXPECT_EQ(a.out, slurp(file("p1.json")));
  Result b = run({"gen", "perturbed", "--seed", "8", "--spacing", "1.2", "--bbox", "0", "0", "12", "12"});
  EXPECT_NE(a.out, b.out);
}

TEST_F(Cli, GenRandom) {
  Result r = run({"gen", "random", "--seed", "3", "--bbox", "0", "0", "10", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(coveringFromJson(json::parse(r.out)).size(), 10u);
}

// One unit disc listed twice: its interior is doubly covered and the
// diameter is a single chord.
TEST_F(Cli, PathOnADoubledDisc) {
  saveCovering(file("disc.json"), Covering({{0, 0}, {0, 0}}, {-1, -1, 1, 1}));
  Result r = run({"path", "-c", file("disc.json"), "--from", "-1", "0", "--to", "1", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_NEAR(j["length"].get<double>(), kPi, 1e-9);
  EXPECT_NEAR(j["checks"]["ratio"].get<double>(), kPi / 2, 1e-9);
  EXPECT_EQ(j["chain"]["chords"].size(), 1u);
}

TEST_F(Cli, PathOnTheCriticalLattice) {
  std::string cov = criticalLattice();
  std::string a = num(kRoot2 * 6.5), b = num(kRoot2 * 20.5);
  Result r = run({"path", "-c", cov, "--from", a, a, "--to", b, b, "-o", file("crit_path.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = readJsonFile(file("crit_path.json"));
  EXPECT_TRUE(j["checks"]["ok"].get<bool>());
  for (const auto& p : j["gamma_pieces"]) EXPECT_TRUE(p["ok"].get<bool>());
  double d = j["endpoints"]["normalized_distance"].get<double>();
  EXPECT_LE(j["length"].get<double>(), 2.7793 * d + 1e-6);
  EXPECT_TRUE(j["coverage"]["gamma"]["pass"].get<bool>());
}

TEST_F(Cli, PathExitCodes) {
  std::string cov = criticalLattice();
  std::string lp = num(kRoot2 * 10), cc = num(kRoot2 * 12.5);
  EXPECT_EQ(run({"path", "-c", cov, "--from", cc, cc, "--to", lp, lp}).code, 3);
  EXPECT_EQ(run({"path", "-c", cov, "--from", cc, cc, "--to", "100", "100"}).code, 3);

  // Two clusters with nothing in between; the outer discs keep the chord
  // ends doubly covered so that the gap is what stops the construction.
  saveCovering(file("gap.json"),
               Covering({{-1.4, 0}, {0, 0}, {0.5, 0}, {5, 0}, {5.5, 0}, {6.9, 0}}, {-2.4, -1, 7.9, 1}));
  Result gap = run({"path", "-c", file("gap.json"), "--from", "0.25", "0", "--to", "5.25", "0"});
  EXPECT_EQ(gap.code, 4) << gap.err;
}

TEST_F(Cli, PathJsonRoundTrips) {
  std::string cov = criticalLattice();
  std::string a = num(kRoot2 * 3.5), b = num(kRoot2 * 9.5);
  ASSERT_EQ(run({"path", "-c", cov, "--from", a, b, "--to", b, a, "-o", file("rt.json")}).code, 0);
  json j = readJsonFile(file("rt.json"));
  EXPECT_NEAR(pathLength(pathFromJson(j)), j["length"].get<double>(), 1e-9);
  for (const auto& p : j["gamma_pieces"]) EXPECT_NEAR(pathLength(pathFromJson(p)), p["length"].get<double>(), 1e-9);

  Result v = run({"verify", "-c", cov, "--path", file("rt.json")});
  ASSERT_EQ(v.code, 0) << v.out << v.err;
  json vj = json::parse(v.out);
  EXPECT_NEAR(vj["path"]["length"].get<double>(), vj["path"]["recorded_length"].get<double>(), 1e-9);
}

TEST_F(Cli, Bounds) {
  Result r = run({"bounds"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_NEAR(j["constant"].get<double>(), 2.7792483588, 1e-9);
  EXPECT_NEAR(j["max_ratio"].get<double>(), j["constant"].get<double>(), 1e-6);
  EXPECT_NEAR(j["argmax"][0].get<double>(), 1.0471975512, 1e-4);
  EXPECT_NEAR(j["argmax"][1].get<double>(), 1.0471975512, 1e-4);
  EXPECT_EQ(run({"bounds", "--pitch", "0.5"}).code, 1);
}

TEST_F(Cli, Worstpair) {
  Result r = run({"worstpair"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_NEAR(j["ratio"].get<double>(), 1.58003, 2e-3);
  EXPECT_TRUE(j["exceeds_sqrt2"].get<bool>());
  EXPECT_NEAR(j["length"].get<double>() / j["distance"].get<double>(), j["ratio"].get<double>(), 1e-12);
}

TEST_F(Cli, Oracle) {
  std::string cov = criticalLattice();
  std::string a = num(kRoot2 * 6.5), b = num(kRoot2 * 12.5);
  Result r = run({"oracle", "-c", cov, "--from", a, a, "--to", b, b, "-o", file("oracle.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = readJsonFile(file("oracle.json"));
  EXPECT_GE(j["length"].get<double>(), j["distance"].get<double>());
  EXPECT_LT(j["ratio"].get<double>(), 1.6);
  EXPECT_GE(j["polyline"].size(), 2u);

  std::string lp = num(kRoot2 * 10);
  EXPECT_EQ(run({"oracle", "-c", cov, "--from", a, a, "--to", lp, lp}).code, 3);
}

TEST_F(Cli, Verify) {
  std::string cov = criticalLattice();
  Result ok = run({"verify", "-c", cov});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(json::parse(ok.out)["covering"]["pass"].get<bool>());

  saveCovering(file("sparse_v.json"), genSquareLattice(1.5, {0, 0, 20, 20}));
  EXPECT_EQ(run({"verify", "-c", file("sparse_v.json")}).code, 2);

  // Straight through a lattice point, which only its own disc covers.
  PathCurve bad;
  bad.append(Segment{{kRoot2 * 9.5, kRoot2 * 9.5}, {kRoot2 * 10.5, kRoot2 * 10.5}});
  writeTextFile(file("bad_path.json"), pathToJson(bad).dump());
  Result v = run({"verify", "-c", cov, "--path", file("bad_path.json")});
  EXPECT_EQ(v.code, 5);
  EXPECT_EQ(json::parse(v.out)["path"]["min_count"], 1);
}

TEST_F(Cli, RenderSingleDisc) {
  saveCovering(file("one.json"), Covering({{0, 0}}, {-1, -1, 1, 1}));
  PathCurve semi;
  semi.append(ArcPiece({{0, 0}, 1}, kPi, 0, Orientation::CW));
  writeTextFile(file("semi.json"), pathToJson(semi).dump());
  Result r = run({"render", "-c", file("one.json"), "--path", file("semi.json"), "-o", file("one.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string svg = slurp(file("one.svg"));
  EXPECT_EQ(countOf(svg, "<circle"), 1u);
  EXPECT_EQ(countOf(svg, "class=\"gamma\""), 1u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);

  ASSERT_EQ(run({"render", "-c", file("one.json"), "--path", file("semi.json"), "-o", file("one2.svg")}).code, 0);
  EXPECT_EQ(svg, slurp(file("one2.svg")));
}

TEST_F(Cli, RenderReportIsDeterministic) {
  std::string cov = criticalLattice();
  std::string a = num(kRoot2 * 3.5), b = num(kRoot2 * 7.5);
  ASSERT_EQ(run({"path", "-c", cov, "--from", a, a, "--to", b, b, "-o", file("r.json")}).code, 0);
  ASSERT_EQ(run({"oracle", "-c", cov, "--from", a, a, "--to", b, b, "-o", file("ro.json")}).code, 0);
  std::vector<std::string> args{"render", "-c", cov, "--path", file("r.json"), "--oracle", file("ro.json")};
  Result first = run(args);
  Result second = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(countOf(first.out, "class=\"gamma\""), 1u);
  EXPECT_EQ(countOf(first.out, "class=\"oracle\""), 1u);
  EXPECT_GE(countOf(first.out, "class=\"gamma-i\""), 1u);
  EXPECT_GE(countOf(first.out, "class=\"label\""), 2u);
  EXPECT_EQ(countOf(first.out, "class=\"segment\""), 1u);
}

// Discs below then above the line give an upper run followed by a lower
// one; the drawn path meets the line between them and changes sides once.
TEST_F(Cli, RenderTwoRunsCrossesTheLineOnce) {
  Covering c({{0, -0.3}, {0, -0.3}, {1.3, 0.3}, {1.3, 0.3}}, {-1, -1.5, 2.5, 1.5});
  saveCovering(file("tworun.json"), c);
  Result p = run({"path", "-c", file("tworun.json"), "--from", "-0.8", "0", "--to", "2.1", "0", "-o", file("tr.json")});
  ASSERT_EQ(p.code, 0) << p.err;
  json j = readJsonFile(file("tr.json"));
  ASSERT_EQ(j["chain"]["runs"].size(), 2u);

  Result r = run({"render", "-c", file("tworun.json"), "--path", file("tr.json")});
  ASSERT_EQ(r.code, 0);
  auto at = r.out.find("class=\"gamma\"");
  ASSERT_NE(at, std::string::npos);
  auto d0 = r.out.find(" d=\"", at);
  std::string d = r.out.substr(d0 + 4, r.out.find('"', d0 + 4) - d0 - 4);

  // Vertex y coordinates: the last number of each M, L and A command.
  std::vector<double> ys;
  for (std::size_t k = 0; k < d.size();) {
    std::size_t next = d.find_first_of("MLA", k + 1);
    std::istringstream cmd(d.substr(k + 1, next == std::string::npos ? std::string::npos : next - k - 1));
    double v = 0;
    double y = 0;
    while (cmd >> v) y = v;
    ys.push_back(y);
    k = next == std::string::npos ? d.size() : next;
  }
  int changes = 0;
  int last = 0;
  for (double y : ys) {
    int s = y > 1e-9 ? 1 : (y < -1e-9 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  EXPECT_EQ(changes, 1) << d;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"gen", "lattice", "--spacing", "-1"}).code, 1);
  EXPECT_EQ(run({"path", "-c", file("missing.json"), "--from", "0", "0", "--to", "1", "1"}).code, 1);
  EXPECT_EQ(run({"path", "--from", "0", "0"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, InvalidCoveringFile) {
  writeTextFile(file("badcov.json"), R"({"radius": 2.0, "discs": [[0, 0]], "bbox": [0, 0, 1, 1]})");
  EXPECT_EQ(run({"verify", "-c", file("badcov.json")}).code, 2);
}
