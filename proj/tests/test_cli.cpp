#include "cli.hpp"

#include "zappatic/constructions.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zappatic;
using nlohmann::ordered_json;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "zappatic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string json_block(const std::string& out) {
  const auto b = out.find(cli::kJsonBegin);
  const auto e = out.find(cli::kJsonEnd);
  if (b == std::string::npos || e == std::string::npos) return {};
  return out.substr(b, e - b);
}

std::string read_file(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("zappatic_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    unsetenv("ZAPPATIC_SEED");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstructX) {
  const CliRun r = run({"construct", "--family", "X", "--d", "8", "--g", "2", "--seed", "7", "--out", path("x.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("R3=6 S4=2 g=2 chi=-1"), std::string::npos);
  EXPECT_NE(r.out.find("3g+6+c"), std::string::npos);
  const ordered_json j = ordered_json::parse(json_block(r.out).substr(std::string(cli::kJsonBegin).size()));
  EXPECT_EQ(j["edges"], 9);
  EXPECT_TRUE(std::filesystem::exists(path("x.json")));
}

TEST_F(CliTest, ConstructYEdges) {
  const CliRun r = run({"construct", "--family", "Y", "--d", "13", "--g", "3", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("edges=15"), std::string::npos);
}

TEST_F(CliTest, RangeErrorsExitTwo) {
  CliRun r = run({"construct", "--family", "cycle", "--d", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("requires d >= 5"), std::string::npos);
  r = run({"construct", "--family", "X", "--d", "7", "--g", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("requires d >= 2g+4"), std::string::npos);
  EXPECT_EQ(run({"construct", "--family", "W", "--d", "7"}).code, 2);
  EXPECT_EQ(run({"hilbert", "--d", "3", "--g", "1"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
}

TEST_F(CliTest, ExitCodeContract) {
  EXPECT_EQ(cli::exit_code_for(GenericityError("x")), 3);
  EXPECT_EQ(cli::exit_code_for(RangeError("x")), 2);
  EXPECT_EQ(cli::exit_code_for(GeometryError("x")), 2);
  EXPECT_EQ(cli::exit_code_for(std::logic_error("x")), 4);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, RoundTripReproducesReport) {
  for (const auto& fam : {std::vector<std::string>{"X", "10", "3"}, {"Y", "9", "2"}, {"Z", "8", "2"}, {"cycle", "6", "1"}}) {
    const std::string file = path(fam[0] + ".json");
    ASSERT_EQ(run({"construct", "--family", fam[0], "--d", fam[1], "--g", fam[2], "--seed", "3", "--out", file}).code, 0);
    const cli::ArrangementFile f = cli::read_arrangement(file);
    ConstructionResult in_memory = fam[0] == "X"   ? build_X(10, 3, 3)
                                   : fam[0] == "Y" ? build_Y(9, 2, 3)
                                   : fam[0] == "Z" ? build_Z(8, 2, 3)
                                                   : cycle_planes(6);
    ASSERT_EQ(f.arrangement.size(), in_memory.arrangement.size());
    for (std::size_t k = 0; k < f.arrangement.size(); ++k)
      EXPECT_EQ(f.arrangement.plane(k), in_memory.arrangement.plane(k));
    const ZappaticReport rep = zappatic_report(f.arrangement);
    EXPECT_EQ(rep.types, in_memory.report.types);
    EXPECT_EQ(rep.r_counts, in_memory.report.r_counts);
    EXPECT_EQ(rep.s_counts, in_memory.report.s_counts);
    EXPECT_EQ(f.metadata["family"], fam[0]);
    // Writing again gives the same bytes.
    EXPECT_EQ(cli::arrangement_to_json(f.arrangement, f.metadata).dump(2) + "\n", read_file(file));
  }
}

TEST_F(CliTest, LargeIntegersAsStrings) {
  Vec big(4);
  big[0] = Rat(mpz_class("123456789012345678901234567891"), 7);
  big[0].canonicalize();
  big[1] = 1;
  Arrangement arr(3);
  arr.add_plane(Subspace(3, Matrix{big, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  const ordered_json j = cli::arrangement_to_json(arr, ordered_json::object());
  const cli::ArrangementFile back = cli::arrangement_from_json(ordered_json::parse(j.dump()));
  EXPECT_EQ(back.arrangement.plane(0), arr.plane(0));
  EXPECT_NE(j.dump().find('"'), std::string::npos);
}

TEST_F(CliTest, Classify) {
  ASSERT_EQ(run({"construct", "--family", "X", "--d", "8", "--g", "2", "--seed", "7", "--out", path("x.json")}).code, 0);
  const CliRun r = run({"classify", path("x.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const ordered_json j = ordered_json::parse(json_block(r.out).substr(std::string(cli::kJsonBegin).size()));
  EXPECT_EQ(j["points"].size(), 8u);
  EXPECT_EQ(j["r_counts"]["3"], 6);
  EXPECT_EQ(j["s_counts"]["4"], 2);
  EXPECT_NE(r.out.find("Zappatic: yes"), std::string::npos);
}

TEST_F(CliTest, ClassifyHandWrittenFiles) {
  std::ofstream(path("disjoint.json")) << R"({"ambient_dim": 5, "planes": [
    [[[1,1],[0,1],[0,1],[0,1],[0,1],[0,1]], [[0,1],[1,1],[0,1],[0,1],[0,1],[0,1]], [[0,1],[0,1],[1,1],[0,1],[0,1],[0,1]]],
    [[[0,1],[0,1],[0,1],[1,1],[0,1],[0,1]], [[0,1],[0,1],[0,1],[0,1],[1,1],[0,1]], [[0,1],[0,1],[0,1],[0,1],[0,1],[1,1]]]]})";
  CliRun r = run({"classify", path("disjoint.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("no singular points; Zappatic: yes"), std::string::npos);

  std::ofstream(path("touch.json")) << R"({"ambient_dim": 4, "planes": [
    [[[1,1],[0,1],[0,1],[0,1],[0,1]], [[0,1],[1,1],[0,1],[0,1],[0,1]], [[0,1],[0,1],[1,1],[0,1],[0,1]]],
    [[[0,1],[0,1],[1,1],[0,1],[0,1]], [[0,1],[0,1],[0,1],[1,1],[0,1]], [[0,1],[0,1],[0,1],[0,1],[2,3]]]]})";
  r = run({"classify", path("touch.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("NonZappatic(isolated plane-pair contact)"), std::string::npos);
  EXPECT_NE(r.out.find("Zappatic: no"), std::string::npos);

  std::ofstream(path("bad.json")) << "{\"ambient_dim\": 3, \"planes\": [[[1,0]]]";
  EXPECT_EQ(run({"classify", path("bad.json")}).code, 2);
  std::ofstream(path("zero.json")) << R"({"ambient_dim": 1, "planes": [[[[1,0],[0,1]]]]})";
  EXPECT_EQ(run({"classify", path("zero.json")}).code, 2);
  EXPECT_EQ(run({"classify", path("missing.json")}).code, 2);
}

TEST_F(CliTest, Invariants) {
  ASSERT_EQ(run({"construct", "--family", "X", "--d", "10", "--g", "3", "--out", path("x.json")}).code, 0);
  CliRun r = run({"invariants", path("x.json"), "--smooth"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("g=3 chi=-2 p_omega=0 K2=[-16,-12]"), std::string::npos);
  EXPECT_NE(r.out.find("smoothing:"), std::string::npos);
  ASSERT_EQ(run({"construct", "--family", "chain", "--d", "5", "--out", path("c.json")}).code, 0);
  r = run({"invariants", path("c.json")});
  EXPECT_NE(r.out.find("g=0 chi=1 p_omega=0 K2=[8,8]"), std::string::npos);
  r = run({"invariants", "--abstract", "torus", "2", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("h2=1 chi=0"), std::string::npos);
}

TEST_F(CliTest, GraphWritesDotOnlyToFile) {
  ASSERT_EQ(run({"construct", "--family", "cycle", "--d", "5", "--out", path("c.json")}).code, 0);
  const CliRun r = run({"graph", path("c.json"), "--dot", path("c.dot")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("graph zappatic"), std::string::npos);
  EXPECT_EQ(read_file(path("c.dot")).rfind("graph zappatic {", 0), 0u);
}

TEST_F(CliTest, HilbertFeasibleQuadricsDegenerate) {
  CliRun r = run({"hilbert", "--d", "5", "--g", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("hilbert_dim(5,0) = 42"), std::string::npos);
  r = run({"feasible", "--a", "2", "--b", "6"});
  EXPECT_NE(r.out.find("infeasible: j_a range empty (a+b-2 > 2a+1)"), std::string::npos);
  r = run({"feasible", "--a", "2", "--b", "5"});
  EXPECT_EQ(r.out.rfind("feasible: witness", 0), 0u);
  r = run({"quadrics", "--d", "3", "--g", "0", "--oracle"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("formula 3 = oracle 3"), std::string::npos);
  EXPECT_EQ(run({"quadrics", "--d", "8", "--g", "2", "--oracle"}).code, 2);
  r = run({"degenerate", "--d", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("chain_of_planes=yes"), std::string::npos);
}

TEST_F(CliTest, SeedFromEnvironment) {
  const std::vector<std::string> base{"construct", "--family", "X", "--d", "9", "--g", "2"};
  const CliRun plain = run(base);
  setenv("ZAPPATIC_SEED", "77", 1);
  const CliRun env = run(base);
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "77"});
  const CliRun explicit_seed = run(with_seed);
  auto other = base;
  other.insert(other.end(), {"--seed", "1"});
  const CliRun wins = run(other);
  unsetenv("ZAPPATIC_SEED");
  EXPECT_NE(plain.out.find("seed=1"), std::string::npos);
  EXPECT_NE(env.out.find("seed=77"), std::string::npos);
  EXPECT_EQ(env.out, explicit_seed.out);
  EXPECT_EQ(wins.out, plain.out);
}

TEST_F(CliTest, ConstructIsByteIdentical) {
  for (const std::string fam : {"X", "Y", "Z"}) {
    const std::vector<std::string> a{"construct", "--family", fam, "--d", "13", "--g", "3", "--seed", "5", "--out", path("a.json")};
    const std::vector<std::string> b{"construct", "--family", fam, "--d", "13", "--g", "3", "--seed", "5", "--out", path("b.json")};
    const CliRun ra = run(a), rb = run(b);
    ASSERT_EQ(ra.code, 0) << ra.err;
    EXPECT_EQ(json_block(ra.out), json_block(rb.out));
    EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  }
}
