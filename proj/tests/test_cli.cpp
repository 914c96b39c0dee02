#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "acirc_cli.hpp"

using namespace acirc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(ACIRC_GOLDEN_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("acirc_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    auto p = (path_ / name).string();
    if (!text.empty()) std::ofstream(p) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Check, NonSmoothExitsOneWithWitness) {
  auto r = run({"check", golden("sum_xy.circ"), "--props", "smooth"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("smooth: no"), std::string::npos);
  EXPECT_NE(r.out.find("node 2"), std::string::npos);
}

TEST(Check, PassingPropertiesExitZero) {
  auto r = run({"check", golden("sum_xy_padded.circ"), "--props", "smooth,decomposable"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Check, JsonReport) {
  auto r = run({"check", golden("link_example.circ"), "--json"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_FALSE(j["holds"].get<bool>());
  EXPECT_EQ(j["reports"].size(), 4u);
}

TEST(Check, UnknownPropertyIsUsageError) {
  auto r = run({"check", golden("sum_xy.circ"), "--props", "shiny"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("shiny"), std::string::npos);
}

TEST(Transform, PhiToFileKeepsProperties) {
  TempDir tmp;
  std::string in = golden("random_sdD-AC_m_n7.circ");
  std::string out = tmp.file("phi.circ");
  ASSERT_EQ(run({"transform", in, "--op", "phi", "-o", out}).code, 0);
  Circuit c = parse_circuit(slurp(out));
  EXPECT_EQ(c.flavor(), Flavor::NNF);
  auto r = run({"check", out, "--props", "smooth,deterministic,decomposable"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Transform, JsonWithoutOutputEmbedsCircuit) {
  auto r = run({"transform", golden("link_example.circ"), "--op", "smooth-links", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["inserted_nodes"], 1);
  Circuit c = parse_circuit(j["circuit"].get<std::string>());
  EXPECT_TRUE(is_smooth(c).holds());
}

TEST(Transform, UnknownOpAndMissingWeight) {
  EXPECT_EQ(run({"transform", golden("sum_xy.circ"), "--op", "squash"}).code, 2);
  EXPECT_EQ(run({"transform", golden("sum_xy.circ"), "--op", "fixweight"}).code, 2);
}

TEST(Transform, MonotonizeRejectsCancellation) {
  auto r = run({"transform", golden("cancel.circ"), "--op", "monotonize"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Eval, ValueAtAssignment) {
  auto r = run({"eval", golden("flip_example.circ"), "--assign", "x=0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Support, ListsModels) {
  auto r = run({"support", golden("nnf_and_or.circ")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 model\nx=1,y=1\n");
}

TEST(Table, CsvRows) {
  auto r = run({"table", golden("sum_xy.circ")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x,y,value\n0,0,0\n1,0,1\n0,1,1\n1,1,2\n");
}

TEST(Classify, Label) {
  auto r = run({"classify", golden("sum_xy_padded.circ")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 1), "s");
  EXPECT_NE(r.out.find("AC_m"), std::string::npos);
}

TEST(Terms, CapOptionLimitsEnumeration) {
  auto ok = run({"terms", golden("sum_xy.circ")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.substr(0, 17), "2 term subcircuit");
  auto capped = run({"terms", golden("sum_xy.circ"), "--cap", "1"});
  EXPECT_EQ(capped.code, 1);
  EXPECT_NE(capped.err.find("TermExplosion"), std::string::npos);
}

TEST(Family, RandomCircuitHonoursClass) {
  auto r = run({"family", "random-circuit", "--class", "sd-DNNF", "--n", "5", "--budget", "40", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  Circuit c = parse_circuit(r.out);
  EXPECT_TRUE(is_smooth(c).holds());
  EXPECT_TRUE(is_deterministic(c).holds());
  EXPECT_TRUE(is_decomposable(c).holds());
}

TEST(Family, RegularGraphThenFg) {
  TempDir tmp;
  std::string graph = tmp.file("g.graph");
  ASSERT_EQ(run({"family", "random-regular", "--n", "8", "--d", "3", "--seed", "2", "-o", graph}).code, 0);
  auto r = run({"family", "fg", "--graph", graph});
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(parse_circuit(r.out).size(), 10u * 12 + 8);
}

TEST(Family, GadgetFromDimacs) {
  TempDir tmp;
  std::string cnf = tmp.file("f.cnf", "p cnf 3 2\n1 2 0\n2 3 0\n");
  auto r = run({"family", "gadget", "--cnf", cnf});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("c fresh z0 z1\n", 0), 0u);
}

TEST(Family, BadInputs) {
  EXPECT_EQ(run({"family", "random-regular", "--n", "5", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"family", "random-circuit", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"family", "zigzag"}).code, 2);
  EXPECT_EQ(run({"family", "fg"}).code, 2);
}

TEST(Rank, ExplicitPartitionAndAuto) {
  auto r = run({"rank", golden("fg_edge.circ"), "--partition", "X=x0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rank 2 for X = {x0}\n");
  auto a = run({"rank", golden("fg_edge.circ"), "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(json::parse(a.out)["rank"], 2);
  EXPECT_EQ(run({"rank", golden("fg_edge.circ"), "--partition", "X=q"}).code, 2);
}

TEST(Rank, AcceptsCsvTables) {
  TempDir tmp;
  std::string csv = tmp.file("t.csv", "a,b,value\n0,0,1\n1,0,0\n0,1,0\n1,1,1\n");
  auto r = run({"rank", csv, "--partition", "X=a"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rank 2 for X = {a}\n");
}

TEST(Lowerbound, ExhaustiveJsonHasSchemaVersion) {
  TempDir tmp;
  std::string graph = tmp.file("e.graph", "2 1\n0 1\n");
  auto r = run({"lowerbound", graph, "--exhaustive", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["min_rank"], 2);
  EXPECT_TRUE(j["all_certified"].get<bool>());
  EXPECT_EQ(j["partitions"].size(), 1u);
}

TEST(Decompose, SmoothDecomposableInput) {
  auto r = run({"decompose", golden("sum_xy_padded.circ"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["sum_matches_table"].get<bool>());
}

TEST(Decompose, NonSmoothInputFails) { EXPECT_EQ(run({"decompose", golden("fg_path.circ")}).code, 1); }

TEST(Usage, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/file.circ"}).code, 2);
  EXPECT_EQ(run({"eval", golden("sum_xy.circ")}).code, 2);
  EXPECT_EQ(run({"check", golden("sum_xy.circ"), "--no-such-flag"}).code, 2);
}

TEST(Usage, ParseErrorsExitTwo) {
  TempDir tmp;
  std::string bad = tmp.file("bad.circ", "ac 2\n0 var x\n1 + 0 5\nroot 1\n");
  auto r = run({"check", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Usage, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lowerbound"), std::string::npos);
}
