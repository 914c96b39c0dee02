#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "acirc/acirc.hpp"

using namespace acirc;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_parse_error(const char* text, Errc code, std::size_t line) {
  try {
    parse_circuit(text);
    FAIL() << "accepted: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

}  // namespace

TEST(Parse, ConstantOne) {
  Circuit c = parse_circuit("ac 1\n0 const 1\nroot 0\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(evaluate(c, Assignment{}), Rational(1));
}

TEST(Parse, CommentsAndSpacing) {
  Circuit c = parse_circuit("c header comment\n\nac   3\n0 var x\r\nc inner\n1  neg   y\n2 * 0 1\nroot 2");
  EXPECT_EQ(serialize_circuit(c), "ac 3\n0 var x\n1 neg y\n2 * 0 1\nroot 2\n");
}

TEST(Parse, RationalsInLowestTerms) {
  Circuit c = parse_circuit("ac 1\n0 const -6/4\nroot 0\n");
  EXPECT_EQ(serialize_circuit(c), "ac 1\n0 const -3/2\nroot 0\n");
}

TEST(Parse, ForwardReference) { expect_parse_error("ac 3\n0 var x\n1 + 0 2\n2 var y\nroot 1\n", Errc::ForwardReference, 3); }

TEST(Parse, DuplicateId) { expect_parse_error("ac 2\n0 var x\n0 var y\nroot 0\n", Errc::DuplicateId, 3); }

TEST(Parse, NonBooleanNnfConstant) { expect_parse_error("nnf 1\n0 const 3\nroot 0\n", Errc::NonBooleanNNFConstant, 2); }

TEST(Parse, WrongOperatorForFlavor) { expect_parse_error("nnf 3\n0 var x\n1 var y\n2 + 0 1\nroot 2\n", Errc::SyntaxError, 4); }

TEST(Parse, CountMismatch) { expect_parse_error("ac 2\n0 var x\nroot 0\n", Errc::SyntaxError, 4); }

TEST(Parse, MissingHeader) { expect_parse_error("0 var x\nroot 0\n", Errc::SyntaxError, 1); }

TEST(Parse, LinesAfterRoot) { expect_parse_error("ac 1\n0 var x\nroot 0\n1 var y\n", Errc::SyntaxError, 4); }

TEST(Parse, UnknownRoot) { expect_parse_error("ac 1\n0 var x\nroot 3\n", Errc::UnknownNode, 3); }

TEST(Parse, BadVariableName) { expect_parse_error("ac 1\n0 var 9x\nroot 0\n", Errc::SyntaxError, 2); }

TEST(Parse, SecondSource) { expect_parse_error("ac 2\n0 var x\n1 var y\nroot 1\n", Errc::MultipleSources, 4); }

TEST(Parse, ColumnPointsAtToken) {
  try {
    parse_circuit("ac 2\n0 var x\n1 * 0 zz\nroot 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
  }
}

TEST(Serialize, RoundTripOnGeneratedCircuits) {
  const char* labels[] = {"sdD-AC_m", "wD-AC_p", "d-wDNNF", "sD-AC_p", "DNNF"};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Circuit c = random_circuit(ClassLabel::parse(labels[seed % 5]), 1 + seed % 9, 60, seed);
    std::string text = serialize_circuit(c);
    Circuit back = parse_circuit(text);
    EXPECT_EQ(serialize_circuit(back), text);
    auto dom = function_table(c).domain;
    EXPECT_EQ(function_table(back, dom), function_table(c, dom));
  }
}

TEST(Golden, SerializeParseIsIdentity) {
  std::size_t files = 0;
  for (auto& entry : std::filesystem::directory_iterator(ACIRC_GOLDEN_DIR)) {
    if (entry.path().extension() != ".circ") continue;
    ++files;
    std::string text = read_file(entry.path());
    EXPECT_EQ(serialize_circuit(parse_circuit(text)), text) << entry.path();
  }
  EXPECT_GE(files, 50u);
}
