#include <doctest.h>

#include "statbench/dsl.hpp"
#include "statbench/errors.hpp"
#include "support/checks.hpp"

using namespace statbench;
using namespace statbench::dsl;

TEST_CASE("statement forms") {
  const Call load = parse_statement("load_data(\"mpg.csv\")");
  CHECK(load.name == "load_data");
  REQUIRE(load.args.size() == 1);
  CHECK_FALSE(load.args[0].keyword);
  CHECK(load.args[0].value == Value("mpg.csv"));

  const Call t = parse_statement("t_test(x = col(\"hwy\"), mu = 0)");
  REQUIRE(t.args.size() == 2);
  CHECK(t.args[0].keyword == "x");
  CHECK(t.args[0].value == Value(ColumnRef{"hwy"}));
  CHECK(t.args[1].keyword == "mu");
  CHECK(t.args[1].value == Value(0.0));
}

TEST_CASE("values") {
  const Call c = parse_statement("f([1, -2.5e-3, true, \"a\\\"b\\\\c\\nd\"], g(h()), false)");
  const auto& list = c.args[0].value.as<List>();
  CHECK(list.size() == 4);
  CHECK(list[1] == Value(-2.5e-3));
  CHECK(list[2] == Value(true));
  CHECK(list[3] == Value("a\"b\\c\nd"));
  CHECK(c.args[1].value.is<CallPtr>());
  CHECK(c.args[2].value == Value(false));
}

TEST_CASE("canonical printing") {
  CHECK(print(parse_statement("f( x=col( \"a b\" ),y = 0.50 ,z=[ ])")) == "f(x = col(\"a b\"), y = 0.5, z = [])");
  CHECK(quote("say \"hi\"\\\n") == "\"say \\\"hi\\\"\\\\\\n\"");
  CHECK(print(Value(1e100)) == "1e+100");
}

TEST_CASE("comments and blank lines keep line numbers") {
  const auto ast = parse_script("# setup\n\nload_data(\"a.csv\")\n  # note\nf()\n");
  REQUIRE(ast.statements.size() == 2);
  CHECK(ast.statements[0].pos.line == 3);
  CHECK(ast.statements[1].pos.line == 5);
}

TEST_CASE("syntax errors carry line and column") {
  std::string first;
  CHECK_MESSAGE(checks::syntax_failures(&first) == 0, first);
  try {
    parse_script("t_test(");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("unexpected end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_statement("f()\ng()"), ParseError);
  CHECK_THROWS_AS(parse_statement(""), ParseError);
}

TEST_CASE("parse of print is the identity on generated scripts") {
  gen::Rng rng(777);
  checks::DslTally tally;
  checks::dsl_round_trips(rng, 300, tally);
  CHECK_MESSAGE(tally.ok(), tally.first);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("t_test"));
  CHECK(is_identifier("_x1"));
  CHECK_FALSE(is_identifier("1x"));
  CHECK_FALSE(is_identifier(""));
  CHECK_FALSE(is_identifier("a-b"));
}
