#include <doctest.h>

#include "densitylab/dsl.hpp"
#include "densitylab/verify.hpp"

using namespace densitylab;

TEST_CASE("parsing the block set") {
  SetExpr e = parse_expr("blocks(geo(2,1), ap(2,2))");
  CHECK(e == SetExpr::blocks(IntervalScheme::geometric(2, 1), SetExpr::ap(2, 2)));
  // Whitespace-insensitive.
  CHECK(parse_expr("  blocks ( geo(2 , 1),ap( 2,2) ) ") == e);
}

TEST_CASE("parsing shifts, finite sets and codes") {
  CHECK(parse_expr("shift(fin{1,2}, -1)") ==
        SetExpr::shift(SetExpr::finite({1, 2}), -1));
  CHECK(parse_expr("fin{}") == SetExpr::empty());
  CHECK(parse_expr("codes(01|101)") == SetExpr::branch_codes(Branch("01", "101"), 1));
  CHECK(parse_expr("codes(|0, 2)") == SetExpr::branch_codes(Branch("", "0"), 2));
  CHECK(parse_expr("union(empty, compl(full))") ==
        SetExpr::union_of(SetExpr::empty(), SetExpr::complement(SetExpr::full())));
}

TEST_CASE("schemes parse and default the geometric offset") {
  CHECK(parse_scheme("geo(2)") == IntervalScheme::geometric(2, 0));
  CHECK(parse_scheme("geo(3,4)") == IntervalScheme::geometric(3, 4));
  CHECK(parse_scheme("tri") == IntervalScheme::triangular());
  CHECK(parse_scheme("poly(2)") == IntervalScheme::polynomial(2));
  CHECK(parse_scheme("lin(6)") == IntervalScheme::linear(6));
}

TEST_CASE("errors carry positions") {
  SUBCASE("range violation") {
    try {
      parse_expr("ap(0,3)");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.line() == 1);
      CHECK(err.column() == 1);
      CHECK(std::string(err.what()).find("first >= 1") != std::string::npos);
    }
  }
  SUBCASE("unsorted finite set") {
    CHECK_THROWS_AS(parse_expr("fin{3,1}"), ParseError);
  }
  SUBCASE("unknown keyword with line tracking") {
    try {
      parse_expr("union(empty,\n  bogus)");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.line() == 2);
      CHECK(err.column() == 3);
    }
  }
  SUBCASE("trailing garbage") {
    CHECK_THROWS_AS(parse_expr("empty empty"), ParseError);
  }
  SUBCASE("missing cycle") {
    CHECK_THROWS_AS(parse_expr("codes(01|)"), ParseError);
  }
  SUBCASE("bad scheme") {
    CHECK_THROWS_AS(parse_expr("blocks(lin(0), full)"), ParseError);
  }
}

TEST_CASE("print-then-parse is the identity on the corpus") {
  for (const SetExpr& e : default_corpus()) {
    std::string text = print_expr(e);
    CAPTURE(text);
    CHECK(parse_expr(text) == e);
  }
}
