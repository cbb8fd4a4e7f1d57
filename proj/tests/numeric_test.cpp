#include <doctest.h>

#include "densitylab/numeric.hpp"

using namespace densitylab;

TEST_CASE("integer helpers") {
  CHECK(pow_int(3, 5) == 243);
  CHECK(pow2(10) == 1024);
  CHECK(bit_length(Int(0)) == 0);
  CHECK(bit_length(Int(1)) == 1);
  CHECK(bit_length(Int(1024)) == 11);
  CHECK_THROWS_AS(to_ulong_checked(Int(-1), "x"), BudgetExceededError);
  CHECK_THROWS_AS(to_ulong_checked(pow2(80), "x"), BudgetExceededError);
}

TEST_CASE("rational formatting and parsing") {
  CHECK(rat_str(make_rat(4, 6)) == "2/3");
  CHECK(rat_str(Rat(0)) == "0/1");
  CHECK(parse_rat("2/3") == make_rat(2, 3));
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rat("x/y"), DomainError);
}

TEST_CASE("dyadic recognition") {
  CHECK(dyadic_exponent(make_rat(3, 8)) == 3);
  CHECK(dyadic_exponent(Rat(5)) == 0);
  CHECK_FALSE(dyadic_exponent(make_rat(1, 6)).has_value());
}

TEST_CASE("harmonic partial sums match a direct fold") {
  Rat direct(0);
  for (int i = 3; i <= 40; ++i) direct += make_rat(1, i);
  CHECK(harmonic_between(3, 40) == direct);
  CHECK(harmonic_between(7, 7) == make_rat(1, 7));
  CHECK(harmonic_between(9, 8) == Rat(0));
}

TEST_CASE("decimal rounding brackets the value") {
  Rat q = make_rat(1, 3);
  Rat lo = round_down_decimal(q, 6);
  Rat hi = round_up_decimal(q, 6);
  CHECK(lo <= q);
  CHECK(q <= hi);
  CHECK(hi - lo <= make_rat(1, 1000000));
  CHECK(round_down_decimal(make_rat(1, 2), 3) == make_rat(1, 2));
  CHECK(round_up_decimal(make_rat(1, 2), 3) == make_rat(1, 2));
}
