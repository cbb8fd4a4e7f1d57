#include <doctest.h>

#include <random>

#include "densitylab/analysis.hpp"
#include "densitylab/set_expr.hpp"
#include "densitylab/verify.hpp"

using namespace densitylab;

namespace {

SetExpr alternating_blocks() {
  return SetExpr::blocks(IntervalScheme::geometric(2, 1), SetExpr::ap(2, 2));
}

// Independent counting oracle: a plain membership scan.
Int scan_count(const SetExpr& e, const Int& n) {
  Int count = 0;
  for (Int i = 1; i <= n; ++i) {
    if (e.contains(i)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("membership basics") {
  CHECK(SetExpr::ap(1, 3).contains(7));
  CHECK_FALSE(SetExpr::ap(1, 3).contains(6));
  CHECK(SetExpr::full().contains(123456));
  CHECK_FALSE(SetExpr::empty().contains(1));

  // Truncation convention: (A + k) meets the naturals only.
  SetExpr shifted = SetExpr::shift(SetExpr::finite({1, 2}), -1);
  CHECK(shifted.contains(1));
  CHECK_FALSE(shifted.contains(2));

  // 5 lies in I_2 = [2^2+1, 2^3+1) and 2 is in the index.
  CHECK(alternating_blocks().contains(5));
  CHECK_FALSE(alternating_blocks().contains(4));
  CHECK_FALSE(alternating_blocks().contains(9));
}

TEST_CASE("prefix counts match the enumeration oracle on spec examples") {
  CHECK(SetExpr::ap(2, 2).count_upto(10) == 5);

  SetExpr astar = alternating_blocks();
  // I_2 = {5,...,8}: four elements below 8.
  CHECK(scan_count(astar, 8) == 4);
  CHECK(astar.count_upto(8) == 4);
  // Plus I_4 = {17,...,32}: twenty below 32.
  CHECK(scan_count(astar, 32) == 20);
  CHECK(astar.count_upto(32) == 20);
}

TEST_CASE("interval bounds") {
  auto geo = IntervalScheme::geometric(2, 1);
  CHECK(geo.interval(2) == std::pair<Int, Int>{5, 9});
  CHECK(IntervalScheme::triangular().interval(3) == std::pair<Int, Int>{6, 10});
  CHECK(IntervalScheme::linear(5).interval(1) == std::pair<Int, Int>{5, 10});

  SUBCASE("intervals tile the ray past the first boundary") {
    for (const auto& scheme :
         {geo, IntervalScheme::geometric(3, 0), IntervalScheme::polynomial(2),
          IntervalScheme::triangular(), IntervalScheme::linear(7)}) {
      for (Int n = 1; n <= 30; ++n) {
        CHECK(scheme.interval(n).second == scheme.interval(n + 1).first);
      }
    }
  }

  SUBCASE("locate inverts the boundaries") {
    for (const auto& scheme :
         {geo, IntervalScheme::polynomial(3), IntervalScheme::triangular()}) {
      for (Int x = 1; x <= 500; ++x) {
        auto n = scheme.locate(x);
        if (!n) {
          CHECK(x < scheme.boundary(1));
        } else {
          CHECK(scheme.boundary(*n) <= x);
          CHECK(x < scheme.boundary(*n + 1));
        }
      }
    }
  }
}

TEST_CASE("enumeration") {
  CHECK_THROWS_AS(SetExpr::finite({3, 1}), DomainError);
  CHECK_THROWS_AS(SetExpr::finite({0}), DomainError);
  CHECK_THROWS_AS(SetExpr::ap(0, 3), DomainError);

  SetExpr crt = SetExpr::inter(SetExpr::ap(1, 2), SetExpr::ap(1, 3));
  std::vector<Int> expected;
  for (Int i = 1; i <= 20; ++i) {
    if (crt.contains(i)) expected.push_back(i);
  }
  CHECK(crt.elements_upto(20) == expected);
  CHECK(expected == std::vector<Int>{1, 7, 13, 19});

  CHECK(SetExpr::complement(SetExpr::full()).elements_upto(100).empty());
}

TEST_CASE("prefix count properties over the corpus") {
  Budget budget;
  auto corpus = default_corpus();
  for (const SetExpr& e : corpus) {
    Int previous = 0;
    for (Int n : {Int(1), Int(7), Int(64), Int(300), Int(1000)}) {
      Int c = e.count_upto(n, budget);
      CHECK(c <= n);
      CHECK(c >= previous);
      previous = c;
    }
  }
}

TEST_CASE("union counts are subadditive with equality iff disjoint below n") {
  auto corpus = default_corpus();
  Budget budget;
  const Int n = 2000;
  for (std::size_t i = 0; i < corpus.size(); i += 5) {
    for (std::size_t j = i + 3; j < corpus.size(); j += 7) {
      const SetExpr& a = corpus[i];
      const SetExpr& b = corpus[j];
      Int cu = SetExpr::union_of(a, b).count_upto(n, budget);
      Int ca = a.count_upto(n, budget);
      Int cb = b.count_upto(n, budget);
      Int ci = SetExpr::inter(a, b).count_upto(n, budget);
      CHECK(cu <= ca + cb);
      CHECK(cu == ca + cb - ci);
      CHECK((cu == ca + cb) == (ci == 0));
    }
  }
}

TEST_CASE("translation is truncated shift") {
  auto corpus = default_corpus();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> point(1, 500);
  for (const SetExpr& e : corpus) {
    for (Int k : {Int(0), Int(1), Int(5), Int(12)}) {
      SetExpr t = SetExpr::shift(e, k);
      for (int trial = 0; trial < 12; ++trial) {
        Int n = point(rng);
        CHECK(t.contains(n) == (n > k && e.contains(n - k)));
      }
    }
  }
}

TEST_CASE("closed-form counting equals the scan oracle at 10^3") {
  auto corpus = default_corpus();
  Budget budget;
  for (const SetExpr& e : corpus) {
    CHECK(e.count_upto(1000, budget) == scan_count(e, 1000));
  }
}

TEST_CASE("closed-form counting agrees pointwise at every prefix") {
  // Representatives of each counting path, checked at all n up to 3000
  // against an incremental membership scan.
  std::vector<SetExpr> sample = {
      alternating_blocks(),
      SetExpr::diff(SetExpr::shift(alternating_blocks(), 3), alternating_blocks()),
      SetExpr::complement(SetExpr::union_of(SetExpr::ap(2, 3), SetExpr::finite({7, 19}))),
      SetExpr::inter(alternating_blocks(), SetExpr::ap(1, 2)),
      SetExpr::blocks(IntervalScheme::triangular(), SetExpr::branch_codes(Branch("", "10"), 2)),
      SetExpr::shift(SetExpr::branch_codes(Branch("", "0"), 1), 1),
  };
  Budget budget;
  for (const SetExpr& e : sample) {
    Int count = 0;
    for (Int n = 1; n <= 3000; ++n) {
      if (e.contains(n)) ++count;
      CHECK(e.count_upto(n, budget) == count);
    }
  }
}

TEST_CASE("run decomposition agrees with membership") {
  auto corpus = default_corpus();
  Budget budget;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> point(1, 3000);
  for (const SetExpr& e : corpus) {
    RunList runs = e.runs_upto(3000, budget);
    for (int trial = 0; trial < 25; ++trial) {
      Int n = point(rng);
      CHECK(runs.contains(n) == e.contains(n));
    }
  }
}

TEST_CASE("enumeration cap signals a budget error") {
  Budget tight;
  tight.element_cap = 10;
  CHECK_THROWS_AS(SetExpr::ap(1, 1).elements_upto(1000, tight), BudgetExceededError);
}

TEST_CASE("nested nonnegative shifts fuse") {
  SetExpr e = SetExpr::shift(SetExpr::shift(SetExpr::ap(5, 3), 2), 4);
  CHECK(e.kind() == SetExpr::Kind::Shift);
  CHECK(e.shift_offset() == 6);
  // A negative inner shift must not fuse: truncation order matters.
  SetExpr f = SetExpr::shift(SetExpr::shift(SetExpr::finite({1, 2}), -1), 1);
  CHECK(f.inner().kind() == SetExpr::Kind::Shift);
  CHECK(f.contains(2));
  CHECK_FALSE(f.contains(3));
}
