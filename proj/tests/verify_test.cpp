#include <doctest.h>

#include "densitylab/serialize.hpp"
#include "densitylab/verify.hpp"

using namespace densitylab;

namespace {

TadFamily tiny_family() {
  std::vector<Branch> branches;
  for (int i = 0; i < 4; ++i) {
    std::string head;
    for (int b = 1; b >= 0; --b) head += ((i >> b) & 1) ? '1' : '0';
    branches.emplace_back(head, "01");
  }
  return TadFamily(IntervalScheme::geometric(2, 1), std::move(branches));
}

}  // namespace

TEST_CASE("axiom suite passes for the partition density on the default corpus") {
  auto corpus = default_corpus();
  Report report =
      check_axioms(omega_ref(IdealOracle::piece_finite(), Partition::dyadic(), 12), corpus, 150);
  CHECK(report.ok());
  CHECK(report.failed() == 0);
}

TEST_CASE("axiom suite passes for two-valued densities") {
  auto corpus = default_corpus();
  for (const IdealOracle& ideal : {IdealOracle::fin(), IdealOracle::density_zero()}) {
    Report report = check_axioms(two_valued_ref(ideal), corpus, 120);
    CAPTURE(ideal.name());
    CHECK(report.ok());
  }
}

TEST_CASE("the harness flags a corrupted evaluator") {
  DensityEvaluatorRef broken;
  broken.name = "corrupted-fixture";
  broken.eval = [](const SetExpr& e) {
    // Claims density 1/2 for everything, including the naturals themselves.
    (void)e;
    return DensityValue::exact(make_rat(1, 2));
  };
  broken.eval_shifted = [&](const SetExpr& e, const Int&) { return broken.eval(e); };
  Report report = check_axioms(broken, default_corpus(), 10);
  CHECK_FALSE(report.ok());
  bool found_normalization_failure = false;
  for (const auto& c : report.checks) {
    if (c.name == "normalized" && c.status == CheckRecord::Status::Fail) {
      found_normalization_failure = true;
      CHECK(!c.inputs.empty());
    }
  }
  CHECK(found_normalization_failure);
}

TEST_CASE("translation suite: invariant evaluators agree exactly") {
  auto corpus = default_corpus();
  for (const IdealOracle& ideal :
       {IdealOracle::fin(), IdealOracle::density_zero(), IdealOracle::summable()}) {
    Report report = check_translation(two_valued_ref(ideal), corpus, 2);
    CAPTURE(ideal.name());
    CHECK(report.ok());
  }
}

TEST_CASE("translation suite: certificate transfer for the sup-TAD density") {
  auto evaluator = std::make_shared<const SupTadEvaluator>(tiny_family());
  std::vector<SetExpr> members;
  for (std::size_t i = 0; i < evaluator->family().size(); ++i) {
    members.push_back(evaluator->family().member_set(i));
  }
  Report report = check_translation(sup_tad_ref(evaluator), members, 3);
  CHECK(report.ok());
}

TEST_CASE("translation suite detects that the partition density is not invariant") {
  // Its exact values move under translation: the second piece 2*(odds) shifts
  // onto a subset of the odds, so the density jumps from 1/4 to 1/2. The
  // harness must catch exactly this.
  Partition part = Partition::dyadic();
  std::vector<SetExpr> corpus = {part.piece(2)};
  Report report =
      check_translation(omega_ref(IdealOracle::piece_finite(), part, 12), corpus, 1);
  CHECK_FALSE(report.ok());
  bool found = false;
  for (const auto& c : report.checks) {
    if (c.status == CheckRecord::Status::Fail) {
      found = true;
      CHECK(c.name == "translate-exact");
    }
  }
  CHECK(found);
}

TEST_CASE("null sets of the partition density are exactly the ideal members") {
  auto corpus = default_corpus();
  Report report = check_null_ideal(omega_ref(IdealOracle::piece_finite(), Partition::dyadic(), 12),
                                   IdealOracle::piece_finite(), corpus);
  CHECK(report.ok());
  // At least a handful of corpus entries decide on each side.
  std::size_t decided = report.passed();
  CHECK(decided >= 20);
}

TEST_CASE("two-valued null-set identity") {
  auto corpus = default_corpus();
  for (const IdealOracle& ideal : {IdealOracle::fin(), IdealOracle::density_zero()}) {
    Report report = check_null_ideal(two_valued_ref(ideal), ideal, corpus);
    CAPTURE(ideal.name());
    CHECK(report.ok());
  }
}

TEST_CASE("block-set gallery") {
  Report report = gallery_block_set(20, 8, 12);
  CHECK(report.ok());
}

TEST_CASE("gap-set gallery: triangular boundaries") {
  SUBCASE("small shifts have at most one coincidence") {
    Report report = gallery_gap_set(Int(100000), 4);
    CHECK(report.ok());
  }
  SUBCASE("the harness finds the double coincidence at shift five") {
    // 6 - 1 = 15 - 10 = 5: triangular numbers are not a Sidon set, and the
    // suite must report it rather than smooth it over.
    Report report = gallery_gap_set(Int(100000), 5);
    CHECK_FALSE(report.ok());
    bool found = false;
    for (const auto& c : report.checks) {
      if (c.status == CheckRecord::Status::Fail && c.inputs == "l=5") {
        found = true;
        CHECK(c.got.find("6") != std::string::npos);
        CHECK(c.got.find("15") != std::string::npos);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("gap-set gallery: power-of-two boundaries stay pairwise separated") {
  // Gaps 2^n increase and diverge, and all pairwise differences are distinct,
  // so every shift has at most one coincidence.
  Report report = gallery_gap_set_for(IntervalScheme::geometric(2, 0), Int(1000000), 100);
  CHECK(report.ok());
}

TEST_CASE("reports serialize deterministically") {
  Report report = gallery_block_set(3, 2, 4);
  std::string a = to_json(report).dump();
  std::string b = to_json(report).dump();
  CHECK(a == b);
  CHECK(a.find("wall_ms") == std::string::npos);
  // Text output mentions the suite.
  CHECK(report.text().find("gallery:block-set") != std::string::npos);
}

TEST_CASE("verdicts and densities serialize with exact rationals") {
  Verdict v = ideal_member(IdealOracle::summable(),
                           SetExpr::blocks(IntervalScheme::geometric(2, 1), SetExpr::ap(2, 2)));
  Json j = to_json(v);
  CHECK(j["decision"] == "not_in");
  CHECK(j["certificate"]["type"] == "divergence");
  CHECK(j["certificate"]["per_block"][0]["lower_bound"] == "1/2");

  Json d = to_json(DensityValue::exact(make_rat(2, 3)));
  CHECK(d["kind"] == "exact");
  CHECK(d["lo"] == "2/3");
  CHECK(d["hi"] == "2/3");
}
