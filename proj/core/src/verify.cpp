#include "densitylab/verify.hpp"

#include <algorithm>
#include <chrono>

#include "densitylab/analysis.hpp"
#include "densitylab/dsl.hpp"

namespace densitylab {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

std::string density_text(const DensityValue& v) {
  switch (v.kind) {
    case DensityValueKind::Exact:
      return "exact " + rat_str(v.lo);
    case DensityValueKind::Enclosure:
      return "[" + rat_str(v.lo) + ", " + rat_str(v.hi) + "]";
    case DensityValueKind::LowerBound:
      return ">= " + rat_str(v.lo);
    case DensityValueKind::Estimate:
      return "~[" + rat_str(v.lo) + ", " + rat_str(v.hi) + "]";
  }
  return "?";
}

CheckRecord record(std::string name, std::string inputs, std::string expected, std::string got,
                   bool pass) {
  CheckRecord r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.expected = std::move(expected);
  r.got = std::move(got);
  r.status = pass ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
  return r;
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == CheckRecord::Status::Pass;
  }));
}

std::size_t Report::failed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == CheckRecord::Status::Fail;
  }));
}

std::size_t Report::skipped() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == CheckRecord::Status::Skip;
  }));
}

void Report::add(CheckRecord rec) { checks.push_back(std::move(rec)); }

std::string Report::text() const {
  std::string out = "suite " + suite + ": " + std::to_string(passed()) + " passed, " +
                    std::to_string(failed()) + " failed, " + std::to_string(skipped()) +
                    " undecided";
  if (wall_ms > 0) {
    out += " (" + std::to_string(wall_ms) + " ms)";
  }
  out += "\n";
  for (const auto& c : checks) {
    if (c.status == CheckRecord::Status::Pass) continue;
    const char* tag = c.status == CheckRecord::Status::Fail ? "FAIL" : "skip";
    out += std::string("  [") + tag + "] " + c.name + " on " + c.inputs + ": expected " +
           c.expected + ", got " + c.got + "\n";
  }
  return out;
}

DensityEvaluatorRef two_valued_ref(IdealOracle ideal, Budget budget) {
  DensityEvaluatorRef ref;
  ref.name = "two-valued:" + ideal.name();
  ref.claims_translation_invariance = ideal.kind() != IdealOracle::Kind::PieceFinite;
  ref.eval = [ideal, budget](const SetExpr& e) { return eval_two_valued(ideal, e, budget); };
  ref.eval_shifted = [ideal, budget](const SetExpr& e, const Int& k) {
    return eval_two_valued(ideal, SetExpr::shift(e, k), budget);
  };
  return ref;
}

DensityEvaluatorRef omega_ref(IdealOracle ideal, Partition partition, std::uint64_t terms,
                              Budget budget) {
  DensityEvaluatorRef ref;
  ref.name = "omega:" + ideal.name();
  ref.claims_translation_invariance = false;
  ref.eval = [ideal, partition, terms, budget](const SetExpr& e) {
    return eval_omega_partition(ideal, partition, e, terms, budget);
  };
  ref.eval_shifted = [ideal, partition, terms, budget](const SetExpr& e, const Int& k) {
    return eval_omega_partition(ideal, partition, SetExpr::shift(e, k), terms, budget);
  };
  return ref;
}

DensityEvaluatorRef sup_tad_ref(std::shared_ptr<const SupTadEvaluator> evaluator,
                                std::uint64_t shift_budget, std::uint64_t index_budget,
                                Budget budget) {
  DensityEvaluatorRef ref;
  ref.name = "sup-tad";
  ref.claims_translation_invariance = true;
  ref.eval = [evaluator, shift_budget, index_budget, budget](const SetExpr& e) {
    return eval_sup_tad(*evaluator, e, shift_budget, index_budget, budget).value;
  };
  // Certificate transfer: a positivity witness (x, k) for e becomes (x, k - m)
  // for the translate, so the shift window grows by |m|.
  ref.eval_shifted = [evaluator, shift_budget, index_budget, budget](const SetExpr& e,
                                                                     const Int& m) {
    const std::uint64_t enlarged =
        shift_budget + to_ulong_checked(abs(m), "translation shift");
    return eval_sup_tad(*evaluator, SetExpr::shift(e, m), enlarged, index_budget, budget).value;
  };
  return ref;
}

std::vector<SetExpr> default_corpus() {
  const IntervalScheme geo21 = IntervalScheme::geometric(2, 1);
  const IntervalScheme geo20 = IntervalScheme::geometric(2, 0);
  const IntervalScheme geo30 = IntervalScheme::geometric(3, 0);
  const IntervalScheme tri = IntervalScheme::triangular();
  const SetExpr astar = SetExpr::blocks(geo21, SetExpr::ap(2, 2));
  const Partition dyadic = Partition::dyadic();

  std::vector<SetExpr> corpus;
  auto add = [&corpus](SetExpr e) { corpus.push_back(std::move(e)); };

  // Basic variants.
  add(SetExpr::empty());
  add(SetExpr::full());
  add(SetExpr::finite({1, 2, 3, 4, 5, 6, 7, 8, 9}));
  add(SetExpr::finite({5}));
  add(SetExpr::finite({10, 20, 30, 40, 50}));
  add(SetExpr::finite({Int(1000), Int(1000000)}));
  // Progressions, including the first four default partition pieces.
  add(SetExpr::ap(1, 2));
  add(SetExpr::ap(2, 4));
  add(SetExpr::ap(4, 8));
  add(SetExpr::ap(8, 16));
  add(SetExpr::ap(1, 1));
  add(SetExpr::ap(2, 2));
  add(SetExpr::ap(1, 3));
  add(SetExpr::ap(2, 3));
  add(SetExpr::ap(3, 7));
  add(SetExpr::ap(5, 5));
  // Block sets over every scheme variant.
  add(astar);
  add(SetExpr::blocks(geo21, SetExpr::ap(1, 2)));
  add(SetExpr::blocks(geo20, SetExpr::ap(1, 2)));
  add(SetExpr::blocks(geo30, SetExpr::ap(2, 2)));
  add(SetExpr::blocks(IntervalScheme::polynomial(2), SetExpr::ap(2, 2)));
  add(SetExpr::blocks(IntervalScheme::polynomial(3), SetExpr::ap(1, 2)));
  add(SetExpr::blocks(tri, SetExpr::ap(1, 3)));
  add(SetExpr::blocks(tri, SetExpr::ap(2, 2)));
  add(SetExpr::blocks(IntervalScheme::linear(5), SetExpr::ap(1, 2)));
  add(SetExpr::blocks(IntervalScheme::linear(3), SetExpr::ap(1, 3)));
  add(SetExpr::blocks(geo21, SetExpr::finite({1, 3})));
  add(SetExpr::blocks(tri, SetExpr::finite({2, 5, 7})));
  // Translates.
  add(SetExpr::shift(astar, 3));
  add(SetExpr::shift(astar, -2));
  add(SetExpr::shift(SetExpr::ap(1, 3), 5));
  add(SetExpr::shift(SetExpr::finite({1, 2}), -1));
  add(SetExpr::shift(SetExpr::blocks(tri, SetExpr::ap(1, 3)), -4));
  // Density witnesses.
  add(density_witness_asymptotic(make_rat(2, 3)));
  add(density_witness_asymptotic(make_rat(7, 20)));
  add(richness_witness_omega(dyadic, make_rat(5, 8)));
  add(richness_witness_omega(dyadic, make_rat(11, 16)));
  // Boolean combinations.
  add(SetExpr::inter(SetExpr::ap(1, 2), SetExpr::ap(1, 3)));
  add(SetExpr::inter(astar, SetExpr::ap(1, 2)));
  add(SetExpr::diff(SetExpr::ap(1, 2), SetExpr::ap(1, 6)));
  add(SetExpr::diff(astar, SetExpr::blocks(geo21, SetExpr::finite({2}))));
  add(SetExpr::complement(astar));
  add(SetExpr::complement(SetExpr::ap(1, 2)));
  add(SetExpr::complement(SetExpr::finite({1, 2, 3, 4, 5, 6, 7, 8, 9})));
  add(SetExpr::diff(SetExpr::shift(astar, 3), astar));
  add(SetExpr::union_of(astar, SetExpr::finite({1, 2, 3})));
  add(SetExpr::inter(astar, SetExpr::blocks(geo21, SetExpr::ap(2, 4))));
  // Sparse code sets and TAD members.
  add(SetExpr::branch_codes(Branch("", "0"), 1));
  add(SetExpr::shift(SetExpr::branch_codes(Branch("", "0"), 1), 1));
  add(SetExpr::branch_codes(Branch("01", "10"), 2));
  add(SetExpr::blocks(geo21, SetExpr::branch_codes(Branch("0", "01"), 2)));
  add(SetExpr::blocks(tri, SetExpr::branch_codes(Branch("", "10"), 2)));
  return corpus;
}

Report check_axioms(const DensityEvaluatorRef& evaluator, const std::vector<SetExpr>& corpus,
                    std::size_t pair_budget) {
  Timer timer;
  Report report;
  report.suite = "axioms:" + evaluator.name;

  std::vector<DensityValue> singles;
  singles.reserve(corpus.size());
  for (const SetExpr& e : corpus) singles.push_back(evaluator.eval(e));

  // delta(N) = 1.
  DensityValue full = evaluator.eval(SetExpr::full());
  report.add(record("normalized", "full", "lo = 1", density_text(full), full.lo == 1));

  // delta(F) = 0 on finite corpus entries.
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (is_finite(corpus[i]) != true) continue;
    report.add(record("vanishes-on-finite", print_expr(corpus[i]), "hi = 0",
                      density_text(singles[i]), singles[i].hi == 0));
  }

  // Monotonicity and subadditivity over pairs.
  std::size_t pairs_done = 0;
  for (std::size_t i = 0; i < corpus.size() && pairs_done < pair_budget; ++i) {
    for (std::size_t j = i + 1; j < corpus.size() && pairs_done < pair_budget; ++j, ++pairs_done) {
      const SetExpr& a = corpus[i];
      const SetExpr& b = corpus[j];
      const std::string inputs = print_expr(a) + " ; " + print_expr(b);
      DensityValue vu = evaluator.eval(SetExpr::union_of(a, b));
      DensityValue vi = evaluator.eval(SetExpr::inter(a, b));
      DensityValue vd = evaluator.eval(SetExpr::diff(a, b));
      const DensityValue& va = singles[i];
      const DensityValue& vb = singles[j];

      bool mono = vi.lo <= va.hi && vd.lo <= va.hi && va.lo <= vu.hi && vb.lo <= vu.hi;
      if (!mono) {
        report.add(record("monotone", inputs, "sub <= super", "violated", false));
      }
      bool subadd = vu.lo <= va.hi + vb.hi;
      if (!subadd) {
        report.add(record("subadditive", inputs,
                          "lo(union) <= " + rat_str(Rat(va.hi + vb.hi)), density_text(vu),
                          false));
      }
      if (mono && subadd) {
        report.add(record("monotone+subadditive", inputs, "consistent", "consistent", true));
      }
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

Report check_translation(const DensityEvaluatorRef& evaluator,
                         const std::vector<SetExpr>& corpus, std::uint64_t max_shift) {
  Timer timer;
  Report report;
  report.suite = "translation:" + evaluator.name;
  for (const SetExpr& e : corpus) {
    DensityValue base = evaluator.eval(e);
    for (std::uint64_t s = 1; s <= max_shift; ++s) {
      for (Int k : {Int(s), Int(-Int(s))}) {
        DensityValue shifted = evaluator.eval_shifted(e, k);
        const std::string inputs = print_expr(e) + " ; k=" + k.get_str();
        if (base.is_exact() && shifted.is_exact()) {
          report.add(record("translate-exact", inputs, density_text(base),
                            density_text(shifted), base.lo == shifted.lo));
        } else {
          report.add(record("translate-consistent", inputs, density_text(base),
                            density_text(shifted), base.intersects(shifted)));
        }
      }
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

Report check_null_ideal(const DensityEvaluatorRef& evaluator, const IdealOracle& ideal,
                        const std::vector<SetExpr>& corpus, const Budget& budget) {
  Timer timer;
  Report report;
  report.suite = "null-ideal:" + evaluator.name;
  for (const SetExpr& e : corpus) {
    Verdict verdict = ideal_member(ideal, e, budget);
    if (!verdict.decided()) {
      CheckRecord rec = record("null-ideal", print_expr(e), "decided", "unknown", true);
      rec.status = CheckRecord::Status::Skip;
      report.add(std::move(rec));
      continue;
    }
    DensityValue v = evaluator.eval(e);
    const bool zero = v.is_exact() && v.lo == 0;
    const bool in_ideal = verdict.decision == Decision::In;
    CheckRecord rec = record("null-ideal", print_expr(e),
                             in_ideal ? "exact 0 iff in (in)" : "exact 0 iff in (not in)",
                             density_text(v), zero == in_ideal);
    if (verdict.certificate) rec.certificate = verdict.certificate->type_name();
    report.add(std::move(rec));
  }
  report.wall_ms = timer.ms();
  return report;
}

Report gallery_block_set(std::uint64_t ratio_terms, std::uint64_t max_shift,
                         std::uint64_t interval_probe) {
  Timer timer;
  Report report;
  report.suite = "gallery:block-set";
  const IntervalScheme scheme = IntervalScheme::geometric(2, 1);
  const SetExpr astar = SetExpr::blocks(scheme, SetExpr::ap(2, 2));
  Budget budget;
  budget.element_cap = 10'000'000;

  DensityValue upper = eval_classical(ClassicalKind::Asymptotic, astar);
  report.add(record("upper-density", print_expr(astar), "exact 2/3", density_text(upper),
                    upper.is_exact() && upper.lo == make_rat(2, 3)));
  DensityValue lower = eval_classical(ClassicalKind::LowerAsymptotic, astar);
  report.add(record("lower-density", print_expr(astar), "exact 1/3", density_text(lower),
                    lower.is_exact() && lower.lo == make_rat(1, 3)));

  for (std::uint64_t n = 1; n <= ratio_terms; ++n) {
    Int len_prev = scheme.length(Int(2 * n - 1));
    Int len_even = scheme.length(Int(2 * n));
    Int len_next = scheme.length(Int(2 * n + 1));
    Rat left = make_rat(len_even, len_prev + len_even);
    Rat right = make_rat(len_even, len_even + len_next);
    report.add(record("ratio-identity-left", "n=" + std::to_string(n), "2/3", rat_str(left),
                      left == make_rat(2, 3)));
    report.add(record("ratio-identity-right", "n=" + std::to_string(n), "1/3", rat_str(right),
                      right == make_rat(1, 3)));
  }

  for (std::uint64_t k = 1; k <= max_shift; ++k) {
    SetExpr b = SetExpr::diff(SetExpr::shift(astar, Int(k)), astar);
    bool bound_holds = true;
    std::string witness;
    for (std::uint64_t n = 1; n <= interval_probe && bound_holds; ++n) {
      auto iv = scheme.interval(Int(n));
      Int count = b.count_upto(iv.second - 1, budget) - b.count_upto(iv.first - 1, budget);
      Rat ratio = make_rat(count, iv.second - iv.first);
      Rat limit = make_rat(Int(k), pow2(n));
      if (ratio > limit) {
        bound_holds = false;
        witness = "n=" + std::to_string(n) + " ratio " + rat_str(ratio);
      }
    }
    report.add(record("shift-difference-bound", "k=" + std::to_string(k),
                      "|B∩I_n|/|I_n| <= k/2^n", bound_holds ? "holds" : witness, bound_holds));
    Verdict v = ideal_member(IdealOracle::density_zero(), b, budget);
    report.add(record("shift-difference-null", "k=" + std::to_string(k), "in density-zero",
                      v.decision == Decision::In ? "in" : "not decided",
                      v.decision == Decision::In));
  }
  report.wall_ms = timer.ms();
  return report;
}

Report gallery_gap_set_for(const IntervalScheme& scheme, const Int& limit,
                           std::uint64_t max_shift) {
  Timer timer;
  Report report;
  report.suite = "gallery:gap-set:" + scheme.text();

  // Boundary values k_n up to the limit.
  std::vector<Int> boundary_values;
  for (Int n = 1;; ++n) {
    Int b = scheme.boundary(n);
    if (b > limit) break;
    boundary_values.push_back(std::move(b));
  }

  // Analytic half: gaps strictly increase over the sampled range.
  bool gaps_increasing = true;
  for (std::size_t i = 2; i < boundary_values.size() && gaps_increasing; ++i) {
    gaps_increasing = (boundary_values[i] - boundary_values[i - 1]) >
                      (boundary_values[i - 1] - boundary_values[i - 2]);
  }
  report.add(record("gaps-strictly-increasing", scheme.text(), "true",
                    gaps_increasing ? "true" : "false", gaps_increasing));

  // Brute force: coincidence count per shift.
  for (std::uint64_t s = 1; s <= max_shift; ++s) {
    for (const Int& l : {Int(s), Int(-Int(s))}) {
      std::size_t coincidences = 0;
      std::string sample;
      // Count b_j in [1, limit] with b_j - l also a boundary value.
      std::size_t i = 0;
      for (const Int& bj : boundary_values) {
        Int target = bj - l;
        if (target < 1) continue;
        while (i < boundary_values.size() && boundary_values[i] < target) ++i;
        if (i < boundary_values.size() && boundary_values[i] == target) {
          ++coincidences;
          if (!sample.empty()) sample += ",";
          sample += bj.get_str();
        }
        if (i == boundary_values.size()) break;
      }
      report.add(record("gap-shift", "l=" + l.get_str(),
                        "<= 1 coincidence", std::to_string(coincidences) + " at {" + sample + "}",
                        coincidences <= 1));
    }
  }
  report.wall_ms = timer.ms();
  return report;
}

Report gallery_gap_set(const Int& limit, std::uint64_t max_shift) {
  return gallery_gap_set_for(IntervalScheme::triangular(), limit, max_shift);
}

}  // namespace densitylab
