#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "densitylab/densities.hpp"
#include "densitylab/ideals.hpp"
#include "densitylab/set_expr.hpp"

namespace densitylab {

struct CheckRecord {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  std::string inputs;
  std::string expected;
  std::string got;
  Status status = Status::Pass;
  std::string certificate;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> checks;
  double wall_ms = 0;

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;
  bool ok() const { return failed() == 0; }

  void add(CheckRecord record);
  std::string text() const;
};

// Density evaluator handle for the harness. eval_shifted evaluates the
// translate of an expression, letting budgeted evaluators enlarge their
// search window by the shift magnitude (certificate transfer).
struct DensityEvaluatorRef {
  std::string name;
  std::function<DensityValue(const SetExpr&)> eval;
  std::function<DensityValue(const SetExpr&, const Int&)> eval_shifted;
  bool claims_translation_invariance = false;
};

DensityEvaluatorRef two_valued_ref(IdealOracle ideal, Budget budget = {});
DensityEvaluatorRef omega_ref(IdealOracle ideal, Partition partition, std::uint64_t terms = 16,
                              Budget budget = {});
DensityEvaluatorRef sup_tad_ref(std::shared_ptr<const SupTadEvaluator> evaluator,
                                std::uint64_t shift_budget = 8,
                                std::uint64_t index_budget = 64, Budget budget = {});

// ~50 expressions spanning every variant: block sets, translates, boolean
// combinations, richness witnesses, sparse code sets and TAD members.
std::vector<SetExpr> default_corpus();

// Normalization, vanishing on finite sets, monotonicity and subadditivity in
// enclosure-consistent form over corpus singletons and pairs.
Report check_axioms(const DensityEvaluatorRef& evaluator, const std::vector<SetExpr>& corpus,
                    std::size_t pair_budget = static_cast<std::size_t>(-1));

// Enclosures of a translate and the original must intersect; exact values
// must agree.
Report check_translation(const DensityEvaluatorRef& evaluator,
                         const std::vector<SetExpr>& corpus, std::uint64_t max_shift);

// On decided corpus entries, density Exact(0) iff the set is in the ideal.
Report check_null_ideal(const DensityEvaluatorRef& evaluator, const IdealOracle& ideal,
                        const std::vector<SetExpr>& corpus, const Budget& budget = {});

// In-proof computations for the alternating block set over geo(2,1):
// exact upper/lower densities 2/3 and 1/3, the interval ratio identities, and
// the shift-difference bound |B ∩ I_n| / |I_n| <= k/2^n with membership of B
// in the density-zero ideal.
Report gallery_block_set(std::uint64_t ratio_terms = 20, std::uint64_t max_shift = 8,
                         std::uint64_t interval_probe = 20);

// Boundary-value gap sets: |(B+l) ∩ B ∩ [1,limit]| <= 1 for 0 < |l| <= max_shift,
// where B is the set of boundary values k_n of the scheme. The shipped default
// uses the triangular numbers.
Report gallery_gap_set(const Int& limit = Int(1000000), std::uint64_t max_shift = 100);
Report gallery_gap_set_for(const IntervalScheme& scheme, const Int& limit,
                           std::uint64_t max_shift);

}  // namespace densitylab
