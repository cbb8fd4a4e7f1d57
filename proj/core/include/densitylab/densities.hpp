#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densitylab/families.hpp"
#include "densitylab/ideals.hpp"
#include "densitylab/set_expr.hpp"

namespace densitylab {

enum class DensityValueKind { Exact, Enclosure, LowerBound, Estimate };

// Exact rational density value or certified enclosing interval. An estimate
// is an uncertified empirical enclosure. LowerBound(lo) stands for [lo, 1].
struct DensityValue {
  DensityValueKind kind = DensityValueKind::Enclosure;
  Rat lo{0};
  Rat hi{1};

  static DensityValue exact(Rat v);
  static DensityValue enclosure(Rat lo, Rat hi);
  static DensityValue lower_bound(Rat lo);
  static DensityValue estimate(Rat lo, Rat hi);

  bool is_exact() const { return kind == DensityValueKind::Exact; }
  bool certified() const { return kind != DensityValueKind::Estimate; }
  bool intersects(const DensityValue& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
  bool operator==(const DensityValue& other) const {
    return kind == other.kind && lo == other.lo && hi == other.hi;
  }
};

// Two-valued density of an ideal: 0 on members, 1 outside, [0,1] when the
// oracle cannot decide.
DensityValue eval_two_valued(const IdealOracle& ideal, const SetExpr& e,
                             const Budget& budget = {});

// Partition density: sum of 2^-n over the pieces whose intersection with e
// stays outside the ideal. Components up to `terms` (plus any finitely many
// pieces e provably lives on) are decided; undecided components widen only
// the upper end of the enclosure.
DensityValue eval_omega_partition(const IdealOracle& ideal, const Partition& partition,
                                  const SetExpr& e, std::uint64_t terms = 16,
                                  const Budget& budget = {});

// Union of the pieces named by the binary expansion of a dyadic r in (0,1);
// its partition density evaluates to exactly r.
SetExpr richness_witness_omega(const Partition& partition, const Rat& r);

enum class ClassicalKind { Asymptotic, LowerAsymptotic, Logarithmic, Banach };

struct ClassicalOptions {
  Int horizon = 100000;
  // Window lengths probed by the Banach estimator.
  std::uint64_t banach_window_cap = 1u << 14;
  // Exact harmonic partial sums get expensive; the logarithmic estimator uses
  // its own (smaller) default horizon.
  Int log_horizon = 20000;
  Budget budget{};
};

// Exact closed forms for the structured fragment (eventually periodic sets,
// blocks over schemes with eventually periodic index, sparse code sets);
// an uncertified empirical enclosure from prefix ratios otherwise.
DensityValue eval_classical(ClassicalKind kind, const SetExpr& e,
                            const ClassicalOptions& options = {});

// Union of residue classes 1..p modulo q: true asymptotic density exactly p/q.
SetExpr density_witness_asymptotic(const Rat& r);

// i-th member (1-based) of the standard dyadic enumeration
// 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ...
Rat dyadic_value(std::size_t i);

// Density from a TAD family with assigned dyadic values: the supremum of r_x
// over members whose shifted intersection with e is provably positive.
class SupTadEvaluator {
 public:
  SupTadEvaluator(TadFamily family, std::vector<Rat> values);
  // Assigns dyadic_value(1..size) in order.
  explicit SupTadEvaluator(TadFamily family);

  const TadFamily& family() const { return family_; }
  const std::vector<Rat>& values() const { return values_; }

 private:
  TadFamily family_;
  std::vector<Rat> values_;
};

struct SupTadResult {
  DensityValue value;
  // Matched member and shift, when a positivity certificate was found.
  std::optional<std::pair<std::size_t, Int>> witness;
};

SupTadResult eval_sup_tad(const SupTadEvaluator& evaluator, const SetExpr& e,
                          std::uint64_t shift_budget = 8, std::uint64_t index_budget = 64,
                          const Budget& budget = {});

}  // namespace densitylab
