#pragma once

#include <memory>
#include <vector>

#include "densitylab/branch.hpp"
#include "densitylab/numeric.hpp"
#include "densitylab/runs.hpp"
#include "densitylab/scheme.hpp"

namespace densitylab {

// A symbolic, membership-decidable subset of the naturals {1, 2, 3, ...}.
//
// Expressions are immutable trees; every operation on them is pure, total and
// deterministic, so values can be shared and evaluated concurrently without
// coordination.
//
// Variants:
//   empty, full
//   finite{a_1 < a_2 < ...}
//   ap(a, d)                  {a, a+d, a+2d, ...},  a, d >= 1
//   blocks(scheme, index)     union of scheme intervals I_n over n in index
//   codes(branch, m)          {m * code(prefix) : nonempty prefix of branch}
//   union / inter / diff / compl
//   shift(e, k)               (e + k) intersected with the naturals
class SetExpr {
 public:
  enum class Kind {
    Empty,
    Full,
    Finite,
    Ap,
    Blocks,
    BranchCodes,
    Union,
    Inter,
    Diff,
    Complement,
    Shift,
  };

  static SetExpr empty();
  static SetExpr full();
  // Elements must be strictly increasing and >= 1.
  static SetExpr finite(std::vector<Int> elements);
  static SetExpr ap(Int first, Int step);
  static SetExpr blocks(IntervalScheme scheme, SetExpr index);
  static SetExpr branch_codes(Branch branch, Int multiplier);
  static SetExpr union_of(SetExpr lhs, SetExpr rhs);
  static SetExpr inter(SetExpr lhs, SetExpr rhs);
  static SetExpr diff(SetExpr lhs, SetExpr rhs);
  static SetExpr complement(SetExpr inner);
  static SetExpr shift(SetExpr inner, Int offset);

  Kind kind() const;

  const std::vector<Int>& finite_elements() const;
  const Int& ap_first() const;
  const Int& ap_step() const;
  const IntervalScheme& blocks_scheme() const;
  const SetExpr& blocks_index() const;
  const Branch& branch() const;
  const Int& branch_multiplier() const;
  const SetExpr& lhs() const;
  const SetExpr& rhs() const;
  const SetExpr& inner() const;
  const Int& shift_offset() const;

  // Membership of n (total; n < 1 is simply absent).
  bool contains(const Int& n) const;

  // |e intersected with [1, n]|, exact. Uses closed forms and run
  // decomposition; signals BudgetExceededError when only an enumeration
  // fallback remains and it would exceed the cap.
  Int count_upto(const Int& n, const Budget& budget = {}) const;

  // Exact decomposition of e intersected with [1, limit] into maximal runs.
  RunList runs_upto(const Int& limit, const Budget& budget = {}) const;

  // All members <= limit in increasing order.
  std::vector<Int> elements_upto(const Int& limit, const Budget& budget = {}) const;

  // Structural equality.
  bool operator==(const SetExpr& other) const;

  // Stable identity of the shared node, usable as a memoization key while a
  // copy of the expression is kept alive.
  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  friend struct SetExprFactory;
  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace densitylab
