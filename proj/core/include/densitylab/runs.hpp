#pragma once

#include <vector>

#include "densitylab/numeric.hpp"

namespace densitylab {

// Inclusive range of naturals.
struct Run {
  Int lo;
  Int hi;
};

// Canonical list of maximal runs: sorted, disjoint, never adjacent.
class RunList {
 public:
  RunList() = default;

  // Appends a run that must start after the current last run; merges when
  // adjacent or overlapping.
  void push(Int lo, Int hi);

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  std::size_t size() const { return runs_.size(); }

  Int total() const;
  bool contains(const Int& x) const;
  Int max_element() const;  // throws DomainError when empty

  // Expands to individual elements; throws BudgetExceededError past the cap.
  std::vector<Int> elements(unsigned long cap) const;

  static RunList unite(const RunList& a, const RunList& b);
  static RunList intersect(const RunList& a, const RunList& b);
  static RunList subtract(const RunList& a, const RunList& b);
  // Complement within [1, limit].
  static RunList complement(const RunList& a, const Int& limit);
  // (a + k) clipped to [1, limit].
  static RunList shift_clip(const RunList& a, const Int& k, const Int& limit);

  bool operator==(const RunList& other) const;

 private:
  std::vector<Run> runs_;
};

}  // namespace densitylab
