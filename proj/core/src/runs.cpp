#include "densitylab/runs.hpp"

#include <algorithm>

namespace densitylab {

void RunList::push(Int lo, Int hi) {
  if (lo > hi) return;
  if (!runs_.empty()) {
    Run& last = runs_.back();
    if (lo <= last.hi + 1) {
      if (lo < last.lo) throw DomainError("runs must be pushed in order");
      if (hi > last.hi) last.hi = std::move(hi);
      return;
    }
  }
  runs_.push_back(Run{std::move(lo), std::move(hi)});
}

Int RunList::total() const {
  Int t = 0;
  for (const Run& r : runs_) t += r.hi - r.lo + 1;
  return t;
}

bool RunList::contains(const Int& x) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), x,
                             [](const Int& v, const Run& r) { return v < r.lo; });
  if (it == runs_.begin()) return false;
  --it;
  return x <= it->hi;
}

Int RunList::max_element() const {
  if (runs_.empty()) throw DomainError("empty run list has no maximum");
  return runs_.back().hi;
}

std::vector<Int> RunList::elements(unsigned long cap) const {
  std::vector<Int> out;
  for (const Run& r : runs_) {
    for (Int x = r.lo; x <= r.hi; ++x) {
      if (out.size() >= cap) throw BudgetExceededError("element cap exceeded");
      out.push_back(x);
    }
  }
  return out;
}

RunList RunList::unite(const RunList& a, const RunList& b) {
  RunList out;
  std::size_t i = 0, j = 0;
  while (i < a.runs_.size() || j < b.runs_.size()) {
    const bool take_a = j >= b.runs_.size() ||
                        (i < a.runs_.size() && a.runs_[i].lo <= b.runs_[j].lo);
    const Run& r = take_a ? a.runs_[i++] : b.runs_[j++];
    out.push(r.lo, r.hi);
  }
  return out;
}

RunList RunList::intersect(const RunList& a, const RunList& b) {
  RunList out;
  std::size_t i = 0, j = 0;
  while (i < a.runs_.size() && j < b.runs_.size()) {
    const Run& x = a.runs_[i];
    const Run& y = b.runs_[j];
    Int lo = std::max(x.lo, y.lo);
    Int hi = std::min(x.hi, y.hi);
    if (lo <= hi) out.push(std::move(lo), std::move(hi));
    if (x.hi < y.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

RunList RunList::subtract(const RunList& a, const RunList& b) {
  RunList out;
  std::size_t j = 0;
  for (const Run& x : a.runs_) {
    Int lo = x.lo;
    while (j < b.runs_.size() && b.runs_[j].hi < lo) ++j;
    std::size_t k = j;
    while (k < b.runs_.size() && b.runs_[k].lo <= x.hi) {
      if (b.runs_[k].lo > lo) out.push(lo, b.runs_[k].lo - 1);
      lo = std::max(lo, Int(b.runs_[k].hi + 1));
      ++k;
    }
    if (lo <= x.hi) out.push(std::move(lo), x.hi);
  }
  return out;
}

RunList RunList::complement(const RunList& a, const Int& limit) {
  RunList out;
  Int next = 1;
  for (const Run& r : a.runs_) {
    if (r.lo > limit) break;
    if (r.lo > next) out.push(next, r.lo - 1);
    next = r.hi + 1;
    if (next > limit) break;
  }
  if (next <= limit) out.push(std::move(next), limit);
  return out;
}

RunList RunList::shift_clip(const RunList& a, const Int& k, const Int& limit) {
  RunList out;
  for (const Run& r : a.runs_) {
    Int lo = std::max(Int(r.lo + k), Int(1));
    Int hi = std::min(Int(r.hi + k), limit);
    if (lo <= hi) out.push(std::move(lo), std::move(hi));
  }
  return out;
}

bool RunList::operator==(const RunList& other) const {
  if (runs_.size() != other.runs_.size()) return false;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].lo != other.runs_[i].lo || runs_[i].hi != other.runs_[i].hi) return false;
  }
  return true;
}

}  // namespace densitylab
