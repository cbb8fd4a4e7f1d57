#include "densitylab/scheme.hpp"

namespace densitylab {

IntervalScheme IntervalScheme::geometric(Int base, Int offset) {
  if (base < 2) throw DomainError("geometric scheme requires base >= 2");
  if (offset < 0) throw DomainError("geometric scheme requires offset >= 0");
  IntervalScheme s;
  s.kind_ = Kind::Geometric;
  s.a_ = std::move(base);
  s.b_ = std::move(offset);
  return s;
}

IntervalScheme IntervalScheme::polynomial(unsigned long exponent) {
  if (exponent < 2) throw DomainError("polynomial scheme requires exponent >= 2");
  IntervalScheme s;
  s.kind_ = Kind::Polynomial;
  s.exp_ = exponent;
  return s;
}

IntervalScheme IntervalScheme::triangular() {
  IntervalScheme s;
  s.kind_ = Kind::Triangular;
  return s;
}

IntervalScheme IntervalScheme::linear(Int step) {
  if (step < 1) throw DomainError("linear scheme requires step >= 1");
  IntervalScheme s;
  s.kind_ = Kind::Linear;
  s.a_ = std::move(step);
  return s;
}

Int IntervalScheme::boundary(const Int& n) const {
  if (n < 1) throw DomainError("scheme boundary index must be >= 1");
  switch (kind_) {
    case Kind::Geometric:
      return pow_int(a_, to_ulong_checked(n, "geometric boundary index")) + b_;
    case Kind::Polynomial:
      return pow_int(n, exp_);
    case Kind::Triangular:
      return n * (n + 1) / 2;
    case Kind::Linear:
      return a_ * n;
  }
  throw DomainError("unreachable scheme kind");
}

std::pair<Int, Int> IntervalScheme::interval(const Int& n) const {
  return {boundary(n), boundary(n + 1)};
}

Int IntervalScheme::length(const Int& n) const {
  return boundary(n + 1) - boundary(n);
}

std::optional<Int> IntervalScheme::locate(const Int& x) const {
  if (x < boundary(1)) return std::nullopt;
  // Find hi with boundary(hi+1) > x by doubling, then binary search.
  Int lo = 1, hi = 1;
  while (boundary(hi + 1) <= x) {
    lo = hi + 1;
    hi *= 2;
  }
  // Invariant: boundary(lo) <= x < boundary(hi+1).
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (boundary(mid) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

Int IntervalScheme::cutoff_for_gap(const Int& bound) const {
  if (bound < 0) return 0;
  if (kind_ == Kind::Linear) {
    if (a_ > bound) return 0;
    throw DomainError("linear scheme gaps never exceed " + bound.get_str());
  }
  // Lengths are nondecreasing: find the least n1 with length(n1) > bound.
  if (length(1) > bound) return 0;
  Int lo = 1, hi = 2;
  while (length(hi) <= bound) {
    lo = hi;
    hi *= 2;
  }
  // length(lo) <= bound < length(hi); least index with length > bound is in (lo, hi].
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    if (length(mid) <= bound) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi - 1;
}

bool IntervalScheme::operator==(const IntervalScheme& other) const {
  return kind_ == other.kind_ && a_ == other.a_ && b_ == other.b_ && exp_ == other.exp_;
}

std::string IntervalScheme::text() const {
  switch (kind_) {
    case Kind::Geometric:
      return "geo(" + a_.get_str() + "," + b_.get_str() + ")";
    case Kind::Polynomial:
      return "poly(" + std::to_string(exp_) + ")";
    case Kind::Triangular:
      return "tri";
    case Kind::Linear:
      return "lin(" + a_.get_str() + ")";
  }
  return "?";
}

}  // namespace densitylab
