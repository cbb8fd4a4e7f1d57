#pragma once

#include <optional>
#include <string>
#include <utility>

#include "densitylab/numeric.hpp"

namespace densitylab {

// A strictly increasing boundary sequence k_1 < k_2 < ... defining the
// half-open intervals I_n = [k_n, k_{n+1}). The intervals tile [k_1, oo).
//
// Variants:
//   geometric(b, c):  k_n = b^n + c       (b >= 2, c >= 0)
//   polynomial(e):    k_n = n^e           (e >= 2)
//   triangular():     k_n = n(n+1)/2
//   linear(c):        k_n = c*n           (c >= 1)
//
// Interval lengths are nondecreasing in n for every variant; they diverge for
// all variants except linear.
class IntervalScheme {
 public:
  enum class Kind { Geometric, Polynomial, Triangular, Linear };

  static IntervalScheme geometric(Int base, Int offset);
  static IntervalScheme polynomial(unsigned long exponent);
  static IntervalScheme triangular();
  static IntervalScheme linear(Int step);

  Kind kind() const { return kind_; }
  const Int& base() const { return a_; }    // geometric base / linear step
  const Int& offset() const { return b_; }  // geometric offset
  unsigned long exponent() const { return exp_; }

  bool gaps_diverge() const { return kind_ != Kind::Linear; }

  // k_n for n >= 1.
  Int boundary(const Int& n) const;
  // [k_n, k_{n+1}) as an inclusive-exclusive pair.
  std::pair<Int, Int> interval(const Int& n) const;
  // k_{n+1} - k_n.
  Int length(const Int& n) const;

  // Index n with k_n <= x < k_{n+1}; nullopt when x < k_1.
  std::optional<Int> locate(const Int& x) const;

  // Least N >= 0 such that length(n) > bound for every n > N. Throws
  // DomainError for linear schemes whose constant gap never exceeds bound.
  Int cutoff_for_gap(const Int& bound) const;

  bool operator==(const IntervalScheme& other) const;

  std::string text() const;

 private:
  Kind kind_;
  Int a_;
  Int b_;
  unsigned long exp_ = 0;
};

}  // namespace densitylab
