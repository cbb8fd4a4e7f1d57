#pragma once

#include <compare>
#include <string>
#include <vector>

#include "densitylab/numeric.hpp"

namespace densitylab {

// An eventually periodic infinite binary sequence, stored as a finite head
// followed by a repeating cycle and normalized to the canonical form with the
// shortest cycle and then the shortest head. Distinct canonical forms denote
// distinct sequences.
//
// The sequence encodes a subset of the naturals through prefix codes:
// the length-n prefix s maps to code(s) = 2^n + val(s), where val reads s as
// a big-endian binary numeral. Codes are injective across all finite strings,
// so two distinct branches share exactly the codes of their common prefix.
class Branch {
 public:
  // Bits are given as '0'/'1' strings; the cycle must be nonempty.
  Branch(std::string head, std::string cycle);

  // Parses the "head|cycle" literal form, e.g. "01|101" or "|10".
  static Branch parse(const std::string& text);

  const std::string& head() const { return head_; }
  const std::string& cycle() const { return cycle_; }
  std::string text() const { return head_ + "|" + cycle_; }

  // i-th bit of the sequence, i >= 1.
  bool bit(unsigned long i) const;

  // code(prefix of length len) = 2^len + val(prefix), len >= 1.
  Int prefix_code(unsigned long len) const;

  // Length of the longest common prefix with a distinct branch; throws
  // DomainError when the branches are equal.
  unsigned long common_prefix_length(const Branch& other) const;

  // Whether n is a prefix code of this branch, scaled by multiplier:
  // n = multiplier * code(prefix) for some prefix.
  bool is_scaled_code(const Int& n, const Int& multiplier) const;

  bool operator==(const Branch& other) const {
    return head_ == other.head_ && cycle_ == other.cycle_;
  }
  std::strong_ordering operator<=>(const Branch& other) const;

 private:
  std::string head_;
  std::string cycle_;
};

}  // namespace densitylab
