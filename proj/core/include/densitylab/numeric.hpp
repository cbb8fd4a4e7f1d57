#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace densitylab {

// All counts, bounds and indices are arbitrary-precision integers; every
// density and ratio is an exact rational. Floating point appears only in
// human-readable output.
using Int = mpz_class;
using Rat = mpq_class;

// Raised when an enumeration-style fallback would visit more candidates than
// the configured cap allows.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised on invalid construction arguments (unsorted finite sets, zero steps,
// out-of-range parameters, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Budget {
  // Cap on candidates visited by enumeration fallbacks.
  unsigned long element_cap = 1'000'000;
  // How many blocks / pieces / intervals probing loops examine.
  unsigned long probe = 64;
};

Int pow_int(const Int& base, unsigned long exp);
Int pow2(unsigned long exp);

// Number of bits of n (0 for n <= 0); bit_length(1) == 1.
std::size_t bit_length(const Int& n);

// Checked narrowing; throws BudgetExceededError when n does not fit.
unsigned long to_ulong_checked(const Int& n, const char* what);

Rat make_rat(Int num, Int den);

// Canonical "p/q" rendering (q >= 1, lowest terms), e.g. "2/3", "0/1".
std::string rat_str(const Rat& q);

// Accepts "p/q" or a bare integer "p".
Rat parse_rat(const std::string& text);

// If r = p / 2^q in lowest terms, returns q; nullopt for non-dyadic r.
std::optional<unsigned long> dyadic_exponent(const Rat& r);

// Exact sum of 1/i for lo <= i <= hi, by divide and conquer.
Rat harmonic_between(const Int& lo, const Int& hi);

// Largest/smallest rational with denominator 10^digits below/above q.
Rat round_down_decimal(const Rat& q, unsigned digits);
Rat round_up_decimal(const Rat& q, unsigned digits);

double to_double(const Rat& q);

}  // namespace densitylab
