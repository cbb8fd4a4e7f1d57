#include "densitylab/numeric.hpp"

namespace densitylab {

Int pow_int(const Int& base, unsigned long exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Int pow2(unsigned long exp) {
  Int out = 1;
  out <<= exp;
  return out;
}

std::size_t bit_length(const Int& n) {
  if (n <= 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

unsigned long to_ulong_checked(const Int& n, const char* what) {
  if (n < 0 || !n.fits_ulong_p()) {
    throw BudgetExceededError(std::string(what) + ": value out of range");
  }
  return n.get_ui();
}

Rat make_rat(Int num, Int den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make_rat(Int(text), 1);
    return make_rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational: " + text);
  }
}

std::optional<unsigned long> dyadic_exponent(const Rat& r) {
  const Int& den = r.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return mpz_scan1(den.get_mpz_t(), 0);
}

Rat harmonic_between(const Int& lo, const Int& hi) {
  if (lo > hi) return Rat(0);
  if (lo == hi) return make_rat(1, lo);
  Int mid = (lo + hi) / 2;
  return harmonic_between(lo, mid) + harmonic_between(mid + 1, hi);
}

Rat round_down_decimal(const Rat& q, unsigned digits) {
  Int scale = pow_int(10, digits);
  Int num = q.get_num() * scale;
  Int floored;
  mpz_fdiv_q(floored.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return make_rat(floored, scale);
}

Rat round_up_decimal(const Rat& q, unsigned digits) {
  Int scale = pow_int(10, digits);
  Int num = q.get_num() * scale;
  Int ceiled;
  mpz_cdiv_q(ceiled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return make_rat(ceiled, scale);
}

double to_double(const Rat& q) { return q.get_d(); }

}  // namespace densitylab
