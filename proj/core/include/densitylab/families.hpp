#pragma once

#include <cstdint>
#include <vector>

#include "densitylab/branch.hpp"
#include "densitylab/ideals.hpp"
#include "densitylab/runs.hpp"
#include "densitylab/scheme.hpp"
#include "densitylab/set_expr.hpp"

namespace densitylab {

// Raised when a certificate fails its confirmation run.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Seed almost-disjoint family: branch x is encoded as the set of its prefix
// codes A_x = {2^n + val(x|n) : n >= 1}. Two distinct branches intersect in
// exactly the codes of their common prefix.
SetExpr seed_set(const Branch& x);
std::vector<Int> seed_intersection(const Branch& x, const Branch& y);

// Countable family C_x = union of I_{2n} over n in A_x, over a boundary
// scheme with diverging gaps. The odd-indexed intervals act as shift buffers:
// for every pair and every integer shift the intersection is finite, with an
// explicit certificate.
class TadFamily {
 public:
  // Requires diverging gaps and pairwise distinct canonical branches.
  TadFamily(IntervalScheme scheme, std::vector<Branch> branches);

  const IntervalScheme& scheme() const { return scheme_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  SetExpr member_set(std::size_t i) const;

 private:
  IntervalScheme scheme_;
  std::vector<Branch> branches_;
};

// Explicit finite superset of C_x ∩ (C_y + k): everything below `bound`
// (bound = k_{2N+2} for the least N with |I_n| > |k| past N), plus the
// clipped self-overlaps I_{2c} ∩ (I_{2c} + k) of the shared seed codes c > N.
struct PairCertificate {
  Int shift;
  Int cutoff;  // N(k)
  Int bound;   // k_{2N(k)+2}
  std::vector<Run> shared_blocks;

  bool admits(const Int& x) const;
  RunList admitted_runs(const Int& limit) const;
};

PairCertificate make_pair_certificate(const TadFamily& family, std::size_t i, std::size_t j,
                                      const Int& k);

// Builds the certificate and confirms it against the exact run decomposition
// of C_x ∩ (C_y + k) up to `limit`, with pointwise membership spot checks.
// Throws VerificationError if any intersection element escapes the superset.
PairCertificate verify_tad_pair(const TadFamily& family, std::size_t i, std::size_t j,
                                const Int& k, const Int& limit = Int(1000000),
                                const Budget& budget = {});

// Shift-parameterized proof object: the cutoff function k -> N(k) plus the
// finite seed intersection establish finiteness of C_x ∩ (C_y + k) for every
// integer k.
struct AllShiftCertificate {
  IntervalScheme scheme;
  Branch x;
  Branch y;
  std::vector<Int> shared_codes;

  Int cutoff(const Int& k) const;
  PairCertificate instantiate(const Int& k) const;
};

// Issues the symbolic certificate and spot-verifies it with verify_tad_pair
// for |k| <= spot_shifts.
AllShiftCertificate certify_all_shifts(const TadFamily& family, std::size_t i, std::size_t j,
                                       std::uint64_t spot_shifts = 16,
                                       const Int& limit = Int(100000),
                                       const Budget& budget = {});

// Interval-pattern positivity of a member: C_x contains the full interval
// I_{2n} for every seed code n. The first `probe` pattern intervals are
// verified contained by exact counting.
Verdict member_positivity(const TadFamily& family, std::size_t i, std::uint64_t probe = 10,
                          const Budget& budget = {});

}  // namespace densitylab
