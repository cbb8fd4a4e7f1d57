#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "densitylab/set_expr.hpp"

namespace densitylab {

// Exact "eventually periodic" normal form: the set equals
//   { x < threshold : x in head }  union  { x >= threshold : residues[x % period] }.
// Everything the analyzer emits is exact; when a set does not fit the form
// (or would exceed the limits) the analyzer declines rather than approximate.
struct PeriodicProfile {
  std::uint64_t period = 1;
  std::uint64_t threshold = 1;
  std::vector<bool> residues;       // size == period
  std::vector<std::uint64_t> head;  // sorted elements < threshold

  bool member(std::uint64_t x) const;
  std::size_t residue_count() const;
  bool eventually_empty() const { return residue_count() == 0; }
  bool eventually_full() const { return residue_count() == period; }
  // First periodic element with residue r (counted among set residues).
  std::uint64_t first_periodic_with_residue(std::uint64_t r) const;
};

struct ProfileLimits {
  std::uint64_t max_period = 1u << 20;
  std::uint64_t max_threshold = 1u << 21;
  std::uint64_t max_head = 1u << 16;
};

std::optional<PeriodicProfile> periodic_profile(const SetExpr& e,
                                                const ProfileLimits& limits = {});

// Three-valued finiteness. Sound: a definite answer is always correct.
std::optional<bool> is_finite(const SetExpr& e);

// Whether the set provably contains scheme intervals of unbounded length.
bool has_unbounded_intervals(const SetExpr& e);

// Exact upper bound for provably finite sets (structural; nullopt otherwise).
std::optional<Int> finite_upper_bound(const SetExpr& e);

// Maximum of a provably finite set; nullopt for empty or undecided.
std::optional<Int> max_element_of(const SetExpr& e, const Budget& budget = {});

// An obviously infinite sub-expression contained in e (an ap, a blocks
// pattern, a codes set, or a shift of one); nullopt when no pattern is found.
std::optional<SetExpr> infinite_witness(const SetExpr& e);

// Strips outer shifts and unions/differences with provably finite sets; the
// result has the same asymptotic, logarithmic and Banach densities and the
// same ideal membership for ideals closed under finite modification and
// translation.
SetExpr density_core(const SetExpr& e);

// Strips outer shifts only, accumulating the net offset applied.
SetExpr peel_shifts(const SetExpr& e, Int* net_offset = nullptr);

// Interleaves density_core with shift peeling until a fixed point, recording
// the net shift.
SetExpr density_core_shifted(const SetExpr& e, Int* net_offset);

// First `count` members in increasing order (may return fewer when the search
// budget runs out before finding them).
std::vector<Int> first_elements(const SetExpr& e, std::size_t count,
                                const Budget& budget = {});

// Bound on |e ∩ [2^t, 2^{t+1})| valid for all t >= scale_start; the shape
// fragment is finite sets, branch-code sets, and unions / intersections /
// differences / shifts of those.
struct ScaleCountBound {
  Int per_scale;
  std::uint64_t scale_start;
};
std::optional<ScaleCountBound> dyadic_scale_bound(const SetExpr& e);

// Recognizes (A + k) \ A and A \ (A + k) for A = blocks over a gaps-diverging
// scheme (outer shifts are peeled first). Such boundary-sliver sets meet every
// scheme interval in at most |k| * (cutoff(k) + 1) points.
struct SliverPattern {
  IntervalScheme scheme;
  Int shift;               // the k above
  Int per_interval_bound;  // |k| * (cutoff + 1)
};
std::optional<SliverPattern> sliver_pattern(const SetExpr& e);

// Same-scheme block intersections collapse to an index intersection; other
// expressions are returned unchanged.
SetExpr simplify(const SetExpr& e);

// Exact asymptotic/logarithmic/Banach densities for the structured fragment:
// eventually periodic sets, blocks over a scheme with eventually periodic
// index, and branch-code sets, each possibly wrapped in shifts and finite
// modifications (which change no density). For geometric schemes the prefix
// ratio oscillates between exact geometric-series limits; for schemes whose
// interval lengths are sublinear in the boundaries the ratio converges to the
// index density.
struct ExactDensityProfile {
  Rat upper{0};
  Rat lower{0};
  Rat logarithmic{0};
  Rat banach{0};
  // A sub-expression of e with exact upper density pattern_density; present
  // whenever upper > 0, for positive-density certificates.
  std::optional<SetExpr> positive_pattern;
  Rat pattern_density{0};
};
std::optional<ExactDensityProfile> exact_density_profile(const SetExpr& e);

}  // namespace densitylab
