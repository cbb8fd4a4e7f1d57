#include "densitylab/densities.hpp"

#include <algorithm>

#include "densitylab/analysis.hpp"

namespace densitylab {

DensityValue DensityValue::exact(Rat v) {
  if (v < 0 || v > 1) throw DomainError("density outside [0,1]");
  return DensityValue{DensityValueKind::Exact, v, v};
}

DensityValue DensityValue::enclosure(Rat lo, Rat hi) {
  if (lo < 0 || hi > 1 || lo > hi) throw DomainError("malformed density enclosure");
  if (lo == hi) return exact(std::move(lo));
  return DensityValue{DensityValueKind::Enclosure, std::move(lo), std::move(hi)};
}

DensityValue DensityValue::lower_bound(Rat lo) {
  if (lo < 0 || lo > 1) throw DomainError("density bound outside [0,1]");
  return DensityValue{DensityValueKind::LowerBound, std::move(lo), Rat(1)};
}

DensityValue DensityValue::estimate(Rat lo, Rat hi) {
  lo = std::max(Rat(0), lo);
  hi = std::min(Rat(1), std::max(lo, hi));
  return DensityValue{DensityValueKind::Estimate, std::move(lo), std::move(hi)};
}

DensityValue eval_two_valued(const IdealOracle& ideal, const SetExpr& e, const Budget& budget) {
  Verdict v = ideal_member(ideal, e, budget);
  switch (v.decision) {
    case Decision::In:
      return DensityValue::exact(Rat(0));
    case Decision::NotIn:
      return DensityValue::exact(Rat(1));
    case Decision::Unknown:
      return DensityValue::enclosure(Rat(0), Rat(1));
  }
  return DensityValue::enclosure(Rat(0), Rat(1));
}

DensityValue eval_omega_partition(const IdealOracle& ideal, const Partition& partition,
                                  const SetExpr& e, std::uint64_t terms, const Budget& budget) {
  if (terms < 1) throw DomainError("omega evaluation needs terms >= 1");

  auto support = piece_support(e, partition, budget);
  std::vector<std::uint64_t> indices;
  for (std::uint64_t n = 1; n <= terms; ++n) indices.push_back(n);
  if (support) {
    for (std::uint64_t n : *support) {
      if (n > terms) indices.push_back(n);
    }
  }

  Rat sum(0);
  Rat unknown(0);
  for (std::uint64_t n : indices) {
    if (!partition.is_dyadic() && n > partition.explicit_count()) continue;
    Verdict v = ideal_member(ideal, SetExpr::inter(e, partition.piece(n)), budget);
    Rat mass = make_rat(1, pow2(n));
    if (v.decision == Decision::NotIn) {
      sum += mass;
    } else if (v.decision == Decision::Unknown) {
      unknown += mass;
    }
  }

  // The tail past the evaluated indices: empty when e provably lives on the
  // evaluated pieces or is finite; full when e is cofinite (a piece minus a
  // finite set never lands in an ideal that excludes the pieces); otherwise
  // undecided, widening the upper end only.
  const bool tail_exists = partition.is_dyadic() && true;
  const bool support_settled = support.has_value();
  const bool finite_settled = !support_settled && is_finite(e) == true;
  bool cofinite = false;
  if (tail_exists && !support_settled && !finite_settled) {
    if (auto p = periodic_profile(e); p && p->eventually_full()) cofinite = true;
  }
  Rat tail_mass = make_rat(1, pow2(terms));
  if (!tail_exists && partition.explicit_count() <= terms) {
    // every piece was evaluated
  } else if (support_settled || finite_settled) {
    // nothing beyond the evaluated indices
  } else if (cofinite) {
    sum += tail_mass;
  } else {
    unknown += tail_mass;
  }

  if (unknown == 0) return DensityValue::exact(sum);
  return DensityValue::enclosure(sum, std::min(Rat(1), Rat(sum + unknown)));
}

SetExpr richness_witness_omega(const Partition& partition, const Rat& r) {
  if (r <= 0 || r >= 1) throw DomainError("witness value must lie in (0,1)");
  auto q = dyadic_exponent(r);
  if (!q) throw DomainError("witness value must be dyadic p/2^q");
  const Int& p = r.get_num();
  std::optional<SetExpr> out;
  for (unsigned long i = 1; i <= *q; ++i) {
    if (mpz_tstbit(p.get_mpz_t(), *q - i)) {
      SetExpr piece = partition.piece(i);
      out = out ? SetExpr::union_of(*out, piece) : piece;
    }
  }
  return *out;  // r in (0,1) guarantees at least one set bit
}

namespace {

// The prefix ratio rises inside runs and falls in gaps, so its local peaks
// sit at run ends and its troughs just before run starts. The latest such
// point is the furthest-converged sample of the limsup / liminf.
Rat peak_ratio_estimate(const RunList& runs, const Int& horizon) {
  Rat last_peak(-1);
  Int cum = 0;
  for (const Run& run : runs.runs()) {
    if (run.lo > horizon) break;
    Int hi = std::min(run.hi, horizon);
    cum += hi - run.lo + 1;
    if (run.hi < horizon) last_peak = make_rat(cum, run.hi);
  }
  Rat at_horizon = make_rat(runs.total(), horizon);
  return std::max(last_peak, at_horizon);
}

Rat trough_ratio_estimate(const RunList& runs, const Int& horizon) {
  Rat last_trough(-1);
  Int cum = 0;
  for (const Run& run : runs.runs()) {
    if (run.lo > horizon) break;
    if (run.lo >= 2) last_trough = make_rat(cum, run.lo - 1);
    cum += std::min(run.hi, horizon) - run.lo + 1;
  }
  const Rat at_horizon = make_rat(runs.total(), horizon);
  const bool trailing_gap = runs.empty() || runs.runs().back().hi < horizon;
  if (last_trough < 0) return at_horizon;
  if (trailing_gap) return std::min(last_trough, at_horizon);
  return last_trough;
}

Rat banach_window_max(const RunList& runs, const Int& horizon, const Int& window) {
  const auto& rs = runs.runs();
  std::vector<Int> prefix(rs.size() + 1, Int(0));
  for (std::size_t i = 0; i < rs.size(); ++i) {
    prefix[i + 1] = prefix[i] + rs[i].hi - rs[i].lo + 1;
  }
  auto count_upto = [&](const Int& x) -> Int {
    std::size_t lo = 0, hi = rs.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (rs[mid].lo <= x) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == 0) return 0;
    const Run& run = rs[lo - 1];
    return prefix[lo - 1] + std::min(run.hi, x) - run.lo + 1;
  };
  Rat best(0);
  auto consider = [&](const Int& start) {
    if (start < 1 || start + window - 1 > horizon) return;
    Int count = count_upto(start + window - 1) - count_upto(start - 1);
    Rat r = make_rat(count, window);
    if (r > best) best = r;
  };
  for (const Run& r : rs) {
    if (r.lo > horizon) break;
    consider(r.lo);                // window left-aligned with a run
    consider(r.hi - window + 1);   // window right-aligned with a run
  }
  return best;
}

// Balanced merge keeps the exact rational's size near the unavoidable
// lcm scale instead of blowing up left to right.
Rat harmonic_mass(const std::vector<Run>& rs, std::size_t begin, std::size_t end, const Int& x) {
  if (begin >= end) return Rat(0);
  if (end - begin == 1) {
    const Run& r = rs[begin];
    if (r.lo > x) return Rat(0);
    return harmonic_between(r.lo, std::min(r.hi, x));
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return harmonic_mass(rs, begin, mid, x) + harmonic_mass(rs, mid, end, x);
}

DensityValue empirical_classical(ClassicalKind kind, const SetExpr& e,
                                 const ClassicalOptions& options) {
  const Int& horizon = kind == ClassicalKind::Logarithmic ? options.log_horizon : options.horizon;
  if (horizon < 4) throw DomainError("horizon too small for an estimate");
  RunList runs = e.runs_upto(horizon, options.budget);

  switch (kind) {
    case ClassicalKind::Asymptotic: {
      Rat v = peak_ratio_estimate(runs, horizon);
      return DensityValue::estimate(v, v);
    }
    case ClassicalKind::LowerAsymptotic: {
      Rat v = trough_ratio_estimate(runs, horizon);
      return DensityValue::estimate(v, v);
    }
    case ClassicalKind::Logarithmic: {
      // Exact harmonic mass of the runs, sampled at a few tail points; the
      // value is rounded to 64 decimal digits (comparisons elsewhere remain
      // exact; the rounding only bounds the stored rational's size).
      std::vector<Int> samples;
      for (Int x = horizon; x >= horizon / 8 && x >= 4; x /= 2) samples.push_back(x);
      Rat best(0);
      for (const Int& x : samples) {
        Rat mass = harmonic_mass(runs.runs(), 0, runs.size(), x);
        Rat ratio = mass / harmonic_between(1, x);
        if (ratio > best) best = ratio;
      }
      return DensityValue::estimate(round_down_decimal(best, 64), round_up_decimal(best, 64));
    }
    case ClassicalKind::Banach: {
      Int window = std::min(Int(options.banach_window_cap), Int(horizon / 4));
      if (window < 1) window = 1;
      Rat v = banach_window_max(runs, horizon, window);
      return DensityValue::estimate(v, v);
    }
  }
  throw DomainError("unreachable classical kind");
}

}  // namespace

DensityValue eval_classical(ClassicalKind kind, const SetExpr& e,
                            const ClassicalOptions& options) {
  if (auto prof = exact_density_profile(e)) {
    switch (kind) {
      case ClassicalKind::Asymptotic:
        return DensityValue::exact(prof->upper);
      case ClassicalKind::LowerAsymptotic:
        return DensityValue::exact(prof->lower);
      case ClassicalKind::Logarithmic:
        return DensityValue::exact(prof->logarithmic);
      case ClassicalKind::Banach:
        return DensityValue::exact(prof->banach);
    }
  }
  if (kind == ClassicalKind::Banach && has_unbounded_intervals(e)) {
    return DensityValue::exact(Rat(1));
  }
  if (is_finite(e) == true) return DensityValue::exact(Rat(0));
  return empirical_classical(kind, e, options);
}

SetExpr density_witness_asymptotic(const Rat& r) {
  if (r <= 0 || r >= 1) throw DomainError("witness value must lie in (0,1)");
  const Int& p = r.get_num();
  const Int& q = r.get_den();
  std::optional<SetExpr> out;
  for (Int i = 1; i <= p; ++i) {
    SetExpr residue = SetExpr::ap(i, q);
    out = out ? SetExpr::union_of(*out, residue) : residue;
  }
  return *out;
}

Rat dyadic_value(std::size_t i) {
  if (i < 1) throw DomainError("dyadic enumeration is 1-based");
  std::size_t level = 1;
  std::size_t offset = i;
  while (offset > (std::size_t{1} << (level - 1))) {
    offset -= std::size_t{1} << (level - 1);
    ++level;
  }
  return make_rat(Int(2 * offset - 1), pow2(level));
}

SupTadEvaluator::SupTadEvaluator(TadFamily family, std::vector<Rat> values)
    : family_(std::move(family)), values_(std::move(values)) {
  if (values_.size() != family_.size()) {
    throw DomainError("one assigned value per family member required");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] <= 0 || values_[i] >= 1 || !dyadic_exponent(values_[i])) {
      throw DomainError("assigned values must be dyadic rationals in (0,1)");
    }
    for (std::size_t j = i + 1; j < values_.size(); ++j) {
      if (values_[i] == values_[j]) throw DomainError("assigned values must be distinct");
    }
  }
}

SupTadEvaluator::SupTadEvaluator(TadFamily family) : family_(std::move(family)) {
  values_.reserve(family_.size());
  for (std::size_t i = 1; i <= family_.size(); ++i) values_.push_back(dyadic_value(i));
}

SupTadResult eval_sup_tad(const SupTadEvaluator& evaluator, const SetExpr& e,
                          std::uint64_t shift_budget, std::uint64_t index_budget,
                          const Budget& budget) {
  const TadFamily& family = evaluator.family();

  // A member, shifted or finitely modified, evaluates to exactly its assigned
  // value: the all-shift certificates rule out every other member and the
  // member meets itself at the compensating shift.
  Int net_shift = 0;
  SetExpr core = density_core_shifted(e, &net_shift);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (core == family.member_set(i)) {
      return SupTadResult{DensityValue::exact(evaluator.values()[i]),
                          std::make_pair(i, Int(-net_shift))};
    }
  }

  // Provably finite sets meet no member positively: sup of the empty set.
  Verdict fin = ideal_member(IdealOracle::fin(), e, budget);
  if (fin.decision == Decision::In) {
    return SupTadResult{DensityValue::exact(Rat(0)), std::nullopt};
  }

  // Budgeted search for a positivity certificate of C_x ∩ (e + k).
  std::optional<Rat> best;
  std::optional<std::pair<std::size_t, Int>> witness;
  const std::size_t members = std::min<std::size_t>(family.size(), index_budget);
  for (std::size_t i = 0; i < members; ++i) {
    SetExpr member = family.member_set(i);
    for (Int k = -Int(shift_budget); k <= Int(shift_budget); ++k) {
      SetExpr target = SetExpr::inter(member, SetExpr::shift(e, k));
      Verdict v = talagrand_positive(family.scheme(), target, 0, budget);
      if (v.decision == Decision::NotIn) {
        if (!best || evaluator.values()[i] > *best) {
          best = evaluator.values()[i];
          witness = std::make_pair(i, k);
        }
        break;
      }
    }
  }
  if (best) return SupTadResult{DensityValue::lower_bound(*best), witness};
  return SupTadResult{DensityValue::lower_bound(Rat(0)), std::nullopt};
}

}  // namespace densitylab
