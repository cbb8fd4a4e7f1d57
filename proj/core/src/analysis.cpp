#include "densitylab/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace densitylab {

bool PeriodicProfile::member(std::uint64_t x) const {
  if (x < 1) return false;
  if (x < threshold) return std::binary_search(head.begin(), head.end(), x);
  return residues[x % period];
}

std::size_t PeriodicProfile::residue_count() const {
  return static_cast<std::size_t>(std::count(residues.begin(), residues.end(), true));
}

std::uint64_t PeriodicProfile::first_periodic_with_residue(std::uint64_t r) const {
  std::uint64_t x = threshold + ((r + period - threshold % period) % period);
  return x;
}

namespace {

std::optional<std::uint64_t> to_u64(const Int& n) {
  if (n < 0 || !n.fits_ulong_p()) return std::nullopt;
  return n.get_ui();
}

std::optional<std::vector<std::uint64_t>> profile_elements_below(const PeriodicProfile& p,
                                                                 std::uint64_t bound,
                                                                 const ProfileLimits& limits) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : p.head) {
    if (x >= bound) break;
    out.push_back(x);
  }
  if (bound > p.threshold && p.residue_count() > 0) {
    // Refuse oversized enumerations before doing the work.
    const std::uint64_t span = bound - p.threshold;
    const std::uint64_t projected = (span / p.period + 1) * p.residue_count();
    if (out.size() + projected > limits.max_head) return std::nullopt;
    const std::size_t head_count = out.size();
    for (std::uint64_t r = 0; r < p.period; ++r) {
      if (!p.residues[r]) continue;
      for (std::uint64_t x = p.first_periodic_with_residue(r); x < bound; x += p.period) {
        out.push_back(x);
      }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(head_count), out.end());
  }
  return out;
}

std::optional<PeriodicProfile> combine(const SetExpr& e, const ProfileLimits& limits);

std::optional<PeriodicProfile> profile_impl(const SetExpr& e, const ProfileLimits& limits) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty: {
      PeriodicProfile p;
      p.residues = {false};
      return p;
    }
    case Kind::Full: {
      PeriodicProfile p;
      p.residues = {true};
      return p;
    }
    case Kind::Finite: {
      PeriodicProfile p;
      p.residues = {false};
      for (const Int& x : e.finite_elements()) {
        auto v = to_u64(x);
        if (!v || *v >= limits.max_threshold) return std::nullopt;
        p.head.push_back(*v);
      }
      p.threshold = p.head.empty() ? 1 : p.head.back() + 1;
      return p;
    }
    case Kind::Ap: {
      auto first = to_u64(e.ap_first());
      auto step = to_u64(e.ap_step());
      if (!first || !step) return std::nullopt;
      if (*step > limits.max_period || *first > limits.max_threshold) return std::nullopt;
      PeriodicProfile p;
      p.period = *step;
      p.threshold = *first;
      p.residues.assign(*step, false);
      p.residues[*first % *step] = true;
      return p;
    }
    case Kind::Blocks: {
      // Only linear schemes produce periodic sets.
      if (e.blocks_scheme().kind() != IntervalScheme::Kind::Linear) return std::nullopt;
      auto idx = periodic_profile(e.blocks_index(), limits);
      if (!idx) return std::nullopt;
      auto step = to_u64(e.blocks_scheme().base());
      if (!step) return std::nullopt;
      const std::uint64_t c = *step;
      if (idx->period > limits.max_period / c) return std::nullopt;
      PeriodicProfile p;
      p.period = c * idx->period;
      p.threshold = c * std::max<std::uint64_t>(idx->threshold, 1);
      if (p.threshold > limits.max_threshold) return std::nullopt;
      p.residues.assign(p.period, false);
      for (std::uint64_t r = 0; r < p.period; ++r) {
        p.residues[r] = idx->residues[(r / c) % idx->period];
      }
      for (std::uint64_t m : idx->head) {
        for (std::uint64_t off = 0; off < c; ++off) {
          const std::uint64_t x = c * m + off;
          if (x >= 1 && x < p.threshold) p.head.push_back(x);
        }
      }
      std::sort(p.head.begin(), p.head.end());
      if (p.head.size() > limits.max_head) return std::nullopt;
      return p;
    }
    case Kind::BranchCodes:
      return std::nullopt;
    case Kind::Shift: {
      auto inner = periodic_profile(e.inner(), limits);
      if (!inner) return std::nullopt;
      const Int& k = e.shift_offset();
      Int t_shift = Int(inner->threshold) + k;
      std::uint64_t new_threshold = 1;
      if (t_shift > 1) {
        auto t = to_u64(t_shift);
        if (!t || *t > limits.max_threshold) return std::nullopt;
        new_threshold = *t;
      }
      PeriodicProfile p;
      p.period = inner->period;
      p.threshold = new_threshold;
      p.residues.assign(p.period, false);
      // residue r in the shifted set comes from residue (r - k) mod period.
      const std::uint64_t shift_mod =
          static_cast<std::uint64_t>(mpz_fdiv_ui(k.get_mpz_t(), p.period));
      for (std::uint64_t r = 0; r < p.period; ++r) {
        p.residues[(r + shift_mod) % p.period] = inner->residues[r];
      }
      for (std::uint64_t x : inner->head) {
        Int y = Int(x) + k;
        if (y >= 1 && y < new_threshold) p.head.push_back(y.get_ui());
      }
      // Periodic elements of the inner set may land below the new threshold
      // only when k < 0 shrank it; the inner threshold + k >= new_threshold
      // guarantees none do.
      return p;
    }
    case Kind::Union:
    case Kind::Inter:
    case Kind::Diff:
      return combine(e, limits);
    case Kind::Complement: {
      auto inner = periodic_profile(e.inner(), limits);
      if (!inner) return std::nullopt;
      PeriodicProfile p;
      p.period = inner->period;
      p.threshold = inner->threshold;
      p.residues.resize(p.period);
      for (std::uint64_t r = 0; r < p.period; ++r) p.residues[r] = !inner->residues[r];
      std::uint64_t idx = 0;
      for (std::uint64_t x = 1; x < p.threshold; ++x) {
        while (idx < inner->head.size() && inner->head[idx] < x) ++idx;
        const bool in_inner = idx < inner->head.size() && inner->head[idx] == x;
        if (!in_inner) p.head.push_back(x);
        if (p.head.size() > limits.max_head) return std::nullopt;
      }
      return p;
    }
  }
  return std::nullopt;
}

std::optional<PeriodicProfile> combine(const SetExpr& e, const ProfileLimits& limits) {
  auto a = periodic_profile(e.lhs(), limits);
  if (!a) return std::nullopt;
  auto b = periodic_profile(e.rhs(), limits);
  if (!b) return std::nullopt;
  const std::uint64_t period = std::lcm(a->period, b->period);
  if (period > limits.max_period) return std::nullopt;
  const std::uint64_t threshold = std::max(a->threshold, b->threshold);

  PeriodicProfile p;
  p.period = period;
  p.threshold = threshold;
  p.residues.assign(period, false);
  const auto op = e.kind();
  for (std::uint64_t r = 0; r < period; ++r) {
    const bool in_a = a->residues[r % a->period];
    const bool in_b = b->residues[r % b->period];
    switch (op) {
      case SetExpr::Kind::Union:
        p.residues[r] = in_a || in_b;
        break;
      case SetExpr::Kind::Inter:
        p.residues[r] = in_a && in_b;
        break;
      default:
        p.residues[r] = in_a && !in_b;
        break;
    }
  }
  // Everything below the aligned threshold is resolved pointwise from the
  // child profiles.
  auto elems_a = profile_elements_below(*a, threshold, limits);
  auto elems_b = profile_elements_below(*b, threshold, limits);
  if (!elems_a || !elems_b) return std::nullopt;
  std::vector<std::uint64_t> merged;
  switch (op) {
    case SetExpr::Kind::Union:
      std::set_union(elems_a->begin(), elems_a->end(), elems_b->begin(), elems_b->end(),
                     std::back_inserter(merged));
      break;
    case SetExpr::Kind::Inter:
      std::set_intersection(elems_a->begin(), elems_a->end(), elems_b->begin(), elems_b->end(),
                            std::back_inserter(merged));
      break;
    default:
      std::set_difference(elems_a->begin(), elems_a->end(), elems_b->begin(), elems_b->end(),
                          std::back_inserter(merged));
      break;
  }
  if (merged.size() > limits.max_head) return std::nullopt;
  p.head = std::move(merged);
  return p;
}

}  // namespace

std::optional<PeriodicProfile> periodic_profile(const SetExpr& e, const ProfileLimits& limits) {
  const ProfileLimits defaults;
  const bool default_limits = limits.max_period == defaults.max_period &&
                              limits.max_threshold == defaults.max_threshold &&
                              limits.max_head == defaults.max_head;
  if (!default_limits) return profile_impl(e, limits);
  // Expressions are immutable and shared; memoize per node. The cached copy
  // of the expression pins the node so its address cannot be recycled.
  thread_local std::map<const void*, std::pair<SetExpr, std::optional<PeriodicProfile>>> cache;
  auto it = cache.find(e.identity());
  if (it != cache.end()) return it->second.second;
  auto profile = profile_impl(e, limits);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(e.identity(), std::make_pair(e, profile));
  return profile;
}

SetExpr simplify(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  if (e.kind() == Kind::Inter && e.lhs().kind() == Kind::Blocks &&
      e.rhs().kind() == Kind::Blocks && e.lhs().blocks_scheme() == e.rhs().blocks_scheme()) {
    return SetExpr::blocks(
        e.lhs().blocks_scheme(),
        simplify(SetExpr::inter(e.lhs().blocks_index(), e.rhs().blocks_index())));
  }
  return e;
}

namespace {

void collect_conjuncts(const SetExpr& e, std::vector<SetExpr>& out) {
  if (e.kind() == SetExpr::Kind::Inter) {
    collect_conjuncts(e.lhs(), out);
    collect_conjuncts(e.rhs(), out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

std::optional<bool> is_finite(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
    case Kind::Finite:
      return true;
    case Kind::Full:
    case Kind::Ap:
    case Kind::BranchCodes:
      return false;
    case Kind::Blocks:
      return is_finite(e.blocks_index());
    case Kind::Shift:
      return is_finite(e.inner());
    case Kind::Union: {
      auto a = is_finite(e.lhs());
      auto b = is_finite(e.rhs());
      if (a == false || b == false) return false;
      if (a == true && b == true) return true;
      return std::nullopt;
    }
    case Kind::Diff: {
      auto a = is_finite(e.lhs());
      if (a == true) return true;
      auto b = is_finite(e.rhs());
      if (a == false && b == true) return false;
      if (auto p = periodic_profile(e)) return p->eventually_empty();
      return std::nullopt;
    }
    case Kind::Complement: {
      if (auto p = periodic_profile(e)) return p->eventually_empty();
      if (is_finite(e.inner()) == true) return false;
      return std::nullopt;
    }
    case Kind::Inter: {
      SetExpr s = simplify(e);
      if (!(s == e)) return is_finite(s);
      std::vector<SetExpr> conj;
      collect_conjuncts(e, conj);
      // Structural duplicates contribute nothing to an intersection.
      for (std::size_t i = 0; i < conj.size(); ++i) {
        for (std::size_t j = i + 1; j < conj.size();) {
          if (conj[i] == conj[j]) {
            conj.erase(conj.begin() + static_cast<std::ptrdiff_t>(j));
          } else {
            ++j;
          }
        }
      }
      if (conj.size() == 1) return is_finite(conj[0]);
      for (const SetExpr& c : conj) {
        if (is_finite(c) == true) return true;
      }
      // Split conjuncts into a periodic part and the rest.
      std::vector<SetExpr> rest;
      std::optional<SetExpr> periodic_part;
      for (const SetExpr& c : conj) {
        if (periodic_profile(c)) {
          periodic_part = periodic_part ? SetExpr::inter(*periodic_part, c) : c;
        } else {
          rest.push_back(c);
        }
      }
      if (rest.empty()) {
        if (auto p = periodic_profile(e)) return p->eventually_empty();
        return std::nullopt;
      }
      if (periodic_part) {
        auto p = periodic_profile(*periodic_part);
        if (p && p->eventually_empty()) return true;
        if (p && !p->eventually_empty() && rest.size() == 1 &&
            has_unbounded_intervals(rest[0])) {
          // Arbitrarily long intervals meet every residue class infinitely often.
          return false;
        }
      }
      if (rest.size() == 2 && rest[0].kind() == Kind::BranchCodes &&
          rest[1].kind() == Kind::BranchCodes &&
          rest[0].branch_multiplier() == rest[1].branch_multiplier() && !periodic_part) {
        return !(rest[0].branch() == rest[1].branch());
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool has_unbounded_intervals(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Full:
      return true;
    case Kind::Blocks:
      return e.blocks_scheme().gaps_diverge() && is_finite(e.blocks_index()) == false;
    case Kind::Union:
      return has_unbounded_intervals(e.lhs()) || has_unbounded_intervals(e.rhs());
    case Kind::Shift:
      return has_unbounded_intervals(e.inner());
    case Kind::Diff:
      return has_unbounded_intervals(e.lhs()) && is_finite(e.rhs()) == true;
    default:
      return false;
  }
}

std::optional<Int> finite_upper_bound(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
      return Int(0);
    case Kind::Finite:
      return e.finite_elements().back();
    case Kind::Blocks: {
      auto ub = finite_upper_bound(e.blocks_index());
      if (!ub) return std::nullopt;
      if (*ub < 1) return Int(0);
      return e.blocks_scheme().boundary(*ub + 1) - 1;
    }
    case Kind::Union: {
      auto a = finite_upper_bound(e.lhs());
      auto b = finite_upper_bound(e.rhs());
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case Kind::Inter: {
      auto a = finite_upper_bound(e.lhs());
      auto b = finite_upper_bound(e.rhs());
      if (a && b) return std::min(*a, *b);
      if (a) return a;
      return b;
    }
    case Kind::Diff:
      return finite_upper_bound(e.lhs());
    case Kind::Shift: {
      auto a = finite_upper_bound(e.inner());
      if (!a) return std::nullopt;
      Int shifted = *a + e.shift_offset();
      return shifted < 0 ? Int(0) : shifted;
    }
    default:
      break;
  }
  if (auto p = periodic_profile(e); p && p->eventually_empty()) {
    return p->head.empty() ? Int(0) : Int(p->head.back());
  }
  return std::nullopt;
}

std::optional<Int> max_element_of(const SetExpr& e, const Budget& budget) {
  auto ub = finite_upper_bound(e);
  if (!ub) return std::nullopt;
  if (*ub < 1) return std::nullopt;
  RunList rl = e.runs_upto(*ub, budget);
  if (rl.empty()) return std::nullopt;
  return rl.max_element();
}

std::optional<SetExpr> infinite_witness(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  // The periodic route covers boolean combinations in one step.
  if (auto p = periodic_profile(e); p && !p->eventually_empty()) {
    for (std::uint64_t r = 0; r < p->period; ++r) {
      if (p->residues[r]) {
        return SetExpr::ap(Int(p->first_periodic_with_residue(r)), Int(p->period));
      }
    }
  }
  switch (e.kind()) {
    case Kind::Full:
      return SetExpr::ap(1, 1);
    case Kind::Ap:
    case Kind::BranchCodes:
      return e;
    case Kind::Blocks: {
      auto w = infinite_witness(e.blocks_index());
      if (!w) return std::nullopt;
      return SetExpr::blocks(e.blocks_scheme(), *w);
    }
    case Kind::Union: {
      if (is_finite(e.lhs()) == false) {
        if (auto w = infinite_witness(e.lhs())) return w;
      }
      if (is_finite(e.rhs()) == false) {
        if (auto w = infinite_witness(e.rhs())) return w;
      }
      return std::nullopt;
    }
    case Kind::Shift: {
      auto w = infinite_witness(e.inner());
      if (!w) return std::nullopt;
      const Int& k = e.shift_offset();
      if (w->kind() == Kind::Ap) {
        // Shift an ap in closed form, advancing past the truncation point.
        Int first = w->ap_first() + k;
        if (first < 1) {
          Int deficit = 1 - first;
          Int steps = (deficit + w->ap_step() - 1) / w->ap_step();
          first += steps * w->ap_step();
        }
        return SetExpr::ap(first, w->ap_step());
      }
      return SetExpr::shift(*w, k);
    }
    default:
      return std::nullopt;
  }
}

SetExpr density_core(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Shift:
      return density_core(e.inner());
    case Kind::Union:
      if (is_finite(e.rhs()) == true) return density_core(e.lhs());
      if (is_finite(e.lhs()) == true) return density_core(e.rhs());
      return e;
    case Kind::Diff:
      if (is_finite(e.rhs()) == true) return density_core(e.lhs());
      return e;
    default:
      return e;
  }
}

SetExpr peel_shifts(const SetExpr& e, Int* net_offset) {
  if (e.kind() == SetExpr::Kind::Shift) {
    if (net_offset) *net_offset += e.shift_offset();
    return peel_shifts(e.inner(), net_offset);
  }
  return e;
}

SetExpr density_core_shifted(const SetExpr& e, Int* net_offset) {
  SetExpr core = peel_shifts(e, net_offset);
  for (SetExpr next = density_core(core); !(next == core); next = density_core(core)) {
    core = peel_shifts(next, net_offset);
  }
  return core;
}

std::vector<Int> first_elements(const SetExpr& e, std::size_t count, const Budget& budget) {
  std::vector<Int> out;
  Int limit = 64;
  while (out.size() < count) {
    try {
      RunList rl = e.runs_upto(limit, budget);
      out = rl.elements(budget.element_cap);
    } catch (const BudgetExceededError&) {
      break;
    }
    if (out.size() >= count) break;
    if (limit > budget.element_cap) break;
    limit *= 8;
  }
  if (out.size() > count) out.resize(count);
  return out;
}

std::optional<ScaleCountBound> dyadic_scale_bound(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
      return ScaleCountBound{Int(0), 0};
    case Kind::Finite: {
      const Int& maxel = e.finite_elements().back();
      return ScaleCountBound{Int(0), bit_length(maxel)};
    }
    case Kind::BranchCodes:
      // One code per prefix length; scaled codes of consecutive lengths can
      // share a dyadic scale, never three of them.
      return ScaleCountBound{Int(2), 0};
    case Kind::Union: {
      auto a = dyadic_scale_bound(e.lhs());
      auto b = dyadic_scale_bound(e.rhs());
      if (!a || !b) return std::nullopt;
      return ScaleCountBound{a->per_scale + b->per_scale,
                             std::max(a->scale_start, b->scale_start)};
    }
    case Kind::Inter: {
      auto a = dyadic_scale_bound(e.lhs());
      auto b = dyadic_scale_bound(e.rhs());
      if (a && b) {
        return ScaleCountBound{std::min(a->per_scale, b->per_scale),
                               std::max(a->scale_start, b->scale_start)};
      }
      return a ? a : b;
    }
    case Kind::Diff:
      return dyadic_scale_bound(e.lhs());
    case Kind::Shift: {
      auto a = dyadic_scale_bound(e.inner());
      if (!a) return std::nullopt;
      // Past scales larger than 2|k| a shifted scale meets at most three
      // original scales.
      const std::size_t start = bit_length(Int(2 * abs(e.shift_offset()) + 1)) + 1;
      return ScaleCountBound{3 * a->per_scale,
                             std::max<std::uint64_t>(a->scale_start, start)};
    }
    default:
      return std::nullopt;
  }
}

namespace {

// Peels shifts and finite modifications, recording how to wrap a witness
// sub-expression of the core back into a sub-expression of the original.
struct PeelTrace {
  enum class Op { Shift, DiffFinite };
  std::vector<std::pair<Op, SetExpr>> ops;  // SetExpr holds the diffed finite set
  std::vector<Int> shifts;

  SetExpr rewrap(SetExpr witness) const {
    for (std::size_t i = ops.size(); i-- > 0;) {
      if (ops[i].first == Op::Shift) {
        witness = SetExpr::shift(witness, shifts[i]);
      } else {
        witness = SetExpr::diff(witness, ops[i].second);
      }
    }
    return witness;
  }
};

SetExpr peel_with_trace(const SetExpr& e, PeelTrace& trace) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Shift:
      trace.ops.emplace_back(PeelTrace::Op::Shift, SetExpr::empty());
      trace.shifts.push_back(e.shift_offset());
      return peel_with_trace(e.inner(), trace);
    case Kind::Union:
      if (is_finite(e.rhs()) == true) return peel_with_trace(e.lhs(), trace);
      if (is_finite(e.lhs()) == true) return peel_with_trace(e.rhs(), trace);
      return e;
    case Kind::Diff:
      if (is_finite(e.rhs()) == true) {
        trace.ops.emplace_back(PeelTrace::Op::DiffFinite, e.rhs());
        trace.shifts.push_back(0);
        return peel_with_trace(e.lhs(), trace);
      }
      return e;
    default:
      return e;
  }
}

// Prefix-ratio limit along boundary points with index congruent to rho, for a
// geometric scheme with base b and an eventually periodic index pattern:
//   L_rho = (b-1)/b * b^Q / (b^Q - 1) * sum_{i<Q} s[(rho - i) mod Q] b^{-i}.
Rat geometric_boundary_limit(const Int& b, const std::vector<bool>& pattern,
                             std::uint64_t rho) {
  const std::uint64_t q = pattern.size();
  Int numerator = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    if (pattern[(rho + q - i) % q]) {
      numerator += pow_int(b, static_cast<unsigned long>(q - 1 - i));
    }
  }
  const Int bq = pow_int(b, static_cast<unsigned long>(q));
  Rat g = make_rat(bq * numerator, (bq - 1) * pow_int(b, static_cast<unsigned long>(q - 1)));
  return make_rat(b - 1, b) * g;
}

struct GeoExtremes {
  Rat upper;
  Rat lower;
};

GeoExtremes geometric_extremes(const Int& b, const std::vector<bool>& pattern) {
  GeoExtremes out{Rat(0), Rat(1)};
  for (std::uint64_t rho = 0; rho < pattern.size(); ++rho) {
    Rat l = geometric_boundary_limit(b, pattern, rho);
    if (l > out.upper) out.upper = l;
    if (l < out.lower) out.lower = l;
  }
  return out;
}

}  // namespace

std::optional<ExactDensityProfile> exact_density_profile(const SetExpr& e) {
  PeelTrace trace;
  SetExpr core = simplify(peel_with_trace(e, trace));

  ExactDensityProfile out;

  if (auto p = periodic_profile(core)) {
    const std::size_t r = p->residue_count();
    if (r == 0) return out;  // finite: all densities zero
    Rat d = make_rat(Int(r), Int(p->period));
    out.upper = out.lower = out.logarithmic = out.banach = d;
    for (std::uint64_t res = 0; res < p->period; ++res) {
      if (!p->residues[res]) continue;
      SetExpr pattern =
          SetExpr::ap(Int(p->first_periodic_with_residue(res)), Int(p->period));
      out.positive_pattern = trace.rewrap(pattern);
      out.pattern_density = make_rat(1, Int(p->period));
      break;
    }
    return out;
  }

  if (core.kind() == SetExpr::Kind::BranchCodes) {
    return out;  // exponentially sparse: all densities zero
  }

  if (core.kind() != SetExpr::Kind::Blocks) return std::nullopt;
  const IntervalScheme& scheme = core.blocks_scheme();
  const SetExpr& index = core.blocks_index();
  auto idx = periodic_profile(index);
  if (!idx) return std::nullopt;
  if (idx->residue_count() == 0) return out;  // finite index: finite set

  // First periodic index residue, for the contained sub-pattern.
  std::uint64_t res = 0;
  while (!idx->residues[res]) ++res;
  SetExpr sub_index = SetExpr::ap(Int(idx->first_periodic_with_residue(res)), Int(idx->period));
  SetExpr pattern = SetExpr::blocks(scheme, sub_index);

  const Rat index_density = make_rat(Int(idx->residue_count()), Int(idx->period));
  out.logarithmic = index_density;
  out.banach = Rat(1);  // gaps diverge and the index is infinite

  switch (scheme.kind()) {
    case IntervalScheme::Kind::Geometric: {
      GeoExtremes ex = geometric_extremes(scheme.base(), idx->residues);
      out.upper = ex.upper;
      out.lower = ex.lower;
      std::vector<bool> single(idx->period, false);
      single[res % idx->period] = true;
      out.pattern_density = geometric_extremes(scheme.base(), single).upper;
      break;
    }
    case IntervalScheme::Kind::Polynomial:
    case IntervalScheme::Kind::Triangular:
      // Interval lengths are sublinear in the boundaries, so the prefix ratio
      // converges to the index density.
      out.upper = out.lower = index_density;
      out.pattern_density = make_rat(1, Int(idx->period));
      break;
    case IntervalScheme::Kind::Linear:
      return std::nullopt;  // already covered by the periodic route
  }
  out.positive_pattern = trace.rewrap(pattern);
  return out;
}

std::optional<SliverPattern> sliver_pattern(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  SetExpr core = peel_shifts(e);
  if (core.kind() != Kind::Diff) return std::nullopt;
  const SetExpr& a = core.lhs();
  const SetExpr& b = core.rhs();
  const SetExpr* blocks_side = nullptr;
  const SetExpr* shift_side = nullptr;
  if (a.kind() == Kind::Shift && a.inner() == b) {
    blocks_side = &b;
    shift_side = &a;
  } else if (b.kind() == Kind::Shift && b.inner() == a) {
    blocks_side = &a;
    shift_side = &b;
  } else {
    return std::nullopt;
  }
  if (blocks_side->kind() != Kind::Blocks) return std::nullopt;
  const IntervalScheme& scheme = blocks_side->blocks_scheme();
  if (!scheme.gaps_diverge()) return std::nullopt;
  Int k = abs(shift_side->shift_offset());
  Int cutoff = scheme.cutoff_for_gap(k);
  return SliverPattern{scheme, shift_side->shift_offset(), k * (cutoff + 1)};
}

}  // namespace densitylab
