#include "densitylab/ideals.hpp"

#include <algorithm>
#include <set>

namespace densitylab {

std::string Certificate::type_name() const {
  switch (payload.index()) {
    case 0:
      return "boundedness";
    case 1:
      return "infinite-witness";
    case 2:
      return "divergence";
    case 3:
      return "convergence";
    case 4:
      return "component-table";
    case 5:
      return "interval-pattern";
  }
  return "?";
}

Verdict Verdict::in(Certificate cert, std::string note) {
  Verdict v;
  v.decision = Decision::In;
  v.reason = UnknownReason::None;
  v.certificate = std::move(cert);
  v.note = std::move(note);
  return v;
}

Verdict Verdict::not_in(Certificate cert, std::string note) {
  Verdict v;
  v.decision = Decision::NotIn;
  v.reason = UnknownReason::None;
  v.certificate = std::move(cert);
  v.note = std::move(note);
  return v;
}

Verdict Verdict::unknown(UnknownReason reason, std::string note) {
  Verdict v;
  v.decision = Decision::Unknown;
  v.reason = reason;
  v.note = std::move(note);
  return v;
}

// ---------------------------------------------------------------------------
// Partition

Partition Partition::dyadic() { return Partition{}; }

Partition Partition::explicit_pieces(std::vector<SetExpr> pieces) {
  if (pieces.empty()) throw DomainError("explicit partition needs at least one piece");
  Partition p;
  p.pieces_ = std::move(pieces);
  return p;
}

SetExpr Partition::piece(std::uint64_t n) const {
  if (n < 1) throw DomainError("piece index must be >= 1");
  if (!pieces_.empty()) {
    if (n > pieces_.size()) throw DomainError("piece index beyond explicit partition");
    return pieces_[n - 1];
  }
  return SetExpr::ap(pow2(n - 1), pow2(n));
}

std::optional<std::uint64_t> Partition::locate(const Int& x) const {
  if (x < 1) return std::nullopt;
  if (pieces_.empty()) {
    // P_n collects the numbers with 2-adic valuation n-1.
    return mpz_scan1(x.get_mpz_t(), 0) + 1;
  }
  for (std::size_t n = 0; n < pieces_.size(); ++n) {
    if (pieces_[n].contains(x)) return n + 1;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> Partition::piece_index_of(const SetExpr& e) const {
  if (!pieces_.empty()) {
    for (std::size_t n = 0; n < pieces_.size(); ++n) {
      if (pieces_[n] == e) return n + 1;
    }
    return std::nullopt;
  }
  if (e.kind() != SetExpr::Kind::Ap) return std::nullopt;
  const Int& a = e.ap_first();
  const Int& d = e.ap_step();
  if (d != 2 * a) return std::nullopt;
  if (mpz_popcount(a.get_mpz_t()) != 1) return std::nullopt;
  return mpz_scan1(a.get_mpz_t(), 0) + 1;
}

bool Partition::operator==(const Partition& other) const {
  if (pieces_.size() != other.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i] == other.pieces_[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SummableWeight

SummableWeight SummableWeight::power_law(unsigned long num, unsigned long den) {
  if (num == 0 || den == 0 || num > den) {
    throw DomainError("power-law exponent must satisfy 0 < p <= 1");
  }
  SummableWeight w;
  w.kind = Kind::PowerLaw;
  w.num = num;
  w.den = den;
  return w;
}

Rat SummableWeight::value_lower_bound(const Int& x) const {
  if (x < 1) throw DomainError("weight argument must be >= 1");
  if (kind == Kind::Harmonic || (num == den)) return make_rat(1, x);
  // f(x) = x^(-u/v) >= 1/z for the least integer z with x^u <= z^v.
  Int xu = pow_int(x, num);
  Int root;
  const int exact = mpz_root(root.get_mpz_t(), xu.get_mpz_t(), den);
  if (!exact) root += 1;
  return make_rat(1, root);
}

std::string SummableWeight::text() const {
  if (kind == Kind::Harmonic) return "harmonic";
  return "pow:" + std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// IdealOracle

IdealOracle IdealOracle::fin() { return IdealOracle{}; }

IdealOracle IdealOracle::density_zero() {
  IdealOracle o;
  o.kind_ = Kind::DensityZero;
  return o;
}

IdealOracle IdealOracle::summable(SummableWeight weight) {
  IdealOracle o;
  o.kind_ = Kind::Summable;
  o.weight_ = weight;
  return o;
}

IdealOracle IdealOracle::piece_finite(Partition partition) {
  IdealOracle o;
  o.kind_ = Kind::PieceFinite;
  o.partition_ = std::move(partition);
  return o;
}

std::string IdealOracle::name() const {
  switch (kind_) {
    case Kind::Fin:
      return "fin";
    case Kind::DensityZero:
      return "density-zero";
    case Kind::Summable:
      return "summable:" + weight_.text();
    case Kind::PieceFinite:
      return "piece-finite";
  }
  return "?";
}

bool IdealOracle::operator==(const IdealOracle& other) const {
  return kind_ == other.kind_ && weight_ == other.weight_ && partition_ == other.partition_;
}

// ---------------------------------------------------------------------------
// Decision procedures

namespace {

Int count_between(const SetExpr& e, const Int& lo, const Int& hi, const Budget& budget) {
  return e.count_upto(hi, budget) - e.count_upto(lo - 1, budget);
}

std::optional<Certificate> boundedness_certificate(const SetExpr& e, const Budget& budget) {
  // Pairs of distinct branch-code sets intersect in exactly the shared
  // prefix codes; their bound is not structural, so handle them directly.
  if (e.kind() == SetExpr::Kind::Inter && e.lhs().kind() == SetExpr::Kind::BranchCodes &&
      e.rhs().kind() == SetExpr::Kind::BranchCodes &&
      e.lhs().branch_multiplier() == e.rhs().branch_multiplier() &&
      !(e.lhs().branch() == e.rhs().branch())) {
    const unsigned long shared = e.lhs().branch().common_prefix_length(e.rhs().branch());
    if (shared == 0) return Certificate{Certificate::Boundedness{Int(0), Int(0)}};
    Int max = e.lhs().branch_multiplier() * e.lhs().branch().prefix_code(shared);
    return Certificate{Certificate::Boundedness{std::move(max), Int(shared)}};
  }
  std::optional<Int> ub = finite_upper_bound(e);
  if (!ub) return std::nullopt;
  if (*ub < 1) return Certificate{Certificate::Boundedness{Int(0), Int(0)}};
  try {
    RunList rl = e.runs_upto(*ub, budget);
    if (rl.empty()) return Certificate{Certificate::Boundedness{Int(0), Int(0)}};
    return Certificate{Certificate::Boundedness{rl.max_element(), rl.total()}};
  } catch (const BudgetExceededError&) {
    return std::nullopt;
  }
}

Certificate growth_certificate(const SetExpr& e, const Budget& budget) {
  Certificate::InfiniteWitness w;
  for (Int x : {Int(100), Int(1000), Int(10000), Int(100000)}) {
    if (x > budget.element_cap) break;
    try {
      w.growth.emplace_back(x, e.count_upto(x, budget));
    } catch (const BudgetExceededError&) {
      break;
    }
  }
  return Certificate{std::move(w)};
}

Verdict decide_fin(const SetExpr& e, const Budget& budget) {
  auto f = is_finite(e);
  if (!f) return Verdict::unknown(UnknownReason::UnsupportedShape);
  if (*f) {
    if (auto cert = boundedness_certificate(e, budget)) return Verdict::in(std::move(*cert));
    return Verdict::unknown(UnknownReason::Budget, "finite but bound not computable in budget");
  }
  if (auto pattern = infinite_witness(e)) {
    Certificate::InfiniteWitness w;
    w.pattern = std::move(*pattern);
    return Verdict::not_in(Certificate{std::move(w)});
  }
  return Verdict::not_in(growth_certificate(e, budget));
}

Verdict decide_density_zero(const SetExpr& e, const Budget& budget) {
  if (is_finite(e) == true) {
    if (auto cert = boundedness_certificate(e, budget)) return Verdict::in(std::move(*cert));
  }
  if (auto prof = exact_density_profile(e)) {
    if (prof->upper == 0) {
      if (auto sparse = dyadic_scale_bound(e)) {
        Certificate::Convergence c;
        c.mode = Certificate::Convergence::Mode::DensityTail;
        c.per_scale = sparse->per_scale;
        c.scale_start = sparse->scale_start;
        for (std::uint64_t t = sparse->scale_start, probes = 0; probes < 8; ++t, ++probes) {
          try {
            c.probed.emplace_back(Int(t), count_between(e, pow2(t), pow2(t + 1) - 1, budget));
          } catch (const BudgetExceededError&) {
            break;
          }
        }
        return Verdict::in(Certificate{std::move(c)});
      }
      if (auto cert = boundedness_certificate(e, budget)) return Verdict::in(std::move(*cert));
      return Verdict::unknown(UnknownReason::UnsupportedShape,
                              "vanishing density without a tail certificate shape");
    }
    Certificate::InfiniteWitness w;
    w.pattern = prof->positive_pattern;
    w.density_lower_bound = prof->pattern_density;
    return Verdict::not_in(Certificate{std::move(w)},
                           "upper density " + rat_str(prof->upper));
  }
  if (auto sliver = sliver_pattern(e)) {
    Certificate::Convergence c;
    c.mode = Certificate::Convergence::Mode::DensityTail;
    c.scheme = sliver->scheme;
    c.per_scale = sliver->per_interval_bound;
    c.scale_start = 1;
    for (Int n = 1; n <= 8; ++n) {
      auto iv = sliver->scheme.interval(n);
      try {
        c.probed.emplace_back(n, count_between(e, iv.first, iv.second - 1, budget));
      } catch (const BudgetExceededError&) {
        break;
      }
    }
    return Verdict::in(Certificate{std::move(c)},
                       "boundary sliver of width " + Int(abs(sliver->shift)).get_str());
  }
  if (auto sparse = dyadic_scale_bound(e)) {
    Certificate::Convergence c;
    c.mode = Certificate::Convergence::Mode::DensityTail;
    c.per_scale = sparse->per_scale;
    c.scale_start = sparse->scale_start;
    return Verdict::in(Certificate{std::move(c)});
  }
  return Verdict::unknown(UnknownReason::UnsupportedShape);
}

// Exact tail bound for at most `per_scale` elements in each dyadic scale past
// scale_start under the given weight.
Rat sparse_tail_bound(const SummableWeight& w, const Int& per_scale, std::uint64_t t0) {
  if (w.kind == SummableWeight::Kind::Harmonic || w.num == w.den) {
    // sum_{t>=t0} 2^-t = 2^{1-t0}
    return per_scale * make_rat(2, pow2(t0));
  }
  // sum_{t>=t0} 2^{-pt} <= v * 2^{-floor(p t0)} * 2^u / (2^u - 1)
  const unsigned long floor_pt0 = (w.num * t0) / w.den;
  Rat geom = make_rat(pow2(w.num), pow2(w.num) - 1);
  return per_scale * make_rat(1, pow2(floor_pt0)) * Rat(w.den) * geom;
}

Verdict decide_summable(const SummableWeight& w, const SetExpr& e, const Budget& budget) {
  if (is_finite(e) == true) {
    if (auto cert = boundedness_certificate(e, budget)) return Verdict::in(std::move(*cert));
  }

  // Sparse route: boundedly many elements per dyadic scale.
  if (auto sparse = dyadic_scale_bound(e)) {
    Certificate::Convergence c;
    c.mode = Certificate::Convergence::Mode::SummableTail;
    c.per_scale = sparse->per_scale;
    c.scale_start = std::max<std::uint64_t>(sparse->scale_start, 1);
    c.tail_bound = sparse_tail_bound(w, c.per_scale, c.scale_start);
    for (std::uint64_t t = c.scale_start, probes = 0; probes < 8; ++t, ++probes) {
      try {
        c.probed.emplace_back(Int(t), count_between(e, pow2(t), pow2(t + 1) - 1, budget));
      } catch (const BudgetExceededError&) {
        break;
      }
    }
    return Verdict::in(Certificate{std::move(c)});
  }

  // Eventually periodic sets with occupied residues contain a full ap whose
  // weight sum diverges: group the ap into dyadic scales.
  if (auto p = periodic_profile(e); p && !p->eventually_empty()) {
    std::uint64_t res = 0;
    while (!p->residues[res]) ++res;
    const Int a = Int(p->first_periodic_with_residue(res));
    const Int q = Int(p->period);
    Certificate::Divergence d;
    d.scheme = std::nullopt;
    d.index = SetExpr::ap(a, q);
    d.tail = Certificate::Divergence::Tail::UniformBound;
    const std::uint64_t t1 =
        std::max<std::uint64_t>({bit_length(Int(2 * a)), bit_length(Int(4 * q)), 3});
    // Past t1 each scale holds at least 2^{t-2}/q ap members, each of weight
    // at least f(2^{t+1}); for p <= 1 that product is nondecreasing in t.
    d.uniform_bound = make_rat(pow2(t1 - 2), q) * w.value_lower_bound(pow2(t1 + 1));
    for (std::uint64_t t = t1, probes = 0; probes < 8; ++t, ++probes) {
      try {
        Int count = count_between(e, pow2(t), pow2(t + 1) - 1, budget);
        Rat bound = count * w.value_lower_bound(pow2(t + 1) - 1);
        d.running_sum += bound;
        d.per_block.emplace_back(Int(t), std::move(bound));
      } catch (const BudgetExceededError&) {
        break;
      }
    }
    return Verdict::not_in(Certificate{std::move(d)});
  }

  // Block sets: each included interval contributes at least
  // |I_m| * f(max element), which stays away from zero (geometric schemes) or
  // dominates a harmonic family (polynomial / triangular schemes).
  Int net_shift = 0;
  SetExpr core = simplify(density_core_shifted(e, &net_shift));
  if (core.kind() == SetExpr::Kind::Blocks && is_finite(core.blocks_index()) == false) {
    const IntervalScheme& s = core.blocks_scheme();
    const SetExpr& idx = core.blocks_index();
    std::vector<Int> members = first_elements(idx, 12, budget);
    if (!members.empty() && s.kind() != IntervalScheme::Kind::Linear) {
      Certificate::Divergence d;
      d.scheme = s;
      d.index = idx;
      d.shift = net_shift;

      if (s.kind() == IntervalScheme::Kind::Geometric) {
        // The per-block bound b^m (b-1) / (k_{m+1} - 1 + shift) either grows
        // toward (b-1)/b or decays onto it, so the smaller of the first
        // block's bound and the limit holds for every block.
        const Int& m1 = members.front();
        Int right = s.boundary(m1 + 1) - 1 + std::max(net_shift, Int(0));
        Rat candidate = Rat(s.length(m1)) * w.value_lower_bound(right);
        d.tail = Certificate::Divergence::Tail::UniformBound;
        if (w.kind == SummableWeight::Kind::Harmonic || w.num == w.den) {
          Rat limit = make_rat(s.base() - 1, s.base());
          d.uniform_bound = std::min(candidate, limit);
        } else {
          d.uniform_bound = candidate;
        }
      } else {
        // Triangular / polynomial schemes: |I_m| * f(right end) dominates a
        // harmonic family, and the index contains an ap, so the sum diverges.
        auto ip = periodic_profile(idx);
        if (!ip || ip->eventually_empty()) {
          return Verdict::unknown(UnknownReason::UnsupportedShape,
                                  "sparse block index outside the divergence fragment");
        }
        d.tail = Certificate::Divergence::Tail::HarmonicFamily;
        if (s.kind() == IntervalScheme::Kind::Triangular &&
            (w.kind == SummableWeight::Kind::Harmonic || w.num == w.den) && net_shift <= 0) {
          d.harmonic_alpha = Rat(2);
          d.harmonic_gamma = 2;
        } else {
          d.harmonic_alpha = make_rat(1, 2);
          d.harmonic_gamma = Int(std::max(Int(2), Int(2 * abs(net_shift))));
        }
      }

      // Finite modifications can hollow out finitely many blocks; probed rows
      // are the unspoiled witnesses.
      for (const Int& m : members) {
        if (d.per_block.size() >= 6) break;
        auto iv = s.interval(m);
        Int lo = std::max(Int(iv.first + net_shift), Int(1));
        Int hi = iv.second - 1 + net_shift;
        if (hi < 1) continue;
        try {
          Int count = count_between(e, lo, hi, budget);
          Rat bound = count * w.value_lower_bound(hi);
          const bool meets_tail =
              d.tail == Certificate::Divergence::Tail::UniformBound
                  ? bound >= d.uniform_bound
                  : bound >= d.harmonic_alpha / Rat(m + d.harmonic_gamma);
          if (!meets_tail) continue;
          d.running_sum += bound;
          d.per_block.emplace_back(m, std::move(bound));
        } catch (const BudgetExceededError&) {
          break;
        }
      }
      if (!d.per_block.empty()) {
        return Verdict::not_in(Certificate{std::move(d)});
      }
      return Verdict::unknown(UnknownReason::Budget, "probed blocks all modified or unaffordable");
    }
  }

  return Verdict::unknown(UnknownReason::UnsupportedShape);
}

}  // namespace

std::optional<std::set<std::uint64_t>> piece_support(const SetExpr& e, const Partition& part,
                                                     const Budget& budget) {
  using Kind = SetExpr::Kind;
  if (auto n = part.piece_index_of(e)) return std::set<std::uint64_t>{*n};
  switch (e.kind()) {
    case Kind::Empty:
      return std::set<std::uint64_t>{};
    case Kind::Finite: {
      std::set<std::uint64_t> out;
      for (const Int& x : e.finite_elements()) {
        auto n = part.locate(x);
        if (!n) return std::nullopt;
        out.insert(*n);
      }
      return out;
    }
    case Kind::Union: {
      auto a = piece_support(e.lhs(), part, budget);
      auto b = piece_support(e.rhs(), part, budget);
      if (!a || !b) return std::nullopt;
      a->insert(b->begin(), b->end());
      return a;
    }
    case Kind::Inter: {
      auto a = piece_support(e.lhs(), part, budget);
      auto b = piece_support(e.rhs(), part, budget);
      if (a && b) {
        std::set<std::uint64_t> out;
        std::set_intersection(a->begin(), a->end(), b->begin(), b->end(),
                              std::inserter(out, out.begin()));
        return out;
      }
      return a ? a : b;
    }
    case Kind::Diff:
      return piece_support(e.lhs(), part, budget);
    default:
      break;
  }
  // Provably finite sets locate their elements directly.
  if (is_finite(e) == true) {
    if (auto ub = finite_upper_bound(e)) {
      try {
        std::set<std::uint64_t> out;
        for (const Int& x : e.runs_upto(*ub, budget).elements(budget.element_cap)) {
          auto n = part.locate(x);
          if (!n) return std::nullopt;
          out.insert(*n);
        }
        return out;
      } catch (const BudgetExceededError&) {
        return std::nullopt;
      }
    }
  }
  // Eventually periodic sets live on finitely many dyadic pieces exactly when
  // every occupied residue has smaller 2-adic valuation than the period: the
  // valuation of such elements is pinned by the residue.
  if (part.is_dyadic()) {
    if (auto p = periodic_profile(e)) {
      const std::uint64_t period_val = std::uint64_t(mpz_scan1(Int(p->period).get_mpz_t(), 0));
      std::set<std::uint64_t> out;
      bool bounded = true;
      for (std::uint64_t r = 0; r < p->period && bounded; ++r) {
        if (!p->residues[r]) continue;
        if (r == 0) {
          bounded = false;
          break;
        }
        const std::uint64_t val = std::uint64_t(mpz_scan1(Int(r).get_mpz_t(), 0));
        if (val >= period_val) {
          bounded = false;
          break;
        }
        out.insert(val + 1);
      }
      if (bounded) {
        for (std::uint64_t x : p->head) {
          auto n = part.locate(Int(x));
          if (!n) return std::nullopt;
          out.insert(*n);
        }
        return out;
      }
    }
  }
  return std::nullopt;
}

namespace {

Verdict decide_piece_finite(const Partition& part, const SetExpr& e, const Budget& budget) {
  auto support = piece_support(e, part, budget);
  if (support) {
    Certificate::ComponentTable table;
    bool all_finite = true;
    bool any_unknown = false;
    for (std::uint64_t n : *support) {
      SetExpr piece_part = SetExpr::inter(e, part.piece(n));
      auto f = is_finite(piece_part);
      if (!f) {
        any_unknown = true;
        continue;
      }
      Certificate::ComponentTable::Row row;
      row.piece = n;
      row.finite = *f;
      if (*f) {
        auto m = max_element_of(piece_part, budget);
        row.bound = m ? *m : Int(0);
      } else {
        all_finite = false;
        row.bound = 0;
      }
      table.rows.push_back(std::move(row));
    }
    if (!all_finite) {
      return Verdict::not_in(Certificate{std::move(table)});
    }
    if (any_unknown) return Verdict::unknown(UnknownReason::UnsupportedShape);
    return Verdict::in(Certificate{std::move(table)});
  }
  // Without a support bound only a negative answer is reachable: find a piece
  // with provably infinite intersection.
  for (std::uint64_t n = 1; n <= budget.probe; ++n) {
    if (!part.is_dyadic() && n > part.explicit_count()) break;
    SetExpr piece_part = SetExpr::inter(e, part.piece(n));
    if (is_finite(piece_part) == false) {
      Certificate::ComponentTable table;
      table.rows.push_back({n, false, Int(0)});
      return Verdict::not_in(Certificate{std::move(table)});
    }
  }
  return Verdict::unknown(UnknownReason::UnsupportedShape,
                          "no finite piece support and no infinite piece found");
}

}  // namespace

Verdict ideal_member(const IdealOracle& ideal, const SetExpr& e, const Budget& budget) {
  switch (ideal.kind()) {
    case IdealOracle::Kind::Fin:
      return decide_fin(e, budget);
    case IdealOracle::Kind::DensityZero:
      return decide_density_zero(e, budget);
    case IdealOracle::Kind::Summable:
      return decide_summable(ideal.weight(), e, budget);
    case IdealOracle::Kind::PieceFinite:
      return decide_piece_finite(ideal.partition(), e, budget);
  }
  return Verdict::unknown(UnknownReason::UnsupportedShape);
}

namespace {

std::optional<SetExpr> contained_block_index(const IntervalScheme& scheme, const SetExpr& e) {
  using Kind = SetExpr::Kind;
  SetExpr s = simplify(e);
  switch (s.kind()) {
    case Kind::Full:
      return SetExpr::ap(1, 1);
    case Kind::Blocks:
      if (s.blocks_scheme() == scheme && is_finite(s.blocks_index()) == false) {
        return s.blocks_index();
      }
      return std::nullopt;
    case Kind::Union: {
      if (auto a = contained_block_index(scheme, s.lhs())) return a;
      return contained_block_index(scheme, s.rhs());
    }
    case Kind::Inter: {
      // Full conjuncts drop out; a union conjunct distributes.
      if (s.lhs().kind() == Kind::Full) return contained_block_index(scheme, s.rhs());
      if (s.rhs().kind() == Kind::Full) return contained_block_index(scheme, s.lhs());
      if (s.rhs().kind() == Kind::Union) {
        if (auto a = contained_block_index(scheme, SetExpr::inter(s.lhs(), s.rhs().lhs()))) {
          return a;
        }
        return contained_block_index(scheme, SetExpr::inter(s.lhs(), s.rhs().rhs()));
      }
      if (s.lhs().kind() == Kind::Union) {
        if (auto a = contained_block_index(scheme, SetExpr::inter(s.lhs().lhs(), s.rhs()))) {
          return a;
        }
        return contained_block_index(scheme, SetExpr::inter(s.lhs().rhs(), s.rhs()));
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool interval_contained(const IntervalScheme& scheme, const SetExpr& e, const Int& n,
                        const Budget& budget) {
  auto iv = scheme.interval(n);
  return count_between(e, iv.first, iv.second - 1, budget) == iv.second - iv.first;
}

}  // namespace

Verdict talagrand_positive(const IntervalScheme& scheme, const SetExpr& e, std::uint64_t probe,
                           const Budget& budget) {
  if (auto idx = contained_block_index(scheme, e)) {
    Certificate::IntervalPattern pattern{scheme, *idx};
    return Verdict::not_in(Certificate{std::move(pattern)}, "positive: contains I_n for all n in pattern");
  }
  std::uint64_t contained = 0;
  for (std::uint64_t n = 1; n <= probe; ++n) {
    try {
      if (interval_contained(scheme, e, Int(n), budget)) ++contained;
    } catch (const BudgetExceededError&) {
      return Verdict::unknown(UnknownReason::Budget,
                              "probe exhausted after " + std::to_string(n - 1) + " intervals");
    }
  }
  return Verdict::unknown(UnknownReason::UnsupportedShape,
                          "contained " + std::to_string(contained) + " of first " +
                              std::to_string(probe) + " intervals");
}

// ---------------------------------------------------------------------------
// Certificate re-checking

namespace {

bool recheck_boundedness(const SetExpr& e, const Certificate::Boundedness& c,
                         const Budget& budget) {
  if (c.cardinality == 0) {
    for (Int x : {Int(1), Int(2), Int(17), Int(1024)}) {
      if (e.contains(x)) return false;
    }
    return true;
  }
  if (!e.contains(c.max_element)) return false;
  // Sample points past the bound must be absent.
  for (Int delta : {Int(1), Int(2), Int(64), Int(4096)}) {
    if (e.contains(c.max_element + delta)) return false;
  }
  try {
    if (e.count_upto(c.max_element + 4096, budget) != c.cardinality) return false;
  } catch (const BudgetExceededError&) {
    // Counting is optional evidence; membership checks above stand.
  }
  return true;
}

bool recheck_infinite_witness(const SetExpr& e, const Certificate::InfiniteWitness& c,
                              const Budget& budget) {
  if (c.pattern) {
    std::vector<Int> sample = first_elements(*c.pattern, 24, budget);
    if (sample.empty()) return false;
    for (const Int& x : sample) {
      if (!e.contains(x)) return false;
    }
    if (c.density_lower_bound > 0) {
      auto prof = exact_density_profile(*c.pattern);
      if (!prof || prof->upper < c.density_lower_bound) return false;
    }
    return true;
  }
  if (c.growth.empty()) return false;
  Int prev_count = -1;
  for (const auto& [x, count] : c.growth) {
    try {
      if (e.count_upto(x, budget) != count) return false;
    } catch (const BudgetExceededError&) {
      continue;
    }
    if (count <= prev_count) return false;
    prev_count = count;
  }
  return true;
}

bool recheck_divergence(const SummableWeight& w, const SetExpr& e,
                        const Certificate::Divergence& c, const Budget& budget) {
  if (c.per_block.empty()) return false;
  Rat running = 0;
  for (const auto& [block, bound] : c.per_block) {
    Int lo, hi;
    if (c.scheme) {
      auto iv = c.scheme->interval(block);
      lo = std::max(Int(iv.first + c.shift), Int(1));
      hi = iv.second - 1 + c.shift;
    } else {
      const unsigned long t = to_ulong_checked(block, "dyadic scale");
      lo = pow2(t);
      hi = pow2(t + 1) - 1;
    }
    try {
      Int count = count_between(e, lo, hi, budget);
      if (count * w.value_lower_bound(hi) != bound) return false;
    } catch (const BudgetExceededError&) {
      continue;
    }
    running += bound;
    switch (c.tail) {
      case Certificate::Divergence::Tail::UniformBound:
        if (bound < c.uniform_bound) return false;
        break;
      case Certificate::Divergence::Tail::HarmonicFamily:
        if (bound < c.harmonic_alpha / Rat(block + c.harmonic_gamma)) return false;
        break;
    }
  }
  if (running != c.running_sum) return false;
  if (c.tail == Certificate::Divergence::Tail::UniformBound && !(c.uniform_bound > 0)) {
    return false;
  }
  if (c.index && is_finite(*c.index) != false) return false;
  return true;
}

bool recheck_convergence(const SetExpr& e, const Certificate::Convergence& c,
                         const Budget& budget) {
  for (const auto& [scale, count] : c.probed) {
    Int lo, hi;
    if (c.scheme) {
      auto iv = c.scheme->interval(scale);
      lo = iv.first;
      hi = iv.second - 1;
    } else {
      const unsigned long t = to_ulong_checked(scale, "dyadic scale");
      lo = pow2(t);
      hi = pow2(t + 1) - 1;
    }
    try {
      if (count_between(e, lo, hi, budget) != count) return false;
    } catch (const BudgetExceededError&) {
      continue;
    }
    if (scale >= c.scale_start && count > c.per_scale) return false;
  }
  return true;
}

bool recheck_component_table(const Partition& part, const SetExpr& e,
                             const Certificate::ComponentTable& c) {
  for (const auto& row : c.rows) {
    SetExpr piece_part = SetExpr::inter(e, part.piece(row.piece));
    auto f = is_finite(piece_part);
    if (!f || *f != row.finite) return false;
    if (row.finite && row.bound > 0) {
      if (!piece_part.contains(row.bound)) return false;
      for (Int delta : {Int(1), Int(64)}) {
        Int probe_pt = row.bound + delta;
        if (piece_part.contains(probe_pt)) return false;
      }
    }
  }
  return !c.rows.empty() || true;
}

bool recheck_interval_pattern(const SetExpr& e, const Certificate::IntervalPattern& c,
                              std::uint64_t probe, const Budget& budget) {
  if (is_finite(c.index) != false) return false;
  std::vector<Int> members = first_elements(c.index, probe, budget);
  if (members.empty()) return false;
  for (const Int& n : members) {
    try {
      if (!interval_contained(c.scheme, e, n, budget)) return false;
    } catch (const BudgetExceededError&) {
      continue;
    }
  }
  return true;
}

}  // namespace

bool recheck_verdict(const IdealOracle& ideal, const SetExpr& e, const Verdict& verdict,
                     const Budget& budget) {
  if (!verdict.decided()) return !verdict.certificate.has_value();
  if (!verdict.certificate) return false;
  const Certificate& cert = *verdict.certificate;
  return std::visit(
      [&](const auto& payload) -> bool {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, Certificate::Boundedness>) {
          return recheck_boundedness(e, payload, budget);
        } else if constexpr (std::is_same_v<T, Certificate::InfiniteWitness>) {
          return recheck_infinite_witness(e, payload, budget);
        } else if constexpr (std::is_same_v<T, Certificate::Divergence>) {
          return recheck_divergence(ideal.weight(), e, payload, budget);
        } else if constexpr (std::is_same_v<T, Certificate::Convergence>) {
          return recheck_convergence(e, payload, budget);
        } else if constexpr (std::is_same_v<T, Certificate::ComponentTable>) {
          return recheck_component_table(ideal.partition(), e, payload);
        } else {
          return recheck_interval_pattern(e, payload, budget.probe, budget);
        }
      },
      cert.payload);
}

bool recheck_positivity(const IntervalScheme& scheme, const SetExpr& e, const Verdict& verdict,
                        std::uint64_t probe, const Budget& budget) {
  if (!verdict.decided()) return !verdict.certificate.has_value();
  if (!verdict.certificate) return false;
  const auto* pattern = std::get_if<Certificate::IntervalPattern>(&verdict.certificate->payload);
  if (!pattern) return false;
  if (!(pattern->scheme == scheme)) return false;
  return recheck_interval_pattern(e, *pattern, probe, budget);
}

}  // namespace densitylab
