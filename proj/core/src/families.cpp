#include "densitylab/families.hpp"

#include <algorithm>

#include "densitylab/analysis.hpp"

namespace densitylab {

SetExpr seed_set(const Branch& x) { return SetExpr::branch_codes(x, 1); }

std::vector<Int> seed_intersection(const Branch& x, const Branch& y) {
  if (x == y) throw DomainError("seed intersection requires distinct branches");
  const unsigned long shared = x.common_prefix_length(y);
  std::vector<Int> codes;
  codes.reserve(shared);
  for (unsigned long len = 1; len <= shared; ++len) {
    codes.push_back(x.prefix_code(len));
  }
  return codes;
}

TadFamily::TadFamily(IntervalScheme scheme, std::vector<Branch> branches)
    : scheme_(std::move(scheme)), branches_(std::move(branches)) {
  if (!scheme_.gaps_diverge()) {
    throw DomainError("TAD construction requires diverging interval gaps");
  }
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      if (branches_[i] == branches_[j]) {
        throw DomainError("duplicate branch in TAD family");
      }
    }
  }
}

SetExpr TadFamily::member_set(std::size_t i) const {
  if (i >= branches_.size()) throw DomainError("family member index out of range");
  return SetExpr::blocks(scheme_, SetExpr::branch_codes(branches_[i], 2));
}

bool PairCertificate::admits(const Int& x) const {
  if (x < bound) return true;
  for (const Run& r : shared_blocks) {
    if (x >= r.lo && x <= r.hi) return true;
  }
  return false;
}

RunList PairCertificate::admitted_runs(const Int& limit) const {
  RunList base;
  if (bound > 1) base.push(1, std::min(Int(bound - 1), limit));
  RunList blocks;
  for (const Run& r : shared_blocks) {
    if (r.lo > limit) break;
    blocks.push(r.lo, std::min(r.hi, limit));
  }
  return RunList::unite(base, blocks);
}

PairCertificate make_pair_certificate(const TadFamily& family, std::size_t i, std::size_t j,
                                      const Int& k) {
  if (i == j) throw DomainError("pair certificate requires distinct members");
  const IntervalScheme& s = family.scheme();
  PairCertificate cert;
  cert.shift = k;
  cert.cutoff = s.cutoff_for_gap(abs(k));
  cert.bound = s.boundary(2 * cert.cutoff + 2);
  for (const Int& c : seed_intersection(family.branches()[i], family.branches()[j])) {
    if (c <= cert.cutoff) continue;
    auto iv = s.interval(2 * c);
    // I_{2c} ∩ (I_{2c} + k)
    Int lo = iv.first + std::max(k, Int(0));
    Int hi = iv.second - 1 + std::min(k, Int(0));
    if (lo <= hi) cert.shared_blocks.push_back(Run{std::move(lo), std::move(hi)});
  }
  return cert;
}

PairCertificate verify_tad_pair(const TadFamily& family, std::size_t i, std::size_t j,
                                const Int& k, const Int& limit, const Budget& budget) {
  PairCertificate cert = make_pair_certificate(family, i, j, k);

  SetExpr cx = family.member_set(i);
  SetExpr cy = family.member_set(j);
  RunList runs_x = cx.runs_upto(limit, budget);
  RunList runs_y_shifted =
      RunList::shift_clip(cy.runs_upto(limit - k, budget), k, limit);
  RunList inter = RunList::intersect(runs_x, runs_y_shifted);

  RunList escaped = RunList::subtract(inter, cert.admitted_runs(limit));
  if (!escaped.empty()) {
    throw VerificationError("intersection element " + escaped.runs().front().lo.get_str() +
                            " escapes the pair certificate superset (shift " + k.get_str() +
                            ")");
  }
  // Pointwise spot checks tie the run algebra back to raw membership.
  for (const Run& r : inter.runs()) {
    for (const Int& z : {r.lo, r.hi}) {
      if (!cx.contains(z) || !cy.contains(z - k) || !cert.admits(z)) {
        throw VerificationError("spot check failed at " + z.get_str());
      }
    }
  }
  // And points just outside the intersection must miss one of the sides.
  if (!inter.empty()) {
    Int before = inter.runs().front().lo - 1;
    if (before >= 1 && cx.contains(before) && cy.contains(before - k)) {
      throw VerificationError("run decomposition missed element " + before.get_str());
    }
  }
  return cert;
}

Int AllShiftCertificate::cutoff(const Int& k) const { return scheme.cutoff_for_gap(abs(k)); }

PairCertificate AllShiftCertificate::instantiate(const Int& k) const {
  PairCertificate cert;
  cert.shift = k;
  cert.cutoff = cutoff(k);
  cert.bound = scheme.boundary(2 * cert.cutoff + 2);
  for (const Int& c : shared_codes) {
    if (c <= cert.cutoff) continue;
    auto iv = scheme.interval(2 * c);
    Int lo = iv.first + std::max(k, Int(0));
    Int hi = iv.second - 1 + std::min(k, Int(0));
    if (lo <= hi) cert.shared_blocks.push_back(Run{std::move(lo), std::move(hi)});
  }
  return cert;
}

AllShiftCertificate certify_all_shifts(const TadFamily& family, std::size_t i, std::size_t j,
                                       std::uint64_t spot_shifts, const Int& limit,
                                       const Budget& budget) {
  if (i == j) throw DomainError("all-shift certificate requires distinct members");
  AllShiftCertificate cert{family.scheme(), family.branches()[i], family.branches()[j],
                           seed_intersection(family.branches()[i], family.branches()[j])};
  for (Int k = -Int(spot_shifts); k <= Int(spot_shifts); ++k) {
    verify_tad_pair(family, i, j, k, limit, budget);
  }
  return cert;
}

Verdict member_positivity(const TadFamily& family, std::size_t i, std::uint64_t probe,
                          const Budget& budget) {
  SetExpr cx = family.member_set(i);
  Verdict v = talagrand_positive(family.scheme(), cx, probe, budget);
  if (v.decision != Decision::NotIn) return v;
  if (!recheck_positivity(family.scheme(), cx, v, probe, budget)) {
    throw VerificationError("positivity pattern failed containment probe");
  }
  return v;
}

}  // namespace densitylab
