#include "densitylab/set_expr.hpp"

#include <algorithm>
#include <variant>

namespace densitylab {

namespace {

struct EmptyNode {};
struct FullNode {};
struct FiniteNode {
  std::vector<Int> elements;
};
struct ApNode {
  Int first;
  Int step;
};
struct BlocksNode {
  IntervalScheme scheme;
  SetExpr index;
};
struct BranchCodesNode {
  Branch branch;
  Int multiplier;
};
struct UnionNode {
  SetExpr lhs, rhs;
};
struct InterNode {
  SetExpr lhs, rhs;
};
struct DiffNode {
  SetExpr lhs, rhs;
};
struct ComplementNode {
  SetExpr inner;
};
struct ShiftNode {
  SetExpr inner;
  Int offset;
};

using NodeVariant =
    std::variant<EmptyNode, FullNode, FiniteNode, ApNode, BlocksNode, BranchCodesNode,
                 UnionNode, InterNode, DiffNode, ComplementNode, ShiftNode>;

}  // namespace

struct SetExpr::Node {
  NodeVariant data;
};

struct SetExprFactory {
  template <typename T>
  static SetExpr make(T node) {
    auto holder =
        std::make_shared<const SetExpr::Node>(SetExpr::Node{NodeVariant(std::move(node))});
    return SetExpr(std::move(holder));
  }
};

namespace {

template <typename T>
SetExpr make_node(T node) {
  return SetExprFactory::make(std::move(node));
}

}  // namespace

SetExpr SetExpr::empty() { return make_node(EmptyNode{}); }

SetExpr SetExpr::full() { return make_node(FullNode{}); }

SetExpr SetExpr::finite(std::vector<Int> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1) throw DomainError("finite set elements must be >= 1");
    if (i > 0 && elements[i] <= elements[i - 1]) {
      throw DomainError("finite set elements must be strictly increasing");
    }
  }
  if (elements.empty()) return empty();
  return make_node(FiniteNode{std::move(elements)});
}

SetExpr SetExpr::ap(Int first, Int step) {
  if (first < 1) throw DomainError("ap requires first >= 1");
  if (step < 1) throw DomainError("ap requires step >= 1");
  return make_node(ApNode{std::move(first), std::move(step)});
}

SetExpr SetExpr::blocks(IntervalScheme scheme, SetExpr index) {
  return make_node(BlocksNode{std::move(scheme), std::move(index)});
}

SetExpr SetExpr::branch_codes(Branch branch, Int multiplier) {
  if (multiplier < 1) throw DomainError("codes multiplier must be >= 1");
  return make_node(BranchCodesNode{std::move(branch), std::move(multiplier)});
}

SetExpr SetExpr::union_of(SetExpr lhs, SetExpr rhs) {
  return make_node(UnionNode{std::move(lhs), std::move(rhs)});
}

SetExpr SetExpr::inter(SetExpr lhs, SetExpr rhs) {
  return make_node(InterNode{std::move(lhs), std::move(rhs)});
}

SetExpr SetExpr::diff(SetExpr lhs, SetExpr rhs) {
  return make_node(DiffNode{std::move(lhs), std::move(rhs)});
}

SetExpr SetExpr::complement(SetExpr inner) {
  return make_node(ComplementNode{std::move(inner)});
}

SetExpr SetExpr::shift(SetExpr inner, Int offset) {
  if (offset == 0) return inner;
  // shift(shift(e, a), b) = shift(e, a+b) whenever both offsets are
  // nonnegative; with a negative inner offset the truncation order matters.
  if (inner.kind() == Kind::Shift && inner.shift_offset() >= 0 && offset >= 0) {
    Int fused = inner.shift_offset() + offset;
    return make_node(ShiftNode{inner.inner(), std::move(fused)});
  }
  return make_node(ShiftNode{std::move(inner), std::move(offset)});
}

SetExpr::Kind SetExpr::kind() const {
  return static_cast<Kind>(node_->data.index());
}

const std::vector<Int>& SetExpr::finite_elements() const {
  return std::get<FiniteNode>(node_->data).elements;
}
const Int& SetExpr::ap_first() const { return std::get<ApNode>(node_->data).first; }
const Int& SetExpr::ap_step() const { return std::get<ApNode>(node_->data).step; }
const IntervalScheme& SetExpr::blocks_scheme() const {
  return std::get<BlocksNode>(node_->data).scheme;
}
const SetExpr& SetExpr::blocks_index() const {
  return std::get<BlocksNode>(node_->data).index;
}
const Branch& SetExpr::branch() const { return std::get<BranchCodesNode>(node_->data).branch; }
const Int& SetExpr::branch_multiplier() const {
  return std::get<BranchCodesNode>(node_->data).multiplier;
}
const SetExpr& SetExpr::lhs() const {
  switch (kind()) {
    case Kind::Union:
      return std::get<UnionNode>(node_->data).lhs;
    case Kind::Inter:
      return std::get<InterNode>(node_->data).lhs;
    case Kind::Diff:
      return std::get<DiffNode>(node_->data).lhs;
    default:
      throw DomainError("lhs on non-binary node");
  }
}
const SetExpr& SetExpr::rhs() const {
  switch (kind()) {
    case Kind::Union:
      return std::get<UnionNode>(node_->data).rhs;
    case Kind::Inter:
      return std::get<InterNode>(node_->data).rhs;
    case Kind::Diff:
      return std::get<DiffNode>(node_->data).rhs;
    default:
      throw DomainError("rhs on non-binary node");
  }
}
const SetExpr& SetExpr::inner() const {
  if (kind() == Kind::Complement) return std::get<ComplementNode>(node_->data).inner;
  if (kind() == Kind::Shift) return std::get<ShiftNode>(node_->data).inner;
  throw DomainError("inner on non-unary node");
}
const Int& SetExpr::shift_offset() const { return std::get<ShiftNode>(node_->data).offset; }

bool SetExpr::contains(const Int& n) const {
  if (n < 1) return false;
  switch (kind()) {
    case Kind::Empty:
      return false;
    case Kind::Full:
      return true;
    case Kind::Finite: {
      const auto& xs = finite_elements();
      return std::binary_search(xs.begin(), xs.end(), n);
    }
    case Kind::Ap: {
      if (n < ap_first()) return false;
      return (n - ap_first()) % ap_step() == 0;
    }
    case Kind::Blocks: {
      auto m = blocks_scheme().locate(n);
      return m.has_value() && blocks_index().contains(*m);
    }
    case Kind::BranchCodes:
      return branch().is_scaled_code(n, branch_multiplier());
    case Kind::Union:
      return lhs().contains(n) || rhs().contains(n);
    case Kind::Inter:
      return lhs().contains(n) && rhs().contains(n);
    case Kind::Diff:
      return lhs().contains(n) && !rhs().contains(n);
    case Kind::Complement:
      return !inner().contains(n);
    case Kind::Shift:
      return inner().contains(n - shift_offset());
  }
  return false;
}

namespace {

// Rough ordering of run-decomposition cost by node kind: sparse shapes first,
// progressions and complements (singleton-heavy) last.
int runs_cost_rank(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
    case SetExpr::Kind::Finite:
    case SetExpr::Kind::BranchCodes:
      return 0;
    case SetExpr::Kind::Blocks:
      return 1;
    case SetExpr::Kind::Inter:
    case SetExpr::Kind::Diff:
      return 2;
    case SetExpr::Kind::Shift:
    case SetExpr::Kind::Union:
      return 3;
    case SetExpr::Kind::Ap:
      return 4;
    default:
      return 5;
  }
}

// Counting falls back to an elementwise scan only when neither a closed form
// nor the run decomposition applies cheaply.
Int count_by_scan(const SetExpr& e, const Int& n, const Budget& budget) {
  if (n > budget.element_cap) {
    throw BudgetExceededError("prefix count fallback beyond enumeration cap");
  }
  Int count = 0;
  for (Int i = 1; i <= n; ++i) {
    if (e.contains(i)) ++count;
  }
  return count;
}

}  // namespace

Int SetExpr::count_upto(const Int& n, const Budget& budget) const {
  if (n < 1) return 0;
  switch (kind()) {
    case Kind::Empty:
      return 0;
    case Kind::Full:
      return n;
    case Kind::Finite: {
      const auto& xs = finite_elements();
      return Int(std::upper_bound(xs.begin(), xs.end(), n) - xs.begin());
    }
    case Kind::Ap:
      if (n < ap_first()) return 0;
      return (n - ap_first()) / ap_step() + 1;
    case Kind::Blocks: {
      const IntervalScheme& s = blocks_scheme();
      auto m_opt = s.locate(n);
      if (!m_opt) return 0;
      const Int& m = *m_opt;
      Int total = 0;
      // Full intervals below I_m telescope to k_{hi+1} - k_lo per index run.
      if (m > 1) {
        RunList idx = blocks_index().runs_upto(m - 1, budget);
        for (const Run& r : idx.runs()) {
          total += s.boundary(r.hi + 1) - s.boundary(r.lo);
        }
      }
      if (blocks_index().contains(m)) total += n - s.boundary(m) + 1;
      return total;
    }
    case Kind::BranchCodes: {
      const Int& mult = branch_multiplier();
      Int count = 0;
      for (unsigned long len = 1;; ++len) {
        Int smallest = mult * pow2(len);  // least possible scaled code of this length
        if (smallest > n) break;
        if (mult * branch().prefix_code(len) <= n) ++count;
      }
      return count;
    }
    case Kind::Complement:
      return n - inner().count_upto(n, budget);
    case Kind::Shift: {
      const Int& k = shift_offset();
      if (k >= 0) {
        if (n <= k) return 0;
        return inner().count_upto(n - k, budget);
      }
      // Elements are x + k for x in the set with x + k >= 1, x + k <= n.
      return inner().count_upto(n - k, budget) - inner().count_upto(-k, budget);
    }
    case Kind::Union:
    case Kind::Inter:
    case Kind::Diff: {
      // Same-scheme block intersections collapse to an index intersection.
      if (kind() == Kind::Inter && lhs().kind() == Kind::Blocks &&
          rhs().kind() == Kind::Blocks && lhs().blocks_scheme() == rhs().blocks_scheme()) {
        return blocks(lhs().blocks_scheme(), inter(lhs().blocks_index(), rhs().blocks_index()))
            .count_upto(n, budget);
      }
      try {
        RunList rl = runs_upto(n, budget);
        return rl.total();
      } catch (const BudgetExceededError&) {
        return count_by_scan(*this, n, budget);
      }
    }
  }
  throw DomainError("unreachable expression kind");
}

RunList SetExpr::runs_upto(const Int& limit, const Budget& budget) const {
  RunList out;
  if (limit < 1) return out;
  switch (kind()) {
    case Kind::Empty:
      return out;
    case Kind::Full:
      out.push(1, limit);
      return out;
    case Kind::Finite:
      for (const Int& x : finite_elements()) {
        if (x > limit) break;
        out.push(x, x);
      }
      return out;
    case Kind::Ap: {
      if (ap_first() > limit) return out;
      if (ap_step() == 1) {
        out.push(ap_first(), limit);
        return out;
      }
      Int count = (limit - ap_first()) / ap_step() + 1;
      if (count > budget.element_cap) {
        throw BudgetExceededError("run decomposition of ap beyond element cap");
      }
      for (Int x = ap_first(); x <= limit; x += ap_step()) out.push(x, x);
      return out;
    }
    case Kind::Blocks: {
      const IntervalScheme& s = blocks_scheme();
      auto m_opt = s.locate(limit);
      if (!m_opt) return out;
      RunList idx = blocks_index().runs_upto(*m_opt, budget);
      for (const Run& r : idx.runs()) {
        Int lo = s.boundary(r.lo);
        Int hi = std::min(Int(s.boundary(r.hi + 1) - 1), limit);
        out.push(std::move(lo), std::move(hi));
      }
      return out;
    }
    case Kind::BranchCodes: {
      const Int& mult = branch_multiplier();
      for (unsigned long len = 1;; ++len) {
        if (mult * pow2(len) > limit) break;
        Int code = mult * branch().prefix_code(len);
        if (code <= limit) out.push(code, code);
      }
      return out;
    }
    case Kind::Union:
      return RunList::unite(lhs().runs_upto(limit, budget), rhs().runs_upto(limit, budget));
    case Kind::Inter: {
      // Decompose the likely-sparser side first; when it is small, filter its
      // elements pointwise instead of materializing the other side (which may
      // be a progression with limit/step singleton runs).
      const bool lhs_first = runs_cost_rank(lhs()) <= runs_cost_rank(rhs());
      const SetExpr& first = lhs_first ? lhs() : rhs();
      const SetExpr& second = lhs_first ? rhs() : lhs();
      RunList first_runs = first.runs_upto(limit, budget);
      if (first_runs.total() <= 1024) {
        for (const Int& x : first_runs.elements(budget.element_cap)) {
          if (second.contains(x)) out.push(x, x);
        }
        return out;
      }
      return RunList::intersect(first_runs, second.runs_upto(limit, budget));
    }
    case Kind::Diff: {
      RunList base = lhs().runs_upto(limit, budget);
      if (base.total() <= 1024) {
        for (const Int& x : base.elements(budget.element_cap)) {
          if (!rhs().contains(x)) out.push(x, x);
        }
        return out;
      }
      return RunList::subtract(base, rhs().runs_upto(limit, budget));
    }
    case Kind::Complement:
      return RunList::complement(inner().runs_upto(limit, budget), limit);
    case Kind::Shift: {
      const Int& k = shift_offset();
      RunList base = inner().runs_upto(limit - k, budget);
      return RunList::shift_clip(base, k, limit);
    }
  }
  throw DomainError("unreachable expression kind");
}

std::vector<Int> SetExpr::elements_upto(const Int& limit, const Budget& budget) const {
  return runs_upto(limit, budget).elements(budget.element_cap);
}

bool SetExpr::operator==(const SetExpr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Empty:
    case Kind::Full:
      return true;
    case Kind::Finite:
      return finite_elements() == other.finite_elements();
    case Kind::Ap:
      return ap_first() == other.ap_first() && ap_step() == other.ap_step();
    case Kind::Blocks:
      return blocks_scheme() == other.blocks_scheme() && blocks_index() == other.blocks_index();
    case Kind::BranchCodes:
      return branch() == other.branch() && branch_multiplier() == other.branch_multiplier();
    case Kind::Union:
    case Kind::Inter:
    case Kind::Diff:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Complement:
      return inner() == other.inner();
    case Kind::Shift:
      return shift_offset() == other.shift_offset() && inner() == other.inner();
  }
  return false;
}

}  // namespace densitylab
