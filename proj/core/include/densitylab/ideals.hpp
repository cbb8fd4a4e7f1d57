#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "densitylab/analysis.hpp"
#include "densitylab/set_expr.hpp"

namespace densitylab {

// A finite, independently re-checkable witness justifying a verdict. Each
// variant can be validated by a verifier that relies only on membership,
// prefix counting and interval bounds.
struct Certificate {
  // The set is bounded by max_element (In for Fin and friends).
  struct Boundedness {
    Int max_element;
    Int cardinality;
  };

  // An obviously infinite pattern (ap / blocks / codes, possibly shifted)
  // contained in the set. When used for a positive-density claim the pattern's
  // exact upper density is attached as a lower bound for the whole set. When
  // no clean pattern exists, growth rows (x, |e ∩ [1,x]|) evidence infinitude.
  struct InfiniteWitness {
    std::optional<SetExpr> pattern;
    std::vector<std::pair<Int, Int>> growth;
    Rat density_lower_bound{0};
  };

  // Per-block lower bounds with running sum; the tail claim names a sound
  // divergence schema (uniform positive bound, or bounds dominating a
  // harmonic family alpha/(m+gamma) over an infinite index).
  struct Divergence {
    enum class Tail { UniformBound, HarmonicFamily };
    std::optional<IntervalScheme> scheme;  // nullopt: dyadic scales [2^t, 2^{t+1})
    std::optional<SetExpr> index;          // block indices carrying the mass
    Int shift{0};                          // blocks are probed at I_m + shift
    std::vector<std::pair<Int, Rat>> per_block;  // (block index, exact lower bound)
    Rat running_sum{0};
    Tail tail = Tail::UniformBound;
    Rat uniform_bound{0};
    Rat harmonic_alpha{0};
    Int harmonic_gamma{0};
  };

  // Tail comparison bound. Summable mode: at most per_scale elements in each
  // dyadic scale past scale_start, so the tail sum is bounded. Density mode:
  // at most per_scale elements in every interval of the scheme, so the prefix
  // ratio vanishes.
  struct Convergence {
    enum class Mode { SummableTail, DensityTail };
    Mode mode = Mode::SummableTail;
    std::optional<IntervalScheme> scheme;  // density mode only
    Int per_scale{0};
    std::uint64_t scale_start = 0;
    Rat tail_bound{0};  // exact upper bound for the tail sum (summable mode)
    std::vector<std::pair<Int, Int>> probed;  // (scale/interval, exact count)
  };

  // Per-piece verdict rows for partition ideals.
  struct ComponentTable {
    struct Row {
      std::uint64_t piece;
      bool finite;
      Int bound;  // max element when finite, probe witness count otherwise
    };
    std::vector<Row> rows;
  };

  // Scheme intervals fully contained in the set, indexed by an infinite
  // expression (the Talagrand positivity pattern).
  struct IntervalPattern {
    IntervalScheme scheme;
    SetExpr index;
  };

  using Payload = std::variant<Boundedness, InfiniteWitness, Divergence, Convergence,
                               ComponentTable, IntervalPattern>;
  Payload payload;

  std::string type_name() const;
};

enum class Decision { In, NotIn, Unknown };

enum class UnknownReason { None, Budget, UnsupportedShape };

// Sound three-valued verdict: In / NotIn always carry a certificate, Unknown
// never does.
struct Verdict {
  Decision decision = Decision::Unknown;
  UnknownReason reason = UnknownReason::UnsupportedShape;
  std::optional<Certificate> certificate;
  std::string note;

  static Verdict in(Certificate cert, std::string note = {});
  static Verdict not_in(Certificate cert, std::string note = {});
  static Verdict unknown(UnknownReason reason, std::string note = {});

  bool decided() const { return decision != Decision::Unknown; }
};

// Pairwise disjoint infinite pieces covering the naturals. The shipped
// default is P_n = ap(2^{n-1}, 2^n): odds, twice the odds, four times, ...
class Partition {
 public:
  static Partition dyadic();
  // Caller asserts the pieces are pairwise disjoint, infinite, and (with the
  // implicit rest) cover the naturals; used for tests and experiments.
  static Partition explicit_pieces(std::vector<SetExpr> pieces);

  SetExpr piece(std::uint64_t n) const;  // n >= 1
  // Index of the piece containing x (scans explicit pieces up to their count).
  std::optional<std::uint64_t> locate(const Int& x) const;
  // Recognizes a piece expression syntactically.
  std::optional<std::uint64_t> piece_index_of(const SetExpr& e) const;
  bool is_dyadic() const { return pieces_.empty(); }
  std::uint64_t explicit_count() const { return pieces_.size(); }

  bool operator==(const Partition& other) const;

 private:
  std::vector<SetExpr> pieces_;  // empty: dyadic default
};

struct SummableWeight {
  enum class Kind { Harmonic, PowerLaw };
  Kind kind = Kind::Harmonic;
  // PowerLaw exponent p = num/den with 0 < p <= 1.
  unsigned long num = 1;
  unsigned long den = 1;

  static SummableWeight harmonic() { return {}; }
  static SummableWeight power_law(unsigned long num, unsigned long den);

  // Exact rational lower bound for f(x) = x^(-p): the reciprocal of the
  // ceiling integer root.
  Rat value_lower_bound(const Int& x) const;
  std::string text() const;
  bool operator==(const SummableWeight&) const = default;
};

// Named ideal with a certificate-producing membership procedure.
class IdealOracle {
 public:
  enum class Kind { Fin, DensityZero, Summable, PieceFinite };

  static IdealOracle fin();
  static IdealOracle density_zero();
  static IdealOracle summable(SummableWeight weight = {});
  static IdealOracle piece_finite(Partition partition = Partition::dyadic());

  Kind kind() const { return kind_; }
  const SummableWeight& weight() const { return weight_; }
  const Partition& partition() const { return partition_; }
  std::string name() const;

  bool operator==(const IdealOracle& other) const;

 private:
  Kind kind_ = Kind::Fin;
  SummableWeight weight_;
  Partition partition_ = Partition::dyadic();
};

// Sound, certificate-producing membership. Unknown appears only when the
// expression falls outside the decidable fragment or the budget runs out.
Verdict ideal_member(const IdealOracle& ideal, const SetExpr& e, const Budget& budget = {});

// Finite set of piece indices e can meet (e is contained in the union of the
// returned pieces), derived syntactically; nullopt when no finite support
// bound exists.
std::optional<std::set<std::uint64_t>> piece_support(const SetExpr& e,
                                                     const Partition& partition,
                                                     const Budget& budget = {});

// Positivity against the interval characterization: a NotIn verdict means the
// set provably contains infinitely many scheme intervals, hence lies in the
// coideal of any ideal the scheme characterizes. Otherwise Unknown, with a
// note recording how many of the first `probe` intervals are contained.
Verdict talagrand_positive(const IntervalScheme& scheme, const SetExpr& e,
                           std::uint64_t probe = 20, const Budget& budget = {});

// Independent re-check of a decided verdict. Uses membership, prefix counts
// and interval bounds only; spot checks sample finitely many points.
bool recheck_verdict(const IdealOracle& ideal, const SetExpr& e, const Verdict& verdict,
                     const Budget& budget = {});

// Re-check for talagrand_positive verdicts.
bool recheck_positivity(const IntervalScheme& scheme, const SetExpr& e, const Verdict& verdict,
                        std::uint64_t probe = 8, const Budget& budget = {});

}  // namespace densitylab
