#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oag/numeric.hpp"

namespace oag {

// chi-profile of an archimedean block: exp(p) is the exponent with
// [B : pB] = p^exp(p), infinity meaning infinite index. A default exponent
// (0 or 1) applies to every prime without an explicit exception, and
// exceptions must differ from the default so the representation is canonical.
class DivisibilityProfile {
 public:
  DivisibilityProfile(int default_exp, std::map<unsigned long, ExtNat> exceptions);

  static DivisibilityProfile divisible() { return DivisibilityProfile(0, {}); }
  static DivisibilityProfile z_like() { return DivisibilityProfile(1, {}); }
  // Z_(p): exponent 1 at p, divisible elsewhere.
  static DivisibilityProfile z_localized(unsigned long p);

  int default_exp() const { return default_exp_; }
  const std::map<unsigned long, ExtNat>& exceptions() const { return exceptions_; }

  ExtNat exp(unsigned long p) const;
  bool p_divisible(unsigned long p) const { return exp(p).is_zero(); }
  // True when exp(p) = 0 for every prime, i.e. the block is divisible.
  bool fully_divisible() const { return default_exp_ == 0 && exceptions_.empty(); }
  // True when exp(p) >= 1 for some prime. With default 1 this is automatic.
  bool somewhere_non_divisible() const;
  // Primes with exp = infinity (always finitely many).
  std::vector<unsigned long> infinite_index_primes() const;

  friend bool operator==(const DivisibilityProfile&, const DivisibilityProfile&) = default;

 private:
  int default_exp_;
  std::map<unsigned long, ExtNat> exceptions_;
};

enum class BlockKind { Discrete, Dense };

// A non-trivial archimedean ordered abelian group, described up to the data
// the invariants depend on: discrete vs dense, and the chi-profile. A
// discrete archimedean group is Z, which pins its profile.
class ArchimedeanBlock {
 public:
  ArchimedeanBlock(BlockKind kind, DivisibilityProfile profile);

  static ArchimedeanBlock Z() { return {BlockKind::Discrete, DivisibilityProfile::z_like()}; }
  static ArchimedeanBlock Q() { return {BlockKind::Dense, DivisibilityProfile::divisible()}; }
  static ArchimedeanBlock dense(DivisibilityProfile p) { return {BlockKind::Dense, std::move(p)}; }

  BlockKind kind() const { return kind_; }
  const DivisibilityProfile& profile() const { return profile_; }
  ExtNat exp(unsigned long p) const { return profile_.exp(p); }

  friend bool operator==(const ArchimedeanBlock&, const ArchimedeanBlock&) = default;

 private:
  BlockKind kind_;
  DivisibilityProfile profile_;
};

// Expression tree for a presented group: lexicographic sums of archimedean
// blocks, omega-fold repeats of one block, and the sum of Z_(p) over all
// primes. Index 0 of a lex node is the dominant summand.
class GroupExpr {
 public:
  struct Lex;
  struct Block {
    ArchimedeanBlock block;
    friend bool operator==(const Block&, const Block&) = default;
  };
  struct Omega {
    ArchimedeanBlock block;
    friend bool operator==(const Omega&, const Omega&) = default;
  };
  struct Zhat {
    friend bool operator==(const Zhat&, const Zhat&) = default;
  };
  struct Lex {
    std::vector<GroupExpr> children;
    friend bool operator==(const Lex&, const Lex&) = default;
  };
  using Node = std::variant<Block, Omega, Zhat, Lex>;

  static GroupExpr block(ArchimedeanBlock b) { return GroupExpr(Block{std::move(b)}); }
  static GroupExpr Z() { return block(ArchimedeanBlock::Z()); }
  static GroupExpr Q() { return block(ArchimedeanBlock::Q()); }
  static GroupExpr lex(std::vector<GroupExpr> children);
  static GroupExpr omega(ArchimedeanBlock b) { return GroupExpr(Omega{std::move(b)}); }
  static GroupExpr zhat_primes() { return GroupExpr(Zhat{}); }

  const Node& node() const { return *node_; }

  // Splices nested lex nodes and unwraps singleton sums. Semantics-preserving.
  GroupExpr flatten() const;

  friend bool operator==(const GroupExpr& a, const GroupExpr& b) { return *a.node_ == *b.node_; }

 private:
  explicit GroupExpr(Node n) : node_(std::make_shared<Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

enum class SegKind { Single, OmegaRep, PrimeFan };

// One summand of the flattened form: a single block, omega copies of a
// block, or the fan of Z_(p) over all primes in ascending order.
struct Segment {
  SegKind kind;
  std::optional<ArchimedeanBlock> block;  // Single and OmegaRep only

  friend bool operator==(const Segment&, const Segment&) = default;
};

// A position in the block order of a presentation: all blocks strictly
// before (seg, off) are dropped by the corresponding tail. off counts blocks
// skipped inside segment `seg` and is only nonzero inside infinite segments.
// The end position (#segments, 0) is the zero subgroup's cut.
struct Cut {
  std::size_t seg = 0;
  unsigned long long off = 0;

  friend auto operator<=>(const Cut&, const Cut&) = default;
};

// The flattened working form of a group expression.
class Presentation {
 public:
  explicit Presentation(const GroupExpr& expr);

  const GroupExpr& expr() const { return expr_; }
  const std::vector<Segment>& segments() const { return segs_; }

  bool finite() const { return finite_; }
  // Number of blocks; only for finite presentations.
  std::size_t block_count() const;

  Cut begin_cut() const { return Cut{0, 0}; }
  Cut end_cut() const { return Cut{segs_.size(), 0}; }
  bool is_zero_cut(const Cut& c) const { return c == end_cut(); }

  // The block sitting at position c (the first block of tail(c)).
  // Precondition: c is a valid non-end cut.
  ArchimedeanBlock block_at(const Cut& c) const;

  // Validity and normalisation: inside a Single segment only offset 0 is
  // legal; the end cut is (#segments, 0).
  bool valid_cut(const Cut& c) const;
  void require_cut(const Cut& c) const;

  // Cut after the block at flat position i (finite presentations).
  Cut cut_from_flat(std::size_t i) const;
  // Flat position of a cut in a finite presentation.
  std::size_t flat_of_cut(const Cut& c) const;

  std::string cut_str(const Cut& c) const;

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.segs_ == b.segs_;
  }

 private:
  GroupExpr expr_;
  std::vector<Segment> segs_;
  bool finite_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

inline PresentationPtr make_presentation(const GroupExpr& e) {
  return std::make_shared<Presentation>(e);
}

}  // namespace oag
