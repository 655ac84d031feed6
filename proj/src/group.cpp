#include "oag/group.hpp"

#include <sstream>

namespace oag {

DivisibilityProfile::DivisibilityProfile(int default_exp,
                                         std::map<unsigned long, ExtNat> exceptions)
    : default_exp_(default_exp), exceptions_(std::move(exceptions)) {
  if (default_exp_ != 0 && default_exp_ != 1)
    fail(ErrorCode::BadBlock, "profile default exponent must be 0 or 1");
  for (const auto& [p, e] : exceptions_) {
    if (!is_prime(p))
      fail(ErrorCode::NonPrimeKey, "profile key " + std::to_string(p) + " is not prime");
    if (e == ExtNat(static_cast<unsigned long>(default_exp_)))
      fail(ErrorCode::BadBlock,
           "redundant profile entry for prime " + std::to_string(p) +
               " (exception equals default)");
  }
}

DivisibilityProfile DivisibilityProfile::z_localized(unsigned long p) {
  std::map<unsigned long, ExtNat> exc;
  exc.emplace(p, ExtNat(1ul));
  return DivisibilityProfile(0, std::move(exc));
}

ExtNat DivisibilityProfile::exp(unsigned long p) const {
  auto it = exceptions_.find(p);
  if (it != exceptions_.end()) return it->second;
  return ExtNat(static_cast<unsigned long>(default_exp_));
}

bool DivisibilityProfile::somewhere_non_divisible() const {
  if (default_exp_ == 1) return true;
  return !exceptions_.empty();  // exceptions differ from default 0, so all are >= 1
}

std::vector<unsigned long> DivisibilityProfile::infinite_index_primes() const {
  std::vector<unsigned long> out;
  for (const auto& [p, e] : exceptions_)
    if (e.is_infinite()) out.push_back(p);
  return out;
}

ArchimedeanBlock::ArchimedeanBlock(BlockKind kind, DivisibilityProfile profile)
    : kind_(kind), profile_(std::move(profile)) {
  // A discrete archimedean group is Z; its profile is forced.
  if (kind_ == BlockKind::Discrete && profile_ != DivisibilityProfile::z_like())
    fail(ErrorCode::BadBlock, "discrete block must carry the Z profile");
}

GroupExpr GroupExpr::lex(std::vector<GroupExpr> children) {
  if (children.empty()) fail(ErrorCode::EmptySum, "lex sum needs at least one summand");
  return GroupExpr(Lex{std::move(children)});
}

namespace {
void flatten_into(const GroupExpr& e, std::vector<GroupExpr>& out) {
  if (const auto* lx = std::get_if<GroupExpr::Lex>(&e.node())) {
    for (const auto& c : lx->children) flatten_into(c, out);
  } else {
    out.push_back(e);
  }
}
}  // namespace

GroupExpr GroupExpr::flatten() const {
  std::vector<GroupExpr> leaves;
  flatten_into(*this, leaves);
  if (leaves.empty()) fail(ErrorCode::EmptySum, "lex sum needs at least one summand");
  if (leaves.size() == 1) return leaves.front();
  return GroupExpr(Lex{std::move(leaves)});
}

Presentation::Presentation(const GroupExpr& expr) : expr_(expr.flatten()) {
  std::vector<GroupExpr> leaves;
  flatten_into(expr_, leaves);
  for (const auto& leaf : leaves) {
    if (const auto* b = std::get_if<GroupExpr::Block>(&leaf.node())) {
      segs_.push_back(Segment{SegKind::Single, b->block});
    } else if (const auto* o = std::get_if<GroupExpr::Omega>(&leaf.node())) {
      segs_.push_back(Segment{SegKind::OmegaRep, o->block});
    } else {
      segs_.push_back(Segment{SegKind::PrimeFan, std::nullopt});
    }
  }
  finite_ = true;
  for (const auto& s : segs_)
    if (s.kind != SegKind::Single) finite_ = false;
}

std::size_t Presentation::block_count() const {
  if (!finite_)
    fail(ErrorCode::UnsupportedGroup, "block_count: presentation has infinitely many blocks");
  return segs_.size();
}

ArchimedeanBlock Presentation::block_at(const Cut& c) const {
  require_cut(c);
  if (is_zero_cut(c)) fail(ErrorCode::BadCut, "block_at: end position");
  const Segment& s = segs_[c.seg];
  switch (s.kind) {
    case SegKind::Single:
    case SegKind::OmegaRep:
      return *s.block;
    case SegKind::PrimeFan:
      return ArchimedeanBlock::dense(
          DivisibilityProfile::z_localized(nth_prime(static_cast<std::size_t>(c.off))));
  }
  fail(ErrorCode::Internal, "block_at: bad segment kind");
}

bool Presentation::valid_cut(const Cut& c) const {
  if (c.seg > segs_.size()) return false;
  if (c.seg == segs_.size()) return c.off == 0;
  if (segs_[c.seg].kind == SegKind::Single) return c.off == 0;
  return true;
}

void Presentation::require_cut(const Cut& c) const {
  if (!valid_cut(c))
    fail(ErrorCode::BadCut, "cut (" + std::to_string(c.seg) + "," + std::to_string(c.off) +
                                ") is not valid for this presentation");
}

Cut Presentation::cut_from_flat(std::size_t i) const {
  if (!finite_) fail(ErrorCode::UnsupportedGroup, "cut_from_flat: infinite presentation");
  if (i > segs_.size()) fail(ErrorCode::BadCut, "cut position out of range");
  return Cut{i, 0};
}

std::size_t Presentation::flat_of_cut(const Cut& c) const {
  if (!finite_) fail(ErrorCode::UnsupportedGroup, "flat_of_cut: infinite presentation");
  require_cut(c);
  return c.seg;
}

std::string Presentation::cut_str(const Cut& c) const {
  require_cut(c);
  std::ostringstream os;
  if (finite_) {
    os << "tail(" << c.seg << ")";
    return os.str();
  }
  if (segs_.size() == 1) {
    // Pure omega repeat or the prime fan: positions are naturals plus omega.
    if (c.seg == 1)
      os << "tail(omega)";
    else
      os << "tail(" << c.off << ")";
    return os.str();
  }
  os << "tail(" << c.seg << ":" << c.off << ")";
  return os.str();
}

}  // namespace oag
