#include "oag/spine.hpp"

#include <algorithm>

namespace oag {

Spine spine(const Presentation& pres, const mpz_class& n) {
  if (n <= 0) fail(ErrorCode::BadCut, "spine: n must be positive");
  Spine out;
  out.n = n;
  const auto& segs = pres.segments();
  std::vector<Cut> cuts;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    switch (segs[s].kind) {
      case SegKind::Single:
        if (!block_n_divisible(*segs[s].block, n)) cuts.push_back(Cut{s + 1, 0});
        break;
      case SegKind::OmegaRep: {
        const ArchimedeanBlock& b = *segs[s].block;
        if (block_n_divisible(b, n)) break;
        // every copy contributes a distinct spine member
        out.infinite = true;
        out.generator_pos = Cut{s, 0};
        // witness prime: a prime dividing n with exp >= 1 on the block
        for (const auto& [q, e] : b.profile().exceptions()) {
          if (!e.is_zero() && mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            out.prime = q;
            break;
          }
        }
        if (out.prime == 0) {
          // default exponent 1: any prime factor of n outside the exp-0
          // exceptions works; the smallest factor is canonical
          mpz_class rest = n;
          while (rest > 1) {
            unsigned long q = smallest_prime_factor(rest);
            if (!b.exp(q).is_zero()) {
              out.prime = q;
              break;
            }
            rest = remove_factor(rest, q).second;
          }
        }
        return out;
      }
      case SegKind::PrimeFan: {
        for (const auto& [q, v] : factorize(n)) {
          auto idx = prime_index(q);
          if (idx) cuts.push_back(Cut{s, static_cast<unsigned long long>(*idx) + 1});
        }
        break;
      }
    }
  }
  cuts.push_back(pres.end_cut());  // zero is always a member
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  // ascending by inclusion = descending cut order
  std::reverse(cuts.begin(), cuts.end());
  out.members = std::move(cuts);
  return out;
}

Cut spine_class(const Element& x, const mpz_class& n, const Presentation& pres) {
  return H_n(x, n, pres);
}

LadderSubgroup bracket(const PresentationPtr& pres, const Cut& alpha, const mpz_class& m) {
  if (!pres->finite())
    fail(ErrorCode::UnsupportedGroup, "bracket: finite presentations only");
  if (!pres->valid_cut(alpha))
    fail(ErrorCode::BadSubgroup, "bracket: not a convex subgroup of this group");
  if (m <= 0) fail(ErrorCode::BadSubgroup, "bracket: modulus must be positive");
  // Intersection of H + mG over the tails H strictly above alpha. Empty for
  // alpha = G, where the convention yields G.
  LadderSubgroup acc = LadderSubgroup::full(pres);
  for (std::size_t c = 0; c < alpha.seg; ++c)
    acc = intersect(acc, LadderSubgroup::tail_plus(pres, Cut{c, 0}, m));
  return acc;
}

DefinableConvexList definable_convex_subgroups(const Presentation& pres, std::size_t limit) {
  DefinableConvexList out;
  const auto& segs = pres.segments();

  // First segment contributing infinitely many definable tails, if any.
  std::optional<std::size_t> inf_seg;
  for (std::size_t s = 0; s < segs.size() && !inf_seg; ++s) {
    if (segs[s].kind == SegKind::PrimeFan ||
        (segs[s].kind == SegKind::OmegaRep &&
         segs[s].block->profile().somewhere_non_divisible()))
      inf_seg = s;
  }

  if (inf_seg) {
    // Infinite family: the first `limit` entries of the descending
    // enumeration (largest proper subgroup first, i.e. ascending cuts).
    out.exhaustive = false;
    for (std::size_t t = 0; t < *inf_seg && out.members.size() < limit; ++t)
      if (segs[t].kind == SegKind::Single &&
          segs[t].block->profile().somewhere_non_divisible())
        out.members.push_back(Cut{t + 1, 0});
    for (unsigned long long k = 1; out.members.size() < limit; ++k)
      out.members.push_back(Cut{*inf_seg, k});
    return out;
  }

  for (std::size_t s = 0; s < segs.size(); ++s)
    if (segs[s].kind == SegKind::Single &&
        segs[s].block->profile().somewhere_non_divisible())
      out.members.push_back(Cut{s + 1, 0});
  out.members.push_back(pres.end_cut());  // zero
  // finite family: ascending by inclusion, zero first
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  std::reverse(out.members.begin(), out.members.end());
  if (out.members.size() > limit) {
    out.members.resize(limit);
    out.exhaustive = false;
  }
  return out;
}

}  // namespace oag
