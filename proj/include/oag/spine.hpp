#pragma once

#include <vector>

#include "oag/core.hpp"
#include "oag/ladder.hpp"

namespace oag {

// The n-spine: the set of subgroups H_n(a). For the presented groups these
// are the tails after non-n-divisible blocks, together with zero. The spine
// is infinite exactly when an omega-repeated block is not n-divisible; in
// that case `prime` is a prime witnessing it and `generator_pos` the
// position of the first repeated copy.
struct Spine {
  mpz_class n;
  bool infinite = false;
  std::vector<Cut> members;  // ascending by inclusion: zero first (finite case)
  unsigned long prime = 0;   // infinite case only
  Cut generator_pos;         // infinite case only
};

Spine spine(const Presentation& pres, const mpz_class& n);

// Canonical map s_n: the spine member H_n(x).
Cut spine_class(const Element& x, const mpz_class& n, const Presentation& pres);

// Bracket group of alpha at modulus m: the intersection of H + mG over the
// convex subgroups H strictly containing alpha. For alpha = G the empty
// intersection is G itself.
LadderSubgroup bracket(const PresentationPtr& pres, const Cut& alpha, const mpz_class& m);

struct DefinableConvexList {
  std::vector<Cut> members;
  bool exhaustive = true;
};

// All proper definable convex subgroups: zero together with the tails after
// blocks that fail q-divisibility for some prime q. When the family is
// finite the list ascends by inclusion (zero first); when it is infinite the
// list holds the first `limit` entries of the descending enumeration
// starting at the largest proper member.
DefinableConvexList definable_convex_subgroups(const Presentation& pres, std::size_t limit);

}  // namespace oag
