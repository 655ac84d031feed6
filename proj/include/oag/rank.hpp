#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "oag/ladder.hpp"
#include "oag/spine.hpp"

namespace oag {

// One member H + p^e G of an inp-witness family; e = infinity encodes the
// bare convex subgroup H.
struct InpMember {
  unsigned long prime;
  Cut base;
  ExtNat exp;
  LadderSubgroup group;
};

// Family of definable subgroups whose leave-one-out relative indices are all
// infinite. Per prime the exponents strictly increase, none is zero, and an
// infinite exponent only tops a chain.
struct InpFamily {
  std::vector<InpMember> members;
};

// Materialised head of the infinite chain G_{beta_i} + p^{i+1} G drawn from
// an infinite p-spine. The full chain intersects to zero.
struct InfiniteSpineChain {
  unsigned long prime = 0;
  std::vector<Cut> bases;
  std::vector<LadderSubgroup> members;
};

// Proper definable convex subgroup strictly containing every maximal
// infinite-index spine member (the c_G = 1 witness).
struct ProperContainer {
  Cut container;
};

using Witness = std::variant<InpFamily, InfiniteSpineChain, ProperContainer>;

struct PInfinitySet {
  bool infinite = false;               // cofinitely many primes qualify
  std::vector<unsigned long> primes;   // the set, when finite
};

struct PrimeRankData {
  unsigned long p = 2;
  Spine spn;
  std::vector<Cut> s_infinity;         // finite-spine case
  std::optional<std::size_t> kp;       // absent when the spine is infinite
};

enum class VerdictKind { DpMinimal, StronglyDependentFiniteRank, NotStronglyDependent };

const char* verdict_name(VerdictKind v);

struct RankReport {
  PInfinitySet p_infinity;
  std::vector<PrimeRankData> per_prime;
  int c_g = 0;
  std::optional<Cut> c_g_witness;
  RankValue dp_rank_reduct;
  RankValue dp_rank;
  VerdictKind verdict = VerdictKind::DpMinimal;
  std::vector<Witness> witnesses;
};

// Primes p with [G : pG] infinite.
PInfinitySet p_infinity(const Presentation& pres);

// Members of S_p with infinite-index consecutive quotient (G on top).
std::vector<Cut> s_infinity_members(const Presentation& pres, unsigned long p,
                                    const Spine& spn);

// |S_p^infinity|; throws InfiniteSpine when S_p is not finite.
std::size_t k_p(const Presentation& pres, unsigned long p);

// Whether S_p is finite for every p (fails only through a non-divisible
// omega-repeated block in this representation).
bool finite_spines(const Presentation& pres);

// 1 plus witness if a proper definable convex subgroup strictly contains
// every maximal S_p^infinity member; 0 otherwise (also when P_inf is empty).
std::pair<int, std::optional<Cut>> c_G(const Presentation& pres);

RankValue dp_rank_reduct(const Presentation& pres);
RankValue dp_rank(const Presentation& pres);

// The inp-family realising the computed rank; requires finite rank. When
// c_G = 1 the container joins the smallest prime's chain with an infinite
// exponent, which is exactly the shape constraint allows.
InpFamily inp_witness(const PresentationPtr& pres);

RankReport verdict(const PresentationPtr& pres, std::size_t chain_first_k = 4);

struct AntiregularityResult {
  bool antiregular = false;  // never true for groups this DSL presents
  enum class WitnessKind { RankOneQuotient, PDivisibleQuotient } kind =
      WitnessKind::RankOneQuotient;
  Cut kernel;
};

// Witness that the group is not p-antiregular: a convex kernel whose
// quotient is rank one, or a non-trivial p-divisible quotient.
AntiregularityResult antiregularity(const Presentation& pres, unsigned long p);

// Leave-one-out verification of an inp family via the exact index op, plus
// the shape constraints. An empty family verifies trivially.
bool verify_inp_family(const InpFamily& fam, std::string* why = nullptr);

// The intersection of the full infinite chain (the zero subgroup once the
// moduli grow without bound over every block).
LadderSubgroup chain_full_intersection(const InfiniteSpineChain& chain);

// Chain checks: members strictly descend, and every proper subintersection
// of the materialised members has infinite index over the full intersection.
bool verify_chain(const InfiniteSpineChain& chain, std::string* why = nullptr);

}  // namespace oag
