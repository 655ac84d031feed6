#include "oag/rank.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace oag {

const char* verdict_name(VerdictKind v) {
  switch (v) {
    case VerdictKind::DpMinimal: return "DpMinimal";
    case VerdictKind::StronglyDependentFiniteRank: return "StronglyDependentFiniteRank";
    case VerdictKind::NotStronglyDependent: return "NotStronglyDependent";
  }
  return "?";
}

PInfinitySet p_infinity(const Presentation& pres) {
  PInfinitySet out;
  std::set<unsigned long> primes;
  for (const auto& seg : pres.segments()) {
    switch (seg.kind) {
      case SegKind::Single:
        for (unsigned long p : seg.block->profile().infinite_index_primes()) primes.insert(p);
        break;
      case SegKind::OmegaRep: {
        const DivisibilityProfile& prof = seg.block->profile();
        if (prof.default_exp() == 1) {
          // exp >= 1 for cofinitely many primes, each contributing omega often
          out.infinite = true;
          return out;
        }
        for (const auto& [q, e] : prof.exceptions())
          if (!e.is_zero()) primes.insert(q);
        break;
      }
      case SegKind::PrimeFan:
        break;  // [G : pG] = p over the fan
    }
  }
  out.primes.assign(primes.begin(), primes.end());
  return out;
}

std::vector<Cut> s_infinity_members(const Presentation& pres, unsigned long p,
                                    const Spine& spn) {
  if (spn.infinite) fail(ErrorCode::InfiniteSpine, "S_p^inf needs a finite spine");
  std::vector<Cut> out;
  for (std::size_t i = 0; i < spn.members.size(); ++i) {
    Cut lower = spn.members[i];
    Cut upper = (i + 1 < spn.members.size()) ? spn.members[i + 1] : pres.begin_cut();
    if (segment_exp(pres, upper, lower, p).is_infinite()) out.push_back(lower);
  }
  return out;
}

std::size_t k_p(const Presentation& pres, unsigned long p) {
  if (!is_prime(p)) fail(ErrorCode::NonPrimeKey, "k_p: p must be prime");
  Spine spn = spine(pres, mpz_class(p));
  if (spn.infinite)
    fail(ErrorCode::InfiniteSpine, "k_p undefined: the " + std::to_string(p) + "-spine is infinite");
  return s_infinity_members(pres, p, spn).size();
}

bool finite_spines(const Presentation& pres) {
  for (const auto& seg : pres.segments())
    if (seg.kind == SegKind::OmegaRep && seg.block->profile().somewhere_non_divisible())
      return false;
  return true;
}

namespace {

// First definable convex subgroup below G in the descending enumeration
// (the largest proper one), if any.
std::optional<Cut> largest_proper_definable(const Presentation& pres) {
  const auto& segs = pres.segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    switch (segs[s].kind) {
      case SegKind::Single:
        if (segs[s].block->profile().somewhere_non_divisible()) return Cut{s + 1, 0};
        break;
      case SegKind::OmegaRep:
        if (segs[s].block->profile().somewhere_non_divisible()) return Cut{s, 1};
        break;
      case SegKind::PrimeFan:
        return Cut{s, 1};
    }
  }
  return std::nullopt;
}

}  // namespace

std::pair<int, std::optional<Cut>> c_G(const Presentation& pres) {
  PInfinitySet pinf = p_infinity(pres);
  if (pinf.infinite || pinf.primes.empty()) return {0, std::nullopt};
  if (!finite_spines(pres)) fail(ErrorCode::InfiniteSpine, "c_G needs finite spines");
  // smallest cut (largest subgroup) among the maximal S_p^inf members
  std::optional<Cut> c_min;
  for (unsigned long p : pinf.primes) {
    Spine spn = spine(pres, mpz_class(p));
    auto sinf = s_infinity_members(pres, p, spn);
    if (sinf.empty()) fail(ErrorCode::Internal, "c_G: empty S_p^inf for p in P_inf");
    Cut hp = sinf.back();  // members ascend by inclusion
    if (!c_min || hp < *c_min) c_min = hp;
  }
  auto first = largest_proper_definable(pres);
  if (first && *first < *c_min) return {1, first};
  return {0, std::nullopt};
}

RankValue dp_rank_reduct(const Presentation& pres) {
  PInfinitySet pinf = p_infinity(pres);
  if (pinf.infinite || !finite_spines(pres)) return RankValue::infinite();
  if (pinf.primes.empty()) return RankValue::finite(1);
  std::uint64_t total = static_cast<std::uint64_t>(c_G(pres).first);
  for (unsigned long p : pinf.primes) total += k_p(pres, p);
  return RankValue::finite(total);
}

RankValue dp_rank(const Presentation& pres) {
  PInfinitySet pinf = p_infinity(pres);
  if (pinf.infinite || !finite_spines(pres)) return RankValue::infinite();
  std::uint64_t total = 1;
  for (unsigned long p : pinf.primes) total += k_p(pres, p);
  return RankValue::finite(total);
}

InpFamily inp_witness(const PresentationPtr& pres) {
  if (!dp_rank(*pres).aleph0) {
    // fine: finite rank
  } else {
    fail(ErrorCode::NotFiniteRank, "inp_witness requires finite dp-rank");
  }
  InpFamily fam;
  PInfinitySet pinf = p_infinity(*pres);
  for (unsigned long p : pinf.primes) {
    Spine spn = spine(*pres, mpz_class(p));
    auto sinf = s_infinity_members(*pres, p, spn);
    mpz_class pe = 1;
    for (std::size_t j = 0; j < sinf.size(); ++j) {
      pe *= p;  // p^(j+1)
      fam.members.push_back(InpMember{p, sinf[j], ExtNat(mpz_class(j + 1)),
                                      LadderSubgroup::tail_plus(pres, sinf[j], pe)});
    }
  }
  auto [cg, cg_witness] = c_G(*pres);
  if (cg == 1) {
    unsigned long p0 = pinf.primes.front();
    fam.members.push_back(InpMember{p0, *cg_witness, ExtNat::infinity(),
                                    LadderSubgroup::tail(pres, *cg_witness)});
  }
  return fam;
}

namespace {

// Smallest prime with exp >= 1 on the block.
unsigned long smallest_relevant_prime(const ArchimedeanBlock& b) {
  const DivisibilityProfile& prof = b.profile();
  if (prof.default_exp() == 0) {
    unsigned long best = 0;
    for (const auto& [q, e] : prof.exceptions())
      if (!e.is_zero() && (best == 0 || q < best)) best = q;
    return best;  // 0 when the block is divisible
  }
  for (std::size_t i = 0;; ++i) {
    unsigned long q = nth_prime(i);
    if (!b.exp(q).is_zero()) return q;
  }
}

InfiniteSpineChain build_chain(const PresentationPtr& pres, std::size_t first_k) {
  // First omega segment with a non-divisible block carries the infinite
  // spine; its copies give the distinct spine members.
  const auto& segs = pres->segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (segs[s].kind != SegKind::OmegaRep) continue;
    const ArchimedeanBlock& b = *segs[s].block;
    if (!b.profile().somewhere_non_divisible()) continue;
    InfiniteSpineChain chain;
    chain.prime = smallest_relevant_prime(b);
    mpz_class pe = 1;
    for (std::size_t i = 0; i < first_k; ++i) {
      pe *= chain.prime;  // p^(i+1)
      Cut base{s, static_cast<unsigned long long>(i) + 1};
      chain.bases.push_back(base);
      chain.members.push_back(LadderSubgroup::tail_plus(pres, base, pe));
    }
    return chain;
  }
  fail(ErrorCode::Internal, "build_chain: no infinite spine present");
}

}  // namespace

RankReport verdict(const PresentationPtr& pres, std::size_t chain_first_k) {
  RankReport rep;
  rep.p_infinity = p_infinity(*pres);
  bool fin_spines = finite_spines(*pres);

  if (!rep.p_infinity.infinite) {
    for (unsigned long p : rep.p_infinity.primes) {
      PrimeRankData d;
      d.p = p;
      d.spn = spine(*pres, mpz_class(p));
      if (!d.spn.infinite) {
        d.s_infinity = s_infinity_members(*pres, p, d.spn);
        d.kp = d.s_infinity.size();
      }
      rep.per_prime.push_back(std::move(d));
    }
  }

  if (rep.p_infinity.infinite || !fin_spines) {
    rep.dp_rank = RankValue::infinite();
    rep.dp_rank_reduct = RankValue::infinite();
    rep.verdict = VerdictKind::NotStronglyDependent;
    rep.witnesses.push_back(build_chain(pres, chain_first_k));
    return rep;
  }

  auto [cg, cg_witness] = c_G(*pres);
  rep.c_g = cg;
  rep.c_g_witness = cg_witness;
  rep.dp_rank_reduct = dp_rank_reduct(*pres);
  rep.dp_rank = dp_rank(*pres);
  rep.verdict = (rep.dp_rank == RankValue::finite(1)) ? VerdictKind::DpMinimal
                                                      : VerdictKind::StronglyDependentFiniteRank;
  rep.witnesses.push_back(inp_witness(pres));
  if (cg == 1) rep.witnesses.push_back(ProperContainer{*cg_witness});
  return rep;
}

AntiregularityResult antiregularity(const Presentation& pres, unsigned long p) {
  if (!is_prime(p)) fail(ErrorCode::NonPrimeKey, "antiregularity: p must be prime");
  AntiregularityResult res;
  res.antiregular = false;
  // Position of the most dominant block with exp_p >= 1, if any.
  std::optional<Cut> first_heavy;
  const auto& segs = pres.segments();
  for (std::size_t s = 0; s < segs.size() && !first_heavy; ++s) {
    switch (segs[s].kind) {
      case SegKind::Single:
      case SegKind::OmegaRep:
        if (!segs[s].block->exp(p).is_zero()) first_heavy = Cut{s, 0};
        break;
      case SegKind::PrimeFan: {
        auto idx = prime_index(p);
        if (idx) first_heavy = Cut{s, static_cast<unsigned long long>(*idx)};
        break;
      }
    }
  }
  if (!first_heavy || *first_heavy == pres.begin_cut()) {
    // p-divisible group, or the dominant block is already non-p-divisible:
    // the quotient by the tail after the first block has rank one.
    res.kind = AntiregularityResult::WitnessKind::RankOneQuotient;
    const Segment& s0 = pres.segments().front();
    res.kernel = (s0.kind == SegKind::Single) ? Cut{1, 0} : Cut{0, 1};
    return res;
  }
  // Everything above the first heavy block is p-divisible and non-trivial.
  res.kind = AntiregularityResult::WitnessKind::PDivisibleQuotient;
  res.kernel = *first_heavy;
  return res;
}

bool verify_inp_family(const InpFamily& fam, std::string* why) {
  auto explain = [why](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (fam.members.empty()) return true;
  const PresentationPtr& pres = fam.members.front().group.pres();
  // shape constraints per prime
  std::map<unsigned long, std::vector<const InpMember*>> by_prime;
  for (const auto& m : fam.members) by_prime[m.prime].push_back(&m);
  for (auto& [p, ms] : by_prime) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i]->exp.is_zero()) return explain("zero exponent in family");
      if (i + 1 < ms.size()) {
        if (!(ms[i]->exp < ms[i + 1]->exp)) return explain("exponents not strictly increasing");
        if (ms[i]->exp.is_infinite()) return explain("infinite exponent below the top");
      }
    }
  }
  // leave-one-out indices
  LadderSubgroup all = LadderSubgroup::full(pres);
  for (const auto& m : fam.members) all = intersect(all, m.group);
  for (std::size_t skip = 0; skip < fam.members.size(); ++skip) {
    LadderSubgroup part = LadderSubgroup::full(pres);
    for (std::size_t i = 0; i < fam.members.size(); ++i)
      if (i != skip) part = intersect(part, fam.members[i].group);
    if (!index(part, all).is_infinite()) {
      std::ostringstream os;
      os << "leave-one-out index finite when omitting member " << skip;
      return explain(os.str());
    }
  }
  return true;
}

LadderSubgroup chain_full_intersection(const InfiniteSpineChain& chain) {
  if (chain.members.empty())
    fail(ErrorCode::Internal, "chain_full_intersection: empty chain");
  // The chain continues with moduli p^{i+1} past every block of the omega
  // segment and exhausts every other block's modulus, so the intersection
  // of the full chain is the zero subgroup.
  return LadderSubgroup::zero(chain.members.front().pres());
}

bool verify_chain(const InfiniteSpineChain& chain, std::string* why) {
  auto explain = [why](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (chain.members.size() < 2) return explain("chain too short to check");
  for (std::size_t i = 0; i + 1 < chain.members.size(); ++i) {
    if (!contains(chain.members[i], chain.members[i + 1]))
      return explain("chain members not nested");
    if (chain.members[i] == chain.members[i + 1]) return explain("chain members equal");
  }
  LadderSubgroup limit = chain_full_intersection(chain);
  // every proper nonempty subintersection of the materialised members
  const std::size_t n = chain.members.size();
  for (std::size_t mask = 1; mask + 1 < (1u << n); ++mask) {
    LadderSubgroup part = LadderSubgroup::full(chain.members.front().pres());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) part = intersect(part, chain.members[i]);
    if (!index(part, limit).is_infinite())
      return explain("subintersection has finite index over the full intersection");
  }
  return true;
}

}  // namespace oag
