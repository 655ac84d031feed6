#include "oag/selftest.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "oag/lattice.hpp"
#include "oag/parse.hpp"
#include "oag/rank.hpp"

namespace oag {

std::uint64_t SelfTestResult::total_checked() const {
  std::uint64_t n = 0;
  for (const auto& s : suites) n += s.checked;
  return n;
}

std::uint64_t SelfTestResult::total_discrepancies() const {
  std::uint64_t n = 0;
  for (const auto& s : suites) n += s.discrepancies;
  return n;
}

std::uint64_t Rng::below(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
}

mpz_class Rng::int_up_to(const mpz_class& n) {
  // n is small in every suite; draw through uint64
  return mpz_class(1 + below(n.get_ui()));
}

namespace {

void note_failure(SuiteResult& r, const std::string& what) {
  ++r.discrepancies;
  if (r.samples.size() < 3) r.samples.push_back(what);
}

ArchimedeanBlock random_block(Rng& rng) {
  switch (rng.below(6)) {
    case 0: return ArchimedeanBlock::Z();
    case 1: return ArchimedeanBlock::Q();
    default: {
      std::map<unsigned long, ExtNat> exc;
      for (unsigned long p : {2ul, 3ul, 5ul}) {
        switch (rng.below(4)) {
          case 0: break;
          case 1: exc.emplace(p, ExtNat(1ul)); break;
          case 2: exc.emplace(p, ExtNat(2ul)); break;
          case 3: exc.emplace(p, ExtNat::infinity()); break;
        }
      }
      if (exc.empty()) return ArchimedeanBlock::Q();
      return ArchimedeanBlock::dense(DivisibilityProfile(0, std::move(exc)));
    }
  }
}

}  // namespace

GroupExpr random_finite_group(Rng& rng, std::size_t max_blocks) {
  std::size_t n = 1 + rng.below(max_blocks);
  std::vector<GroupExpr> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back(GroupExpr::block(random_block(rng)));
  return GroupExpr::lex(std::move(blocks)).flatten();
}

GroupExpr random_all_z_group(Rng& rng, std::size_t max_blocks) {
  std::size_t n = 1 + rng.below(max_blocks);
  std::vector<GroupExpr> blocks(n, GroupExpr::Z());
  return GroupExpr::lex(std::move(blocks)).flatten();
}

Element random_element(Rng& rng, const PresentationPtr& pres, long coeff_bound) {
  std::map<std::size_t, mpz_class> coeffs;
  std::size_t n = pres->block_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.below(3) == 0) continue;  // leave some holes in the support
    long v = static_cast<long>(rng.below(2 * coeff_bound + 1)) - coeff_bound;
    if (v != 0) coeffs.emplace(i, v);
  }
  return Element(pres, std::move(coeffs));
}

LadderSubgroup random_ladder(Rng& rng, const PresentationPtr& pres,
                             const mpz_class& modulus_bound) {
  std::size_t n = pres->block_count();
  std::vector<ExtNat> moduli(n, ExtNat(1ul));
  std::size_t inf_prefix = rng.below(n + 1);
  if (rng.below(2) == 0) inf_prefix = 0;
  // monotone staircase built bottom-up
  mpz_class m = 1 + mpz_class(rng.below(64));
  for (std::size_t i = n; i-- > 0;) {
    if (i < inf_prefix) {
      moduli[i] = ExtNat::infinity();
      continue;
    }
    moduli[i] = ExtNat(m);
    mpz_class grown = m * mpz_class(1 + rng.below(32));
    if (grown <= modulus_bound) m = grown;
  }
  return LadderSubgroup::from_flat(pres, moduli);
}

SuiteResult suite_lattice_oracle(std::uint64_t seed, std::uint64_t iters) {
  SuiteResult res{"subgroup-calculus-vs-lattice-oracle", 0, 0, {}};
  Rng rng(seed);
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 20);
  for (std::uint64_t it = 0; it < iters; ++it) {
    auto pres = make_presentation(random_all_z_group(rng, 6));
    LadderSubgroup a = random_ladder(rng, pres, bound);
    LadderSubgroup b = random_ladder(rng, pres, bound);
    IntegerLattice la = embed(a), lb = embed(b);
    ++res.checked;

    LadderSubgroup meet = intersect(a, b);
    if (embed(meet) != lattice_intersect(la, lb)) {
      note_failure(res, "intersect mismatch on " + print_group(pres->expr()) + " " +
                            ladder_str(a) + " " + ladder_str(b));
      continue;
    }
    LadderSubgroup join = sum(a, b);
    if (embed(join) != lattice_sum(la, lb)) {
      note_failure(res, "sum mismatch on " + ladder_str(a) + " " + ladder_str(b));
      continue;
    }
    // meet is contained in a: compare the exact indices
    ExtNat idx = index(a, meet);
    ExtNat lidx = lattice_index(la, embed(meet));
    if (idx != lidx) {
      note_failure(res, "index mismatch [" + ladder_str(a) + " : " + ladder_str(meet) +
                            "] = " + idx.str() + " vs " + lidx.str());
      continue;
    }
    // index multiplicativity through a middle term
    ExtNat left = index(join, meet);
    ExtNat right = index(join, a) * index(a, meet);
    if (left != right) {
      note_failure(res, "index multiplicativity broke on " + ladder_str(a));
      continue;
    }
    // membership agrees with the lattice solve
    Element x = random_element(rng, pres, 1 << 12);
    std::vector<mpz_class> vec(pres->block_count(), 0);
    for (const auto& [i, k] : x.coeffs()) vec[i] = k;
    if (membership(x, a) != lattice_contains(la, vec)) {
      note_failure(res, "membership mismatch on " + ladder_str(a));
      continue;
    }
    // crt decomposition reassembles
    auto parts = decompose_crt(a);
    LadderSubgroup re = LadderSubgroup::full(pres);
    for (const auto& [p, part] : parts) re = intersect(re, part);
    if (re != a) {
      note_failure(res, "crt decomposition failed to reassemble " + ladder_str(a));
      continue;
    }
  }
  return res;
}

SuiteResult suite_h_properties(std::uint64_t seed, std::uint64_t per_property) {
  SuiteResult res{"fact-on-H-properties", 0, 0, {}};
  Rng rng(seed);
  const unsigned long small_primes[3] = {2, 3, 5};
  for (std::uint64_t it = 0; it < per_property; ++it) {
    auto pres = make_presentation(random_finite_group(rng, 5));
    Element x = random_element(rng, pres, 24);
    Element y = random_element(rng, pres, 24);
    mpz_class n(1 + rng.below(12));

    // (1) H_n(x) = H_n(x + n y)
    ++res.checked;
    if (H_n(x, n, *pres) != H_n(x + y.scaled(n), n, *pres))
      note_failure(res, "H_n translation invariance failed on " + print_group(pres->expr()));

    // (2) nested classes meet the coset: H_n(x) strictly below H_n(y)
    // implies x + nG meets H_n(y)
    ++res.checked;
    {
      Cut cx = H_n(x, n, *pres), cy = H_n(y, n, *pres);
      if (cy < cx) {  // H_n(x) strictly contained in H_n(y)
        LadderSubgroup h_plus =
            sum(LadderSubgroup::tail(pres, cy), LadderSubgroup::multiple(pres, n));
        if (!membership(x, h_plus))
          note_failure(res, "coset meeting property failed on " + print_group(pres->expr()));
      }
    }

    // (3)/(4) additivity against the class lattice
    ++res.checked;
    {
      Cut cx = H_n(x, n, *pres), cy = H_n(y, n, *pres);
      Cut cxy = H_n(x + y, n, *pres);
      if (cy < cx) {  // H_n(x) strictly below H_n(y)
        if (cxy != cy)
          note_failure(res, "H_n(x+y) != H_n(y) under strict containment");
      } else if (cx == cy) {
        if (cxy < cx)  // must be contained in H_n(x): cut not smaller
          note_failure(res, "H_n(x+y) escaped H_n(x) on equal classes");
      }
    }

    // (5) H_{p^m}(x) = H_{p^{m+k}}(p^k x)
    ++res.checked;
    {
      unsigned long p = small_primes[rng.below(3)];
      unsigned long m = 1 + rng.below(3);
      unsigned long k = rng.below(4);
      mpz_class pm, pk, pmk;
      mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
      mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
      mpz_ui_pow_ui(pmk.get_mpz_t(), p, m + k);
      if (H_n(x, pm, *pres) != H_n(x.scaled(pk), pmk, *pres))
        note_failure(res, "prime power shift failed on " + print_group(pres->expr()));
    }
  }
  return res;
}

namespace {

// Brute-force k_p: longest chain of tails H_0 < ... < H_{m-1} < G with every
// consecutive quotient of infinite p-index.
std::size_t kp_brute(const Presentation& pres, unsigned long p) {
  std::size_t n = pres.block_count();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    // chosen cuts among 1..n, descending; the top group is G (cut 0)
    std::vector<std::size_t> cuts;
    for (std::size_t c = n; c >= 1; --c)
      if (mask & (1ull << (c - 1))) cuts.push_back(c);
    cuts.push_back(0);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < cuts.size() && ok; ++i) {
      // step from tail(cuts[i]) up to tail(cuts[i+1])
      if (!segment_exp(pres, pres.cut_from_flat(cuts[i + 1]), pres.cut_from_flat(cuts[i]), p)
               .is_infinite())
        ok = false;
    }
    if (ok) best = std::max(best, cuts.size() - 1);
  }
  return best;
}

GroupExpr family_block(unsigned long p, std::size_t which) {
  switch (which) {
    case 0: return GroupExpr::Z();
    case 1: return GroupExpr::Q();
    case 2:
      return GroupExpr::block(ArchimedeanBlock::dense(DivisibilityProfile(0, {{p, ExtNat(1ul)}})));
    default:
      return GroupExpr::block(
          ArchimedeanBlock::dense(DivisibilityProfile(0, {{p, ExtNat::infinity()}})));
  }
}

}  // namespace

SuiteResult suite_kp_bruteforce() {
  SuiteResult res{"k_p-bruteforce-exhaustive", 0, 0, {}};
  for (unsigned long p : {2ul, 3ul}) {
    for (std::size_t len = 1; len <= 4; ++len) {
      std::vector<std::size_t> pick(len, 0);
      while (true) {
        std::vector<GroupExpr> blocks;
        for (std::size_t i = 0; i < len; ++i) blocks.push_back(family_block(p, pick[i]));
        auto pres = make_presentation(GroupExpr::lex(std::move(blocks)));
        for (unsigned long q : {2ul, 3ul}) {
          ++res.checked;
          if (k_p(*pres, q) != kp_brute(*pres, q))
            note_failure(res, "k_" + std::to_string(q) + " mismatch on " +
                                  print_group(pres->expr()));
        }
        // advance the odometer
        std::size_t i = 0;
        while (i < len && ++pick[i] == 4) pick[i++] = 0;
        if (i == len) break;
      }
    }
  }
  return res;
}

SuiteResult suite_kp_bruteforce_random(std::uint64_t seed, std::uint64_t iters) {
  SuiteResult res{"k_p-bruteforce-random", 0, 0, {}};
  Rng rng(seed);
  for (std::uint64_t it = 0; it < iters; ++it) {
    auto pres = make_presentation(random_finite_group(rng, 5));
    for (unsigned long p : {2ul, 3ul, 5ul}) {
      ++res.checked;
      if (k_p(*pres, p) != kp_brute(*pres, p))
        note_failure(res,
                     "k_" + std::to_string(p) + " mismatch on " + print_group(pres->expr()));
    }
  }
  return res;
}

SuiteResult suite_hminus_oracle(std::uint64_t seed, std::uint64_t iters) {
  SuiteResult res{"H_n_minus-enumeration-oracle", 0, 0, {}};
  Rng rng(seed);
  for (std::uint64_t it = 0; it < iters; ++it) {
    auto pres = make_presentation(random_finite_group(rng, 5));
    mpz_class n(1 + rng.below(12));
    std::size_t nb = pres->block_count();

    // spanning family: the generators and a few random elements
    std::vector<Element> family;
    family.push_back(Element::zero(pres));
    for (std::size_t i = 0; i < nb; ++i) family.push_back(Element::unit(pres, i));
    for (int j = 0; j < 4; ++j) family.push_back(random_element(rng, pres, 12));

    // the spine as the set of classes H_n(y)
    std::set<Cut> spine_cuts;
    for (const auto& y : family) spine_cuts.insert(H_n(y, n, *pres));

    for (const auto& x : family) {
      ++res.checked;
      // oracle: the largest spine member avoiding x
      Cut want = pres->end_cut();
      for (const Cut& c : spine_cuts) {
        bool contains_x = x.is_zero() || x.min_support() >= c.seg;
        if (!contains_x && c < want) want = c;
      }
      if (H_n_minus(x, n, *pres) != want) {
        note_failure(res, "H_n_minus mismatch on " + print_group(pres->expr()));
        continue;
      }
    }

    // set equality of {H_n_minus(y)} and {H_n(y)} over the family
    ++res.checked;
    std::set<Cut> minus_cuts;
    for (const auto& y : family) minus_cuts.insert(H_n_minus(y, n, *pres));
    if (minus_cuts != spine_cuts)
      note_failure(res, "spine sets differ on " + print_group(pres->expr()));
  }
  return res;
}

SuiteResult suite_direct_sum_law(std::uint64_t seed, std::uint64_t pairs) {
  SuiteResult res{"direct-sum-law", 0, 0, {}};
  Rng rng(seed);
  for (std::uint64_t it = 0; it < pairs; ++it) {
    GroupExpr g1 = random_finite_group(rng, 4);
    GroupExpr g2 = (rng.below(10) == 0) ? GroupExpr::zhat_primes() : random_finite_group(rng, 4);
    auto p1 = make_presentation(g1);
    auto p2 = make_presentation(g2);
    auto psum = make_presentation(GroupExpr::lex({g1, g2}));
    ++res.checked;
    RankValue r1 = dp_rank(*p1), r2 = dp_rank(*p2), rs = dp_rank(*psum);
    if (r1.aleph0 || r2.aleph0 || rs.aleph0) {
      note_failure(res, "unexpected infinite rank in the finite family");
      continue;
    }
    if (rs.v != r1.v + r2.v - 1)
      note_failure(res, "direct sum law failed on " + print_group(psum->expr()));
  }
  return res;
}

SelfTestResult run_selftest(std::uint64_t seed, std::uint64_t iters) {
  SelfTestResult out;
  out.suites.push_back(suite_lattice_oracle(seed, iters));
  out.suites.push_back(suite_h_properties(seed + 1, std::max<std::uint64_t>(iters / 2, 100)));
  out.suites.push_back(suite_kp_bruteforce());
  out.suites.push_back(
      suite_kp_bruteforce_random(seed + 2, std::max<std::uint64_t>(iters / 10, 25)));
  out.suites.push_back(suite_hminus_oracle(seed + 3, std::max<std::uint64_t>(iters / 10, 25)));
  out.suites.push_back(suite_direct_sum_law(seed + 4, std::max<std::uint64_t>(iters / 5, 50)));
  return out;
}

}  // namespace oag
