#pragma once

#include <optional>
#include <vector>

#include "oag/core.hpp"

namespace oag {

// Per-segment moduli of a definable subgroup: block k of the segment is
// scaled by prefix[k] for k < prefix.size() and by `rest` beyond. A modulus
// of infinity zeroes the block (convex truncation).
struct SegModuli {
  std::vector<ExtNat> prefix;
  ExtNat rest{1ul};

  const ExtNat& at(unsigned long long k) const {
    return k < prefix.size() ? prefix[k] : rest;
  }
  friend bool operator==(const SegModuli&, const SegModuli&) = default;
};

// A definable subgroup in blockwise-modulus form: the direct sum of
// m_i * B_i over the blocks. This family is the closure of the tails and
// the groups H + nG under intersection and sum.
//
// Moduli are kept reduced: each m_i only carries primes with exp_p >= 1 on
// its block, so equal vectors mean equal subgroups. A raw vector is accepted
// when some divisibility-monotone vector (m_{i+1} | m_i, infinity dividing
// only infinity) reduces to it; that is exactly membership in the closure.
class LadderSubgroup {
 public:
  static LadderSubgroup full(PresentationPtr pres);
  static LadderSubgroup zero(PresentationPtr pres);
  // tail(c): blocks before c zeroed, blocks from c on untouched.
  static LadderSubgroup tail(PresentationPtr pres, const Cut& c);
  // tail(c) + n G, the workhorse generator.
  static LadderSubgroup tail_plus(PresentationPtr pres, const Cut& c, const mpz_class& n);
  // n G.
  static LadderSubgroup multiple(PresentationPtr pres, const mpz_class& n);
  // Finite presentations: one modulus per block. Rejects vectors outside the
  // definable family.
  static LadderSubgroup from_flat(PresentationPtr pres, const std::vector<ExtNat>& moduli);

  const PresentationPtr& pres() const { return pres_; }
  const std::vector<SegModuli>& seg_moduli() const { return segs_; }
  // Finite presentations: the reduced modulus vector, one entry per block.
  std::vector<ExtNat> flat_moduli() const;

  bool is_full() const;
  bool is_zero() const;

  friend bool operator==(const LadderSubgroup& a, const LadderSubgroup& b) {
    return *a.pres_ == *b.pres_ && a.segs_ == b.segs_;
  }

 private:
  LadderSubgroup(PresentationPtr pres, std::vector<SegModuli> segs);
  void reduce_and_normalize();
  friend LadderSubgroup intersect(const LadderSubgroup&, const LadderSubgroup&);
  friend LadderSubgroup sum(const LadderSubgroup&, const LadderSubgroup&);
  friend std::vector<std::pair<unsigned long, LadderSubgroup>> decompose_crt(
      const LadderSubgroup&);

  PresentationPtr pres_;
  std::vector<SegModuli> segs_;
};

// Blockwise lcm / gcd; AmbientMismatch when the groups differ.
LadderSubgroup intersect(const LadderSubgroup& a, const LadderSubgroup& b);
LadderSubgroup sum(const LadderSubgroup& a, const LadderSubgroup& b);

// True when b is contained in a (blockwise divisibility of reduced moduli).
bool contains(const LadderSubgroup& a, const LadderSubgroup& b);

// Exact index [a : b]; requires b contained in a.
ExtNat index(const LadderSubgroup& a, const LadderSubgroup& b);

// Splits a into single-prime parts whose intersection reproduces it. A pure
// tail has no prime content; it is returned as one part tagged with 2.
std::vector<std::pair<unsigned long, LadderSubgroup>> decompose_crt(const LadderSubgroup& a);

// Exact membership under the designated-generator model (finite
// presentations).
bool membership(const Element& x, const LadderSubgroup& a);

struct Coset {
  Element base;
  LadderSubgroup group;
};

// Set intersection of two cosets: empty, or a coset of intersect(g1, g2).
std::optional<Coset> coset_intersect(const Coset& c1, const Coset& c2);

std::string ladder_str(const LadderSubgroup& a);

}  // namespace oag
