#pragma once

#include <map>

#include "oag/group.hpp"

namespace oag {

// An element of a finitely presented group, written over the designated
// generators: coeffs[i] * e_i summed over the support. Each block's e_i is a
// fixed element that is non-p-divisible for every prime with exp_p >= 1, so
// k * e_i lies in p^a * B_i exactly when exp_p = 0 or v_p(k) >= a.
class Element {
 public:
  Element(PresentationPtr pres, std::map<std::size_t, mpz_class> coeffs);

  static Element zero(PresentationPtr pres) { return Element(std::move(pres), {}); }
  // The generator of block i.
  static Element unit(PresentationPtr pres, std::size_t i);

  const PresentationPtr& pres() const { return pres_; }
  const std::map<std::size_t, mpz_class>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Smallest (most dominant) block index in the support; element must be nonzero.
  std::size_t min_support() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element scaled(const mpz_class& k) const;

  friend bool operator==(const Element& a, const Element& b) {
    return *a.pres_ == *b.pres_ && a.coeffs_ == b.coeffs_;
  }

 private:
  PresentationPtr pres_;
  std::map<std::size_t, mpz_class> coeffs_;
};

// The part of n visible to block b: the product of p^v_p(n) over the primes
// with exp_p(b) >= 1. k * e_b lies in n * B_b iff the effective part divides
// k, and m * B_b = m' * B_b as sets iff m and m' have equal effective parts.
mpz_class effective_modulus(const ArchimedeanBlock& b, const mpz_class& n);
ExtNat reduce_modulus(const ArchimedeanBlock& b, const ExtNat& m);

// Index factor [ma * B : mb * B] for reduced moduli ma | mb on one block.
ExtNat block_index_factor(const ArchimedeanBlock& b, const ExtNat& ma, const ExtNat& mb);

// True when n * B = B, i.e. no prime dividing n has exp_p(b) >= 1.
bool block_n_divisible(const ArchimedeanBlock& b, const mpz_class& n);

// Exponent e with [tail(c1)/tail(c2) : p (tail(c1)/tail(c2))] = p^e, the sum
// of exp_p over the blocks in [c1, c2), infinity absorbing. With c1 = begin
// and c2 = end this is the exponent of [G : pG].
ExtNat segment_exp(const Presentation& pres, const Cut& c1, const Cut& c2, unsigned long p);

bool in_nG(const Element& x, const mpz_class& n, const Presentation& pres);

// Largest convex subgroup H with x not in H + nG; the zero cut when x is in
// nG. Presentation must be finite.
Cut H_n(const Element& x, const mpz_class& n, const Presentation& pres);

// Union of the n-spine members that do not contain x (the zero cut if none).
Cut H_n_minus(const Element& x, const mpz_class& n, const Presentation& pres);

}  // namespace oag
