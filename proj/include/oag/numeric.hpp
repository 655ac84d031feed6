#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oag/error.hpp"

namespace oag {

// A natural number extended with a single infinite value. This is the value
// domain shared by divisibility exponents, subgroup moduli and group indices:
// all three need exact integers of unbounded size plus an absorbing infinity.
class ExtNat {
 public:
  ExtNat() : inf_(false), v_(0) {}
  ExtNat(unsigned long v) : inf_(false), v_(v) {}  // NOLINT(google-explicit-constructor)
  ExtNat(mpz_class v) : inf_(false), v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtNat infinity() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  bool is_one() const { return !inf_ && v_ == 1; }

  const mpz_class& value() const {
    if (inf_) fail(ErrorCode::Internal, "ExtNat: value() on infinity");
    return v_;
  }

  // Finite values compare by magnitude; infinity is greater than everything.
  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtNat& a, const ExtNat& b) { return a == b || a < b; }

  // Addition and multiplication, infinity absorbing. 0 * inf is not needed
  // anywhere and is rejected.
  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtNat(mpz_class(a.v_ + b.v_));
  }
  friend ExtNat operator*(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) {
      if (a.is_zero() || b.is_zero())
        fail(ErrorCode::Internal, "ExtNat: 0 * infinity");
      return infinity();
    }
    return ExtNat(mpz_class(a.v_ * b.v_));
  }

  std::string str() const { return inf_ ? "inf" : v_.get_str(); }

 private:
  bool inf_;
  mpz_class v_;
};

// Divisibility with the conventions used throughout: every finite value
// divides infinity, and infinity divides only infinity.
bool ext_divides(const ExtNat& a, const ExtNat& b);
ExtNat ext_lcm(const ExtNat& a, const ExtNat& b);
ExtNat ext_gcd(const ExtNat& a, const ExtNat& b);
// Exact quotient b / a; requires ext_divides(a, b) and a finite.
ExtNat ext_quotient_exact(const ExtNat& a, const ExtNat& b);
// p^e with e possibly infinite (the index [B : p^e B] of a block with
// one exceptional prime, say).
ExtNat ext_pow(unsigned long p, const ExtNat& e);

// p-adic valuation of a nonzero integer.
unsigned long valuation(const mpz_class& n, unsigned long p);
// Strips all factors p from n, returning (valuation, cofactor).
std::pair<unsigned long, mpz_class> remove_factor(const mpz_class& n, unsigned long p);

bool is_prime(unsigned long p);
unsigned long nth_prime(std::size_t k);                    // 0 -> 2, 1 -> 3, ...
std::optional<std::size_t> prime_index(unsigned long p);   // inverse of nth_prime

// Prime factorisation by trial division. Exact for any input, intended for
// desk-scale moduli; the largest prime factor governs the running time.
std::map<unsigned long, unsigned long> factorize(const mpz_class& n);

// Smallest prime dividing n (n >= 2).
unsigned long smallest_prime_factor(const mpz_class& n);

// Solves x = r1 (mod m1), x = r2 (mod m2). A zero modulus means the residue
// is exact (x = r). Returns the combined residue and modulus, or nothing if
// the congruences conflict.
std::optional<std::pair<mpz_class, mpz_class>> crt2(const mpz_class& r1, const mpz_class& m1,
                                                    const mpz_class& r2, const mpz_class& m2);

// Rank values: a natural number or aleph_0. Distinct from ExtNat because the
// reports serialise the two infinities differently ("inf" vs "aleph0").
struct RankValue {
  bool aleph0 = false;
  std::uint64_t v = 0;

  static RankValue finite(std::uint64_t n) { return RankValue{false, n}; }
  static RankValue infinite() { return RankValue{true, 0}; }

  friend bool operator==(const RankValue& a, const RankValue& b) {
    return a.aleph0 == b.aleph0 && (a.aleph0 || a.v == b.v);
  }
  std::string str() const { return aleph0 ? "aleph0" : std::to_string(v); }
};

}  // namespace oag
