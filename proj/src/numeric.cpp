#include "oag/numeric.hpp"

#include <mutex>

namespace oag {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySum: return "EmptySum";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::NonPrimeKey: return "NonPrimeKey";
    case ErrorCode::OmegaOfCompound: return "OmegaOfCompound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadCut: return "BadCut";
    case ErrorCode::BadBlock: return "BadBlock";
    case ErrorCode::BadElement: return "BadElement";
    case ErrorCode::BadLadder: return "BadLadder";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::BadSubgroup: return "BadSubgroup";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotASubgroupOf: return "NotASubgroupOf";
    case ErrorCode::InfiniteSpine: return "InfiniteSpine";
    case ErrorCode::NotFiniteRank: return "NotFiniteRank";
    case ErrorCode::NonDiscreteBlock: return "NonDiscreteBlock";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::NotResidueCharP: return "NotResidueCharP";
    case ErrorCode::NotHenselian: return "NotHenselian";
    case ErrorCode::BadDescriptor: return "BadDescriptor";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool ext_divides(const ExtNat& a, const ExtNat& b) {
  if (a.is_infinite()) return b.is_infinite();
  if (b.is_infinite()) return true;
  if (a.is_zero()) return b.is_zero();
  return mpz_divisible_p(b.value().get_mpz_t(), a.value().get_mpz_t()) != 0;
}

ExtNat ext_lcm(const ExtNat& a, const ExtNat& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtNat::infinity();
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
  return ExtNat(r);
}

ExtNat ext_gcd(const ExtNat& a, const ExtNat& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
  return ExtNat(r);
}

ExtNat ext_quotient_exact(const ExtNat& a, const ExtNat& b) {
  if (a.is_infinite() || b.is_infinite())
    fail(ErrorCode::Internal, "ext_quotient_exact: infinite argument");
  if (!ext_divides(a, b))
    fail(ErrorCode::Internal, "ext_quotient_exact: not divisible");
  return ExtNat(mpz_class(b.value() / a.value()));
}

ExtNat ext_pow(unsigned long p, const ExtNat& e) {
  if (e.is_infinite()) return ExtNat::infinity();
  if (!e.value().fits_ulong_p())
    fail(ErrorCode::Internal, "ext_pow: exponent too large");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e.value().get_ui());
  return ExtNat(r);
}

unsigned long valuation(const mpz_class& n, unsigned long p) {
  if (n == 0) fail(ErrorCode::Internal, "valuation of zero");
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t());
}

std::pair<unsigned long, mpz_class> remove_factor(const mpz_class& n, unsigned long p) {
  mpz_class rest;
  unsigned long v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t());
  return {v, rest};
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 40) != 0;
}

namespace {
std::vector<unsigned long>& prime_table() {
  static std::vector<unsigned long> primes{2, 3, 5, 7, 11, 13};
  return primes;
}
std::mutex& prime_table_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

unsigned long nth_prime(std::size_t k) {
  std::lock_guard<std::mutex> lock(prime_table_mutex());
  auto& primes = prime_table();
  while (primes.size() <= k) {
    mpz_class next;
    mpz_nextprime(next.get_mpz_t(), mpz_class(primes.back()).get_mpz_t());
    primes.push_back(next.get_ui());
  }
  return primes[k];
}

std::optional<std::size_t> prime_index(unsigned long p) {
  if (!is_prime(p)) return std::nullopt;
  for (std::size_t i = 0;; ++i) {
    unsigned long q = nth_prime(i);
    if (q == p) return i;
    if (q > p) return std::nullopt;
  }
}

std::map<unsigned long, unsigned long> factorize(const mpz_class& n) {
  if (n <= 0) fail(ErrorCode::Internal, "factorize: argument must be positive");
  std::map<unsigned long, unsigned long> out;
  mpz_class rest = n;
  mpz_class d = 2;
  while (rest > 1 && d * d <= rest) {
    unsigned long v = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
    if (v > 0) out[d.get_ui()] = v;
    mpz_nextprime(d.get_mpz_t(), d.get_mpz_t());
  }
  if (rest > 1) {
    if (!rest.fits_ulong_p())
      fail(ErrorCode::Internal, "factorize: prime factor out of range");
    out[rest.get_ui()] += 1;
  }
  return out;
}

unsigned long smallest_prime_factor(const mpz_class& n) {
  if (n < 2) fail(ErrorCode::Internal, "smallest_prime_factor: n < 2");
  mpz_class d = 2;
  while (d * d <= n) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return d.get_ui();
    mpz_nextprime(d.get_mpz_t(), d.get_mpz_t());
  }
  if (!n.fits_ulong_p())
    fail(ErrorCode::Internal, "smallest_prime_factor: out of range");
  return n.get_ui();
}

std::optional<std::pair<mpz_class, mpz_class>> crt2(const mpz_class& r1, const mpz_class& m1,
                                                    const mpz_class& r2, const mpz_class& m2) {
  // Modulus 0 encodes an exact value.
  if (m1 == 0 && m2 == 0) {
    if (r1 != r2) return std::nullopt;
    return std::make_pair(r1, mpz_class(0));
  }
  if (m1 == 0) {
    if (!mpz_divisible_p(mpz_class(r1 - r2).get_mpz_t(), m2.get_mpz_t())) return std::nullopt;
    return std::make_pair(r1, mpz_class(0));
  }
  if (m2 == 0) {
    if (!mpz_divisible_p(mpz_class(r2 - r1).get_mpz_t(), m1.get_mpz_t())) return std::nullopt;
    return std::make_pair(r2, mpz_class(0));
  }
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  mpz_class diff = r2 - r1;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  mpz_class lcm = m1 / g * m2;
  mpz_class x = r1 + m1 * s * (diff / g);
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), lcm.get_mpz_t());
  return std::make_pair(x, lcm);
}

}  // namespace oag
