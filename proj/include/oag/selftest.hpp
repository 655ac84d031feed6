#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oag/group.hpp"
#include "oag/ladder.hpp"

namespace oag {

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t discrepancies = 0;
  std::vector<std::string> samples;  // first few failing cases, for debugging
};

struct SelfTestResult {
  std::vector<SuiteResult> suites;
  std::uint64_t total_checked() const;
  std::uint64_t total_discrepancies() const;
};

// Random model generators shared by the fuzz suites and the test binaries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::mt19937_64& engine() { return eng_; }
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
  mpz_class int_up_to(const mpz_class& n);  // uniform in [1, n]

 private:
  std::mt19937_64 eng_;
};

// A finite presentation with 1..max_blocks random blocks whose exceptional
// primes come from {2, 3, 5} with exponents in {0, 1, 2, inf}.
GroupExpr random_finite_group(Rng& rng, std::size_t max_blocks);
// All blocks discrete (Z); for the lattice oracle comparisons.
GroupExpr random_all_z_group(Rng& rng, std::size_t max_blocks);
// A random element with coefficients bounded by `coeff_bound` in absolute value.
Element random_element(Rng& rng, const PresentationPtr& pres, long coeff_bound);
// A random member of the definable family: an intersection of random
// tail-plus generators (moduli up to `modulus_bound`).
LadderSubgroup random_ladder(Rng& rng, const PresentationPtr& pres,
                             const mpz_class& modulus_bound);

// Suites. Each returns the number checked / discrepancies found.
SuiteResult suite_lattice_oracle(std::uint64_t seed, std::uint64_t iters);
SuiteResult suite_h_properties(std::uint64_t seed, std::uint64_t per_property);
SuiteResult suite_kp_bruteforce();  // exhaustive over the small family
SuiteResult suite_kp_bruteforce_random(std::uint64_t seed, std::uint64_t iters);
SuiteResult suite_hminus_oracle(std::uint64_t seed, std::uint64_t iters);
SuiteResult suite_direct_sum_law(std::uint64_t seed, std::uint64_t pairs);

SelfTestResult run_selftest(std::uint64_t seed, std::uint64_t iters);

}  // namespace oag
