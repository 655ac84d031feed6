#pragma once

#include <vector>

#include "oag/ladder.hpp"

namespace oag {

// A sublattice of Z^n given by integer generators, held in canonical
// Hermite normal form (pivots positive, entries above a pivot reduced
// modulo it). Arithmetic is exact at any size. This is the independent
// verification backend for the subgroup calculus on all-Z presentations;
// the order plays no role here.
class IntegerLattice {
 public:
  static IntegerLattice from_rows(std::size_t dim, std::vector<std::vector<mpz_class>> rows);
  static IntegerLattice standard(std::size_t dim);  // Z^dim
  static IntegerLattice zero(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<mpz_class>>& rows() const { return rows_; }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

 private:
  IntegerLattice(std::size_t dim, std::vector<std::vector<mpz_class>> rows)
      : dim_(dim), rows_(std::move(rows)) {}

  std::size_t dim_;
  std::vector<std::vector<mpz_class>> rows_;  // HNF, zero rows dropped
};

bool lattice_contains(const IntegerLattice& a, const std::vector<mpz_class>& x);

// [a : b] for b a sublattice of a; infinity when the rank drops.
ExtNat lattice_index(const IntegerLattice& a, const IntegerLattice& b);

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);

// Faithful image of a ladder subgroup of an all-Z presentation: finite
// moduli scale coordinates, infinite moduli drop them.
IntegerLattice embed(const LadderSubgroup& a);

}  // namespace oag
