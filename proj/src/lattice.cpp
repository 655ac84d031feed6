#include "oag/lattice.hpp"

#include <optional>

namespace oag {

namespace {

using Matrix = std::vector<std::vector<mpz_class>>;

// In-place row Hermite normal form. When `transform` is non-null it must be
// the identity on entry; the same row operations are applied to it, so that
// transform * input == output.
void hnf(Matrix& m, std::size_t dim, Matrix* transform) {
  std::size_t nrows = m.size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < nrows; ++col) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    if (transform) std::swap((*transform)[piv], (*transform)[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      if (m[i][col] == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[r][col].get_mpz_t(),
                 m[i][col].get_mpz_t());
      mpz_class u = m[r][col] / g;
      mpz_class v = m[i][col] / g;
      for (std::size_t j = 0; j < dim; ++j) {
        mpz_class a = m[r][j], b = m[i][j];
        m[r][j] = s * a + t * b;
        m[i][j] = u * b - v * a;
      }
      if (transform) {
        for (std::size_t j = 0; j < transform->front().size(); ++j) {
          mpz_class a = (*transform)[r][j], b = (*transform)[i][j];
          (*transform)[r][j] = s * a + t * b;
          (*transform)[i][j] = u * b - v * a;
        }
      }
    }
    if (m[r][col] < 0) {
      for (auto& x : m[r]) x = -x;
      if (transform)
        for (auto& x : (*transform)[r]) x = -x;
    }
    // reduce the entries above the pivot
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) m[i][j] -= q * m[r][j];
      if (transform)
        for (std::size_t j = 0; j < transform->front().size(); ++j)
          (*transform)[i][j] -= q * (*transform)[r][j];
    }
    ++r;
  }
  // rows at r and beyond are zero in all columns
  m.resize(r);
}

// Expresses x in the HNF basis; returns the coordinates or nothing.
std::optional<std::vector<mpz_class>> solve(const Matrix& basis, std::size_t dim,
                                            std::vector<mpz_class> x) {
  std::vector<mpz_class> coords(basis.size(), 0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    std::size_t col = 0;
    while (col < dim && basis[j][col] == 0) ++col;
    if (col == dim) continue;
    if (!mpz_divisible_p(x[col].get_mpz_t(), basis[j][col].get_mpz_t())) return std::nullopt;
    mpz_class q = x[col] / basis[j][col];
    coords[j] = q;
    if (q != 0)
      for (std::size_t k = 0; k < dim; ++k) x[k] -= q * basis[j][k];
  }
  for (const auto& v : x)
    if (v != 0) return std::nullopt;
  return coords;
}

}  // namespace

IntegerLattice IntegerLattice::from_rows(std::size_t dim, Matrix rows) {
  for (const auto& r : rows)
    if (r.size() != dim) fail(ErrorCode::RankMismatch, "generator has wrong dimension");
  hnf(rows, dim, nullptr);
  return IntegerLattice(dim, std::move(rows));
}

IntegerLattice IntegerLattice::standard(std::size_t dim) {
  Matrix rows(dim, std::vector<mpz_class>(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return IntegerLattice(dim, std::move(rows));
}

IntegerLattice IntegerLattice::zero(std::size_t dim) { return IntegerLattice(dim, {}); }

bool lattice_contains(const IntegerLattice& a, const std::vector<mpz_class>& x) {
  if (x.size() != a.dim()) fail(ErrorCode::RankMismatch, "vector has wrong dimension");
  return solve(a.rows(), a.dim(), x).has_value();
}

ExtNat lattice_index(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::RankMismatch, "lattices of different dimension");
  // coordinates of b's basis in a's basis
  Matrix coords;
  for (const auto& row : b.rows()) {
    auto c = solve(a.rows(), a.dim(), row);
    if (!c) fail(ErrorCode::NotSublattice, "second lattice is not contained in the first");
    coords.push_back(*c);
  }
  if (b.rank() < a.rank()) return ExtNat::infinity();
  // square now: the index is |det| of the coordinate matrix
  hnf(coords, a.rank(), nullptr);
  if (coords.size() < a.rank()) return ExtNat::infinity();
  mpz_class det = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::size_t col = 0;
    while (col < a.rank() && coords[i][col] == 0) ++col;
    if (col == a.rank()) fail(ErrorCode::Internal, "lattice_index: bad coordinate rank");
    det *= coords[i][col];
  }
  return ExtNat(abs(det));
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::RankMismatch, "lattices of different dimension");
  Matrix rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return IntegerLattice::from_rows(a.dim(), std::move(rows));
}

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::RankMismatch, "lattices of different dimension");
  // Solve u A = v B: stack [A; -B], compute the kernel via the transform of
  // the HNF, and map the u-parts back through A.
  std::size_t ka = a.rank(), kb = b.rank();
  Matrix m = a.rows();
  for (const auto& row : b.rows()) {
    std::vector<mpz_class> neg(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    m.push_back(std::move(neg));
  }
  Matrix u(ka + kb, std::vector<mpz_class>(ka + kb, 0));
  for (std::size_t i = 0; i < ka + kb; ++i) u[i][i] = 1;
  std::size_t before = m.size();
  hnf(m, a.dim(), &u);
  std::size_t nonzero = m.size();
  Matrix gens;
  for (std::size_t i = nonzero; i < before; ++i) {
    // kernel row: its A-part combination lies in both lattices
    std::vector<mpz_class> g(a.dim(), 0);
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) g[k] += u[i][j] * a.rows()[j][k];
    gens.push_back(std::move(g));
  }
  return IntegerLattice::from_rows(a.dim(), std::move(gens));
}

IntegerLattice embed(const LadderSubgroup& a) {
  const Presentation& pres = *a.pres();
  if (!pres.finite()) fail(ErrorCode::UnsupportedGroup, "embed: finite presentations only");
  std::size_t n = pres.block_count();
  for (std::size_t i = 0; i < n; ++i)
    if (pres.block_at(Cut{i, 0}).kind() != BlockKind::Discrete)
      fail(ErrorCode::NonDiscreteBlock, "embed requires all blocks discrete");
  Matrix rows;
  for (std::size_t i = 0; i < n; ++i) {
    const ExtNat& m = a.seg_moduli()[i].at(0);
    if (m.is_infinite()) continue;
    std::vector<mpz_class> row(n, 0);
    row[i] = m.value();
    rows.push_back(std::move(row));
  }
  return IntegerLattice::from_rows(n, std::move(rows));
}

}  // namespace oag
