#include "oag/core.hpp"

namespace oag {

Element::Element(PresentationPtr pres, std::map<std::size_t, mpz_class> coeffs)
    : pres_(std::move(pres)), coeffs_(std::move(coeffs)) {
  if (!pres_->finite())
    fail(ErrorCode::UnsupportedGroup, "elements require a finite presentation");
  std::size_t n = pres_->block_count();
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first >= n)
      fail(ErrorCode::BadElement, "coefficient index " + std::to_string(it->first) +
                                      " out of range");
    if (it->second == 0)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

Element Element::unit(PresentationPtr pres, std::size_t i) {
  std::map<std::size_t, mpz_class> c;
  c.emplace(i, 1);
  return Element(std::move(pres), std::move(c));
}

std::size_t Element::min_support() const {
  if (coeffs_.empty()) fail(ErrorCode::BadElement, "min_support of zero element");
  return coeffs_.begin()->first;
}

Element Element::operator+(const Element& o) const {
  if (*pres_ != *o.pres_) fail(ErrorCode::AmbientMismatch, "element addition across groups");
  std::map<std::size_t, mpz_class> c = coeffs_;
  for (const auto& [i, k] : o.coeffs_) c[i] += k;
  return Element(pres_, std::move(c));
}

Element Element::operator-(const Element& o) const { return *this + o.scaled(-1); }

Element Element::scaled(const mpz_class& k) const {
  std::map<std::size_t, mpz_class> c;
  if (k != 0)
    for (const auto& [i, v] : coeffs_) c.emplace(i, v * k);
  return Element(pres_, std::move(c));
}

mpz_class effective_modulus(const ArchimedeanBlock& b, const mpz_class& n) {
  if (n <= 0) fail(ErrorCode::BadLadder, "modulus must be positive");
  const DivisibilityProfile& prof = b.profile();
  if (prof.default_exp() == 0) {
    mpz_class r = 1;
    for (const auto& [q, e] : prof.exceptions()) {
      // exceptions to default 0 all have exp >= 1
      unsigned long v = valuation(n, q);
      if (v > 0) {
        mpz_class qv;
        mpz_ui_pow_ui(qv.get_mpz_t(), q, v);
        r *= qv;
      }
    }
    return r;
  }
  // default 1: every prime is relevant except the explicit exp-0 exceptions
  mpz_class r = n;
  for (const auto& [q, e] : prof.exceptions()) {
    if (e.is_zero()) {
      auto [v, rest] = remove_factor(r, q);
      r = rest;
    }
  }
  return r;
}

ExtNat reduce_modulus(const ArchimedeanBlock& b, const ExtNat& m) {
  if (m.is_infinite()) return m;
  return ExtNat(effective_modulus(b, m.value()));
}

ExtNat block_index_factor(const ArchimedeanBlock& b, const ExtNat& ma, const ExtNat& mb) {
  if (ma.is_infinite()) {
    if (!mb.is_infinite())
      fail(ErrorCode::Internal, "block_index_factor: moduli not nested");
    return ExtNat(1ul);
  }
  if (mb.is_infinite()) return ExtNat::infinity();  // [m B : 0] = |B|
  mpz_class t = mb.value() / ma.value();
  if (t * ma.value() != mb.value())
    fail(ErrorCode::Internal, "block_index_factor: moduli not nested");
  if (t == 1) return ExtNat(1ul);
  const DivisibilityProfile& prof = b.profile();
  if (prof.default_exp() == 0) {
    // Only exceptional primes contribute; on reduced moduli they exhaust t.
    ExtNat r(1ul);
    for (const auto& [q, e] : prof.exceptions()) {
      unsigned long v = valuation(t, q);
      if (v == 0) continue;
      if (e.is_infinite()) return ExtNat::infinity();
      r = r * ext_pow(q, ExtNat(e.value() * v));
    }
    return r;
  }
  // default 1: the product over all primes of q^{v_q(t)} is t itself, and
  // exceptional primes adjust their share.
  ExtNat r(t);
  for (const auto& [q, e] : prof.exceptions()) {
    unsigned long v = valuation(t, q);
    if (v == 0) continue;
    if (e.is_infinite()) return ExtNat::infinity();
    // reduced moduli carry no exp-0 primes, so e >= 2 here
    r = r * ext_pow(q, ExtNat((e.value() - 1) * v));
  }
  return r;
}

bool block_n_divisible(const ArchimedeanBlock& b, const mpz_class& n) {
  return effective_modulus(b, n) == 1;
}

ExtNat segment_exp(const Presentation& pres, const Cut& c1, const Cut& c2, unsigned long p) {
  pres.require_cut(c1);
  pres.require_cut(c2);
  if (c2 < c1) fail(ErrorCode::BadCut, "segment_exp: cuts out of order");
  ExtNat total(0ul);
  const auto& segs = pres.segments();
  for (std::size_t s = c1.seg; s <= c2.seg && s < segs.size(); ++s) {
    unsigned long long lo = (s == c1.seg) ? c1.off : 0;
    bool bounded = (s == c2.seg);
    unsigned long long hi = bounded ? c2.off : 0;  // hi meaningful only when bounded
    if (bounded && hi <= lo) continue;
    const Segment& seg = segs[s];
    switch (seg.kind) {
      case SegKind::Single: {
        // lo = 0 here; the block is counted iff the range covers it
        if (!bounded || hi >= 1) total = total + seg.block->exp(p);
        break;
      }
      case SegKind::OmegaRep: {
        ExtNat e = seg.block->exp(p);
        if (e.is_zero()) break;
        if (!bounded) return ExtNat::infinity();  // infinitely many copies
        total = total + e * ExtNat(mpz_class(static_cast<unsigned long>(hi - lo)));
        break;
      }
      case SegKind::PrimeFan: {
        auto idx = prime_index(p);
        if (!idx) break;
        unsigned long long i = *idx;
        if (i >= lo && (!bounded || i < hi)) total = total + ExtNat(1ul);
        break;
      }
    }
    if (total.is_infinite()) return total;
  }
  return total;
}

namespace {
// k * e_i in n * B_i under the designated-generator model.
bool coeff_in_nB(const ArchimedeanBlock& b, const mpz_class& k, const mpz_class& n) {
  mpz_class r = effective_modulus(b, n);
  return mpz_divisible_p(k.get_mpz_t(), r.get_mpz_t()) != 0;
}
}  // namespace

bool in_nG(const Element& x, const mpz_class& n, const Presentation& pres) {
  if (*x.pres() != pres) fail(ErrorCode::AmbientMismatch, "element from a different group");
  if (n <= 0) fail(ErrorCode::BadElement, "in_nG: n must be positive");
  for (const auto& [i, k] : x.coeffs()) {
    if (!coeff_in_nB(pres.block_at(pres.cut_from_flat(i)), k, n)) return false;
  }
  return true;
}

Cut H_n(const Element& x, const mpz_class& n, const Presentation& pres) {
  if (!pres.finite())
    fail(ErrorCode::UnsupportedGroup, "H_n requires a finite presentation");
  if (*x.pres() != pres) fail(ErrorCode::AmbientMismatch, "element from a different group");
  if (n <= 0) fail(ErrorCode::BadElement, "H_n: n must be positive");
  for (const auto& [i, k] : x.coeffs()) {
    if (!coeff_in_nB(pres.block_at(pres.cut_from_flat(i)), k, n))
      return pres.cut_from_flat(i + 1);
  }
  return pres.end_cut();
}

Cut H_n_minus(const Element& x, const mpz_class& n, const Presentation& pres) {
  if (!pres.finite())
    fail(ErrorCode::UnsupportedGroup, "H_n_minus requires a finite presentation");
  if (*x.pres() != pres) fail(ErrorCode::AmbientMismatch, "element from a different group");
  if (n <= 0) fail(ErrorCode::BadElement, "H_n_minus: n must be positive");
  if (x.is_zero()) return pres.end_cut();
  // Spine cuts are the positions after non-n-divisible blocks, plus zero.
  // The union of members avoiding x is the largest of them, i.e. the one
  // with the smallest cut strictly beyond min supp(x).
  std::size_t lo = x.min_support();
  std::size_t nb = pres.block_count();
  for (std::size_t i = lo; i < nb; ++i) {
    if (!block_n_divisible(pres.block_at(pres.cut_from_flat(i)), n))
      return pres.cut_from_flat(i + 1);
  }
  return pres.end_cut();
}

}  // namespace oag
