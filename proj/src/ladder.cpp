#include "oag/ladder.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace oag {

LadderSubgroup::LadderSubgroup(PresentationPtr pres, std::vector<SegModuli> segs)
    : pres_(std::move(pres)), segs_(std::move(segs)) {
  if (segs_.size() != pres_->segments().size())
    fail(ErrorCode::Internal, "ladder: segment count mismatch");
  reduce_and_normalize();
}

void LadderSubgroup::reduce_and_normalize() {
  const auto& segs = pres_->segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    SegModuli& m = segs_[s];
    switch (segs[s].kind) {
      case SegKind::Single: {
        // canonical slot is `rest`
        ExtNat v = m.prefix.empty() ? m.rest : m.prefix[0];
        m.prefix.clear();
        m.rest = reduce_modulus(*segs[s].block, v);
        break;
      }
      case SegKind::OmegaRep: {
        const ArchimedeanBlock& b = *segs[s].block;
        for (auto& e : m.prefix) e = reduce_modulus(b, e);
        m.rest = reduce_modulus(b, m.rest);
        break;
      }
      case SegKind::PrimeFan: {
        // A finite rest spreads across infinitely many Z_(q); fold its prime
        // content into the prefix so the rest is 1 (or the truncating inf).
        if (m.rest.is_finite() && !m.rest.is_one()) {
          auto factors = factorize(m.rest.value());
          std::size_t need = m.prefix.size();
          for (const auto& [q, v] : factors) {
            auto idx = prime_index(q);
            if (!idx) fail(ErrorCode::Internal, "fan: prime index overflow");
            need = std::max(need, *idx + 1);
          }
          ExtNat old_rest = m.rest;
          while (m.prefix.size() < need) m.prefix.push_back(old_rest);
          m.rest = ExtNat(1ul);
        }
        for (std::size_t k = 0; k < m.prefix.size(); ++k) {
          ArchimedeanBlock b = pres_->block_at(Cut{s, k});
          m.prefix[k] = reduce_modulus(b, m.prefix[k]);
        }
        break;
      }
    }
    while (!m.prefix.empty() && m.prefix.back() == m.rest) m.prefix.pop_back();
  }
}

LadderSubgroup LadderSubgroup::full(PresentationPtr pres) {
  std::vector<SegModuli> segs(pres->segments().size());
  return LadderSubgroup(std::move(pres), std::move(segs));
}

LadderSubgroup LadderSubgroup::zero(PresentationPtr pres) {
  std::vector<SegModuli> segs(pres->segments().size());
  for (auto& s : segs) s.rest = ExtNat::infinity();
  return LadderSubgroup(std::move(pres), std::move(segs));
}

LadderSubgroup LadderSubgroup::tail(PresentationPtr pres, const Cut& c) {
  pres->require_cut(c);
  std::vector<SegModuli> segs(pres->segments().size());
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (s < c.seg) {
      segs[s].rest = ExtNat::infinity();
    } else if (s == c.seg) {
      segs[s].prefix.assign(c.off, ExtNat::infinity());
      segs[s].rest = ExtNat(1ul);
    }
  }
  return LadderSubgroup(std::move(pres), std::move(segs));
}

LadderSubgroup LadderSubgroup::tail_plus(PresentationPtr pres, const Cut& c,
                                         const mpz_class& n) {
  pres->require_cut(c);
  if (n <= 0) fail(ErrorCode::BadLadder, "modulus must be positive");
  std::vector<SegModuli> segs(pres->segments().size());
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (s < c.seg) {
      segs[s].rest = ExtNat(n);
    } else if (s == c.seg) {
      segs[s].prefix.assign(c.off, ExtNat(n));
      segs[s].rest = ExtNat(1ul);
    }
  }
  return LadderSubgroup(std::move(pres), std::move(segs));
}

LadderSubgroup LadderSubgroup::multiple(PresentationPtr pres, const mpz_class& n) {
  return tail_plus(std::move(pres), Cut{0, 0}, n) /* tail(G) is empty prefix */;
}

LadderSubgroup LadderSubgroup::from_flat(PresentationPtr pres,
                                         const std::vector<ExtNat>& moduli) {
  if (!pres->finite())
    fail(ErrorCode::UnsupportedGroup, "from_flat: finite presentations only");
  std::size_t n = pres->block_count();
  if (moduli.size() != n) fail(ErrorCode::BadLadder, "modulus vector has wrong length");
  for (const auto& m : moduli)
    if (m.is_finite() && m.value() <= 0)
      fail(ErrorCode::BadLadder, "moduli must be positive");

  // Reduce, then check that some divisibility-monotone vector lifts the
  // reduction; the minimal right-to-left lift works iff any does.
  std::vector<ExtNat> reduced(n);
  for (std::size_t i = 0; i < n; ++i)
    reduced[i] = reduce_modulus(pres->block_at(Cut{i, 0}), moduli[i]);
  ExtNat lift(1ul);
  for (std::size_t i = n; i-- > 0;) {
    lift = ext_lcm(reduced[i], lift);
    if (reduce_modulus(pres->block_at(Cut{i, 0}), lift) != reduced[i])
      fail(ErrorCode::BadLadder,
           "modulus vector is not divisibility-monotone (not a definable subgroup)");
  }

  std::vector<SegModuli> segs(n);
  for (std::size_t i = 0; i < n; ++i) segs[i].rest = reduced[i];
  return LadderSubgroup(std::move(pres), std::move(segs));
}

std::vector<ExtNat> LadderSubgroup::flat_moduli() const {
  std::size_t n = pres_->block_count();
  std::vector<ExtNat> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = segs_[i].at(0);
  return out;
}

bool LadderSubgroup::is_full() const {
  for (const auto& s : segs_)
    if (!s.prefix.empty() || !s.rest.is_one()) return false;
  return true;
}

bool LadderSubgroup::is_zero() const {
  for (const auto& s : segs_) {
    for (const auto& e : s.prefix)
      if (!e.is_infinite()) return false;
    if (!s.rest.is_infinite()) return false;
  }
  return true;
}

namespace {

void require_same_ambient(const LadderSubgroup& a, const LadderSubgroup& b) {
  if (*a.pres() != *b.pres())
    fail(ErrorCode::AmbientMismatch, "subgroups of different ambient groups");
}

template <typename Op>
std::vector<SegModuli> combine_moduli(const LadderSubgroup& a, const LadderSubgroup& b, Op op) {
  std::vector<SegModuli> out(a.seg_moduli().size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    const SegModuli& x = a.seg_moduli()[s];
    const SegModuli& y = b.seg_moduli()[s];
    std::size_t len = std::max(x.prefix.size(), y.prefix.size());
    out[s].prefix.resize(len);
    for (std::size_t k = 0; k < len; ++k) out[s].prefix[k] = op(x.at(k), y.at(k));
    out[s].rest = op(x.rest, y.rest);
  }
  return out;
}

}  // namespace

LadderSubgroup intersect(const LadderSubgroup& a, const LadderSubgroup& b) {
  require_same_ambient(a, b);
  return LadderSubgroup(
      a.pres(), combine_moduli(a, b, [](const ExtNat& u, const ExtNat& v) { return ext_lcm(u, v); }));
}

LadderSubgroup sum(const LadderSubgroup& a, const LadderSubgroup& b) {
  require_same_ambient(a, b);
  return LadderSubgroup(
      a.pres(), combine_moduli(a, b, [](const ExtNat& u, const ExtNat& v) { return ext_gcd(u, v); }));
}

bool contains(const LadderSubgroup& a, const LadderSubgroup& b) {
  require_same_ambient(a, b);
  for (std::size_t s = 0; s < a.seg_moduli().size(); ++s) {
    const SegModuli& x = a.seg_moduli()[s];
    const SegModuli& y = b.seg_moduli()[s];
    std::size_t len = std::max(x.prefix.size(), y.prefix.size());
    for (std::size_t k = 0; k < len; ++k)
      if (!ext_divides(x.at(k), y.at(k))) return false;
    if (!ext_divides(x.rest, y.rest)) return false;
  }
  return true;
}

ExtNat index(const LadderSubgroup& a, const LadderSubgroup& b) {
  require_same_ambient(a, b);
  if (!contains(a, b))
    fail(ErrorCode::NotASubgroupOf, "index: second subgroup not contained in first");
  const auto& segs = a.pres()->segments();
  ExtNat total(1ul);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const SegModuli& x = a.seg_moduli()[s];
    const SegModuli& y = b.seg_moduli()[s];
    std::size_t len = std::max(x.prefix.size(), y.prefix.size());
    switch (segs[s].kind) {
      case SegKind::Single:
        total = total * block_index_factor(*segs[s].block, x.at(0), y.at(0));
        break;
      case SegKind::OmegaRep: {
        const ArchimedeanBlock& blk = *segs[s].block;
        for (std::size_t k = 0; k < len; ++k)
          total = total * block_index_factor(blk, x.at(k), y.at(k));
        if (x.rest != y.rest) {
          // every one of the remaining infinitely many copies contributes
          // a factor > 1
          return ExtNat::infinity();
        }
        break;
      }
      case SegKind::PrimeFan: {
        for (std::size_t k = 0; k < len; ++k)
          total =
              total * block_index_factor(a.pres()->block_at(Cut{s, k}), x.at(k), y.at(k));
        if (x.rest != y.rest) return ExtNat::infinity();
        break;
      }
    }
    if (total.is_infinite()) return total;
  }
  return total;
}

std::vector<std::pair<unsigned long, LadderSubgroup>> decompose_crt(const LadderSubgroup& a) {
  const auto& segs = a.pres()->segments();
  // Gather the prime support of every finite modulus.
  std::set<unsigned long> primes;
  auto gather = [&primes](const ExtNat& m) {
    if (m.is_infinite() || m.is_one()) return;
    for (const auto& [q, v] : factorize(m.value())) primes.insert(q);
  };
  for (const auto& sm : a.seg_moduli()) {
    for (const auto& e : sm.prefix) gather(e);
    gather(sm.rest);
  }
  std::vector<std::pair<unsigned long, LadderSubgroup>> out;
  if (primes.empty()) {
    // A pure tail: no prime content to split. One part reproduces it.
    out.emplace_back(2ul, a);
    return out;
  }
  for (unsigned long p : primes) {
    std::vector<SegModuli> part(a.seg_moduli().size());
    auto p_part = [p](const ExtNat& m) -> ExtNat {
      if (m.is_infinite()) return m;
      return ext_pow(p, ExtNat(valuation(m.value(), p)));
    };
    for (std::size_t s = 0; s < part.size(); ++s) {
      const SegModuli& sm = a.seg_moduli()[s];
      part[s].prefix.resize(sm.prefix.size());
      for (std::size_t k = 0; k < sm.prefix.size(); ++k) part[s].prefix[k] = p_part(sm.prefix[k]);
      part[s].rest = p_part(sm.rest);
    }
    out.emplace_back(p, LadderSubgroup(a.pres(), std::move(part)));
  }
  return out;
}

bool membership(const Element& x, const LadderSubgroup& a) {
  if (*x.pres() != *a.pres())
    fail(ErrorCode::AmbientMismatch, "element from a different group");
  if (!a.pres()->finite())
    fail(ErrorCode::UnsupportedGroup, "membership: finite presentations only");
  std::size_t n = a.pres()->block_count();
  for (std::size_t i = 0; i < n; ++i) {
    const ExtNat& m = a.seg_moduli()[i].at(0);
    auto it = x.coeffs().find(i);
    mpz_class k = (it == x.coeffs().end()) ? mpz_class(0) : it->second;
    if (m.is_infinite()) {
      if (k != 0) return false;
    } else if (!mpz_divisible_p(k.get_mpz_t(), m.value().get_mpz_t())) {
      return false;
    }
  }
  return true;
}

std::optional<Coset> coset_intersect(const Coset& c1, const Coset& c2) {
  if (*c1.group.pres() != *c2.group.pres())
    fail(ErrorCode::AmbientMismatch, "cosets in different groups");
  const PresentationPtr& pres = c1.group.pres();
  if (!pres->finite())
    fail(ErrorCode::UnsupportedGroup, "coset_intersect: finite presentations only");
  std::size_t n = pres->block_count();
  std::map<std::size_t, mpz_class> base;
  for (std::size_t i = 0; i < n; ++i) {
    const ExtNat& m1 = c1.group.seg_moduli()[i].at(0);
    const ExtNat& m2 = c2.group.seg_moduli()[i].at(0);
    auto coeff = [i](const Coset& c) {
      auto it = c.base.coeffs().find(i);
      return it == c.base.coeffs().end() ? mpz_class(0) : it->second;
    };
    // modulus 0 encodes "component fixed exactly" (the infinite modulus)
    mpz_class mod1 = m1.is_infinite() ? mpz_class(0) : m1.value();
    mpz_class mod2 = m2.is_infinite() ? mpz_class(0) : m2.value();
    auto merged = crt2(coeff(c1), mod1, coeff(c2), mod2);
    if (!merged) return std::nullopt;
    if (merged->first != 0) base.emplace(i, merged->first);
  }
  return Coset{Element(pres, std::move(base)), intersect(c1.group, c2.group)};
}

std::string ladder_str(const LadderSubgroup& a) {
  std::ostringstream os;
  const auto& segs = a.pres()->segments();
  os << "(";
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (s) os << "; ";
    const SegModuli& sm = a.seg_moduli()[s];
    if (segs[s].kind == SegKind::Single) {
      os << sm.at(0).str();
      continue;
    }
    os << "[";
    for (std::size_t k = 0; k < sm.prefix.size(); ++k) {
      if (k) os << ",";
      os << sm.prefix[k].str();
    }
    os << (sm.prefix.empty() ? "" : ",") << sm.rest.str() << "...]";
  }
  os << ")";
  return os.str();
}

}  // namespace oag
