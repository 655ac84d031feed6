#include "oag/field.hpp"

namespace oag {

const char* field_class_name(FieldClass c) {
  switch (c) {
    case FieldClass::AlgebraicallyClosed: return "AlgebraicallyClosed";
    case FieldClass::SeparablyClosed: return "SeparablyClosed";
    case FieldClass::RealClosed: return "RealClosed";
    case FieldClass::Finite: return "Finite";
    case FieldClass::Other: return "Other";
  }
  return "?";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

const char* transfer_status_name(TransferStatus s) {
  switch (s) {
    case TransferStatus::StronglyDependent: return "StronglyDependent";
    case TransferStatus::NotStronglyDependent: return "NotStronglyDependent";
    case TransferStatus::Inconsistent: return "Inconsistent";
    case TransferStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

// Merge a stated flag with a forced value; a clash is recorded, the forced
// value wins for downstream routing.
Tri merge_flag(Tri stated, Tri forced, const std::string& what,
               std::vector<std::string>& conflicts) {
  if (forced == Tri::Unknown) return stated;
  if (stated != Tri::Unknown && stated != forced)
    conflicts.push_back(what + " stated " + tri_name(stated) + " but forced " +
                        tri_name(forced));
  return forced;
}

}  // namespace

DerivedField derive_field(const FieldDescriptor& f) {
  DerivedField d;
  d.strongly_dependent = f.strongly_dependent;
  d.perfect = f.perfect;
  d.artin_schreier_closed = f.artin_schreier_closed;
  d.no_sep_ext_deg_div_p = f.no_sep_ext_deg_div_p;

  bool char_p = f.characteristic != 0;

  switch (f.cls) {
    case FieldClass::Finite:
      d.strongly_dependent = merge_flag(d.strongly_dependent, Tri::Yes, "strongly_dependent",
                                        d.conflicts);
      d.perfect = merge_flag(d.perfect, Tri::Yes, "perfect", d.conflicts);
      // every finite field has a separable extension of each degree
      d.artin_schreier_closed =
          merge_flag(d.artin_schreier_closed, Tri::No, "artin_schreier_closed", d.conflicts);
      d.no_sep_ext_deg_div_p =
          merge_flag(d.no_sep_ext_deg_div_p, Tri::No, "no_sep_ext_deg_div_p", d.conflicts);
      break;
    case FieldClass::AlgebraicallyClosed:
      d.strongly_dependent = merge_flag(d.strongly_dependent, Tri::Yes, "strongly_dependent",
                                        d.conflicts);
      d.perfect = merge_flag(d.perfect, Tri::Yes, "perfect", d.conflicts);
      d.artin_schreier_closed =
          merge_flag(d.artin_schreier_closed, Tri::Yes, "artin_schreier_closed", d.conflicts);
      d.no_sep_ext_deg_div_p =
          merge_flag(d.no_sep_ext_deg_div_p, Tri::Yes, "no_sep_ext_deg_div_p", d.conflicts);
      d.known_infinite = true;
      break;
    case FieldClass::RealClosed:
      d.strongly_dependent = merge_flag(d.strongly_dependent, Tri::Yes, "strongly_dependent",
                                        d.conflicts);
      d.perfect = merge_flag(d.perfect, Tri::Yes, "perfect", d.conflicts);
      d.known_infinite = true;
      break;
    case FieldClass::SeparablyClosed:
      // no finite separable extensions at all
      d.no_sep_ext_deg_div_p =
          merge_flag(d.no_sep_ext_deg_div_p, Tri::Yes, "no_sep_ext_deg_div_p", d.conflicts);
      d.artin_schreier_closed =
          merge_flag(d.artin_schreier_closed, Tri::Yes, "artin_schreier_closed", d.conflicts);
      d.known_infinite = true;
      if (d.perfect == Tri::Yes)  // separably closed and perfect: algebraically closed
        d.strongly_dependent = merge_flag(d.strongly_dependent, Tri::Yes, "strongly_dependent",
                                          d.conflicts);
      break;
    case FieldClass::Other:
      break;
  }

  if (!char_p) d.perfect = merge_flag(d.perfect, Tri::Yes, "perfect", d.conflicts);

  // strongly dependent fields are perfect
  if (d.strongly_dependent == Tri::Yes)
    d.perfect = merge_flag(d.perfect, Tri::Yes, "perfect", d.conflicts);

  // infinite strongly dependent fields of characteristic p are
  // Artin-Schreier closed and have no separable extension of degree
  // divisible by p
  if (d.strongly_dependent == Tri::Yes && char_p && f.cls != FieldClass::Finite) {
    d.artin_schreier_closed =
        merge_flag(d.artin_schreier_closed, Tri::Yes, "artin_schreier_closed", d.conflicts);
    d.no_sep_ext_deg_div_p =
        merge_flag(d.no_sep_ext_deg_div_p, Tri::Yes, "no_sep_ext_deg_div_p", d.conflicts);
    d.known_infinite = true;
  }

  return d;
}

void ValuedFieldDescriptor::validate() const {
  auto check_char = [](const FieldDescriptor& f, const char* who) {
    if (f.characteristic != 0 && !is_prime(f.characteristic))
      fail(ErrorCode::BadDescriptor, std::string(who) + " characteristic must be 0 or prime");
  };
  check_char(base, "base");
  check_char(residue, "residue");
  if (base.characteristic != 0 && base.characteristic != residue.characteristic)
    fail(ErrorCode::BadDescriptor,
         "illegal characteristic pair: positive base characteristic forces equal "
         "residue characteristic");
  if (!vg) fail(ErrorCode::BadDescriptor, "value group presentation missing");
  if (v_of_p) {
    if (!mixed())
      fail(ErrorCode::BadDescriptor, "v_of_p is only meaningful in mixed characteristic");
    vg->require_cut(*v_of_p);
    if (vg->is_zero_cut(*v_of_p))
      fail(ErrorCode::BadDescriptor, "v_of_p must name a block, not the end position");
  }
}

KaplanskyReport kaplansky_check(const ValuedFieldDescriptor& vf) {
  vf.validate();
  unsigned long p = vf.residue.characteristic;
  if (p == 0)
    fail(ErrorCode::NotResidueCharP, "kaplansky_check needs residue characteristic p > 0");
  KaplanskyReport rep;
  ExtNat e = segment_exp(*vf.vg, vf.vg->begin_cut(), vf.vg->end_cut(), p);
  rep.value_group_p_divisible = e.is_zero() ? Tri::Yes : Tri::No;
  if (rep.value_group_p_divisible == Tri::No)
    rep.notes.push_back("value group has [G:pG] = p^" + e.str());

  DerivedField res = derive_field(vf.residue);
  rep.residue_perfect = res.perfect;
  rep.residue_no_sep_ext_p = res.no_sep_ext_deg_div_p;

  // Equicharacteristic p over a strongly dependent henselian base forces
  // every clause on the residue side.
  DerivedField base = derive_field(vf.base);
  if (vf.equichar_p() && vf.henselian && base.strongly_dependent == Tri::Yes) {
    if (rep.residue_perfect == Tri::Unknown) {
      rep.residue_perfect = Tri::Yes;
      rep.notes.push_back("residue perfection forced by the equicharacteristic transfer");
    }
    if (rep.residue_no_sep_ext_p == Tri::Unknown) {
      rep.residue_no_sep_ext_p = Tri::Yes;
      rep.notes.push_back("residue extension clause forced by the equicharacteristic transfer");
    }
  }

  rep.ok = rep.value_group_p_divisible == Tri::Yes && rep.residue_perfect == Tri::Yes &&
           rep.residue_no_sep_ext_p == Tri::Yes;
  return rep;
}

Cut delta_p(const Presentation& pres, unsigned long p) {
  const auto& segs = pres.segments();
  for (std::size_t s = segs.size(); s-- > 0;) {
    switch (segs[s].kind) {
      case SegKind::Single:
      case SegKind::OmegaRep:
        if (!segs[s].block->exp(p).is_zero()) return Cut{s + 1, 0};
        break;
      case SegKind::PrimeFan: {
        auto idx = prime_index(p);
        if (idx) return Cut{s, static_cast<unsigned long long>(*idx) + 1};
        break;
      }
    }
  }
  return pres.begin_cut();  // p-divisible group
}

StandardDecomposition standard_decomposition(const Presentation& pres, const Cut& v_p_pos) {
  if (!pres.valid_cut(v_p_pos) || pres.is_zero_cut(v_p_pos))
    fail(ErrorCode::BadBlock, "standard_decomposition: invalid block position");
  StandardDecomposition out;
  out.delta = v_p_pos;
  const Segment& seg = pres.segments()[v_p_pos.seg];
  out.delta0 = (seg.kind == SegKind::Single) ? Cut{v_p_pos.seg + 1, 0}
                                             : Cut{v_p_pos.seg, v_p_pos.off + 1};
  ArchimedeanBlock blk = pres.block_at(v_p_pos);
  out.finite_ram = pres.is_zero_cut(out.delta0) && blk.kind() == BlockKind::Discrete;
  return out;
}

std::vector<Violation> audit_necessary(const ValuedFieldDescriptor& vf) {
  vf.validate();
  std::vector<Violation> out;

  DerivedField res = derive_field(vf.residue);
  for (const auto& c : res.conflicts) out.push_back({"residue-flag-conflict", c});
  DerivedField base = derive_field(vf.base);
  for (const auto& c : base.conflicts) out.push_back({"base-flag-conflict", c});

  // value group must be strongly dependent
  RankReport vg_rep = verdict(vf.vg);
  if (vg_rep.verdict == VerdictKind::NotStronglyDependent)
    out.push_back({"value-group-strongly-dependent",
                   "value group is not strongly dependent (dp rank aleph0)"});

  if (res.strongly_dependent == Tri::No)
    out.push_back({"residue-strongly-dependent", "residue field flagged not strongly dependent"});
  if (res.perfect == Tri::No)
    out.push_back({"residue-perfect", "residue field flagged imperfect"});

  if (vf.equichar_p()) {
    unsigned long p = vf.residue.characteristic;
    if (!segment_exp(*vf.vg, vf.vg->begin_cut(), vf.vg->end_cut(), p).is_zero())
      out.push_back({"equichar-kaplansky-p-divisible",
                     "equicharacteristic " + std::to_string(p) +
                         ": value group is not p-divisible"});
    if (vf.residue.cls == FieldClass::Finite)
      out.push_back({"equichar-residue-infinite",
                     "equicharacteristic residue field must be infinite"});
    if (res.artin_schreier_closed == Tri::No)
      out.push_back({"equichar-residue-artin-schreier",
                     "residue field flagged not Artin-Schreier closed"});
    if (res.no_sep_ext_deg_div_p == Tri::No)
      out.push_back({"equichar-residue-kaplansky",
                     "residue field admits separable extensions of degree divisible by p"});
  }

  if (vf.mixed() && vf.v_of_p) {
    unsigned long p = vf.residue.characteristic;
    StandardDecomposition dec = standard_decomposition(*vf.vg, *vf.v_of_p);
    if (!dec.finite_ram) {
      if (vf.vg->is_zero_cut(delta_p(*vf.vg, p)))
        out.push_back({"mixed-ramification-dichotomy",
                       "infinite ramification with no non-trivial p-divisible convex "
                       "subgroup (Delta_" + std::to_string(p) + " = 0)"});
      if (vf.residue.cls == FieldClass::Finite)
        out.push_back({"mixed-infinite-ramification-finite-residue",
                       "infinitely ramified mixed characteristic forces an infinite "
                       "residue field"});
    }
  }

  return out;
}

TransferVerdict transfer_verdict(const ValuedFieldDescriptor& vf) {
  if (!vf.henselian)
    fail(ErrorCode::NotHenselian, "the transfer engine assumes a henselian valuation");
  vf.validate();
  TransferVerdict out;

  DerivedField base = derive_field(vf.base);
  if (base.strongly_dependent == Tri::No) {
    out.status = TransferStatus::NotStronglyDependent;
    out.derivation.push_back({"base-reduct", "the valued field expands the base field, so a "
                                             "non-strongly-dependent base rules it out"});
    return out;
  }
  if (base.strongly_dependent == Tri::Unknown) {
    out.status = TransferStatus::Undetermined;
    out.missing.push_back("base.strongly_dependent");
    return out;
  }

  out.derivation.push_back({"base-hypothesis", "base field strongly dependent, valuation henselian"});

  std::vector<Violation> violations = audit_necessary(vf);
  if (!violations.empty()) {
    out.status = TransferStatus::Inconsistent;
    out.violations = std::move(violations);
    return out;
  }

  if (vf.mixed() && !vf.v_of_p) {
    out.status = TransferStatus::Undetermined;
    out.missing.push_back("v_of_p_block");
    return out;
  }

  DerivedField res = derive_field(vf.residue);

  if (vf.equichar_zero()) {
    out.case_label = "1";
    out.derivation.push_back(
        {"case-1-equichar-zero",
         "residue characteristic 0: strong dependence transfers from the residue field "
         "and value group"});
    out.status = TransferStatus::StronglyDependent;
  } else if (vf.equichar_p()) {
    out.case_label = "2";
    out.derivation.push_back(
        {"case-2-equichar-p",
         "equal characteristic p: the field is an algebraically maximal Kaplansky field "
         "for every henselian valuation, and the transfer applies"});
    out.status = TransferStatus::StronglyDependent;
  } else {
    unsigned long p = vf.residue.characteristic;
    StandardDecomposition dec = standard_decomposition(*vf.vg, *vf.v_of_p);
    out.derivation.push_back(
        {"mixed-decomposition",
         std::string("mixed characteristic (0,") + std::to_string(p) +
             "): split at the archimedean class of v(p); Delta0 = " +
             vf.vg->cut_str(dec.delta0) + ", Delta = " + vf.vg->cut_str(dec.delta) +
             ", ramification " + (dec.finite_ram ? "finite" : "infinite")});
    if (vf.residue.cls == FieldClass::Finite) {
      out.case_label = "3.1";
      out.derivation.push_back(
          {"case-3.1-finite-residue",
           "finite residue field: the valuation is externally definable over the base"});
      out.status = TransferStatus::StronglyDependent;
    } else {
      out.case_label = "3.2";
      out.derivation.push_back(
          {"case-3.2-infinite-residue",
           "infinite residue field: the middle rank-one piece is unboundedly ramified "
           "with p-divisible value group"});
      out.derivation.push_back(
          {"case-3.2-maximality",
           "justification: a sufficiently saturated extension of the middle piece is "
           "spherically complete, hence algebraically maximal Kaplansky"});
      out.derivation.push_back(
          {"case-3.2-compose",
           "compose the equicharacteristic-zero coarsening, the middle transfer and the "
           "equicharacteristic-p bottom through stable embedding"});
      out.status = TransferStatus::StronglyDependent;
    }
  }

  if (out.status == TransferStatus::StronglyDependent) {
    out.defectless = true;
    out.algebraically_maximal = true;
    out.derivation.push_back(
        {"defectless",
         "strongly dependent henselian fields are defectless, hence algebraically maximal"});
    if (vf.residue.characteristic != 0) out.kaplansky = kaplansky_check(vf).ok;
  }
  return out;
}

std::optional<std::pair<unsigned long, Cut>> coarsening_witness(const Presentation& pres) {
  // smallest prime at which the group fails to be divisible
  std::optional<unsigned long> p;
  unsigned long bound = 2;
  bool has_default1 = false;
  for (const auto& seg : pres.segments()) {
    if (seg.kind == SegKind::PrimeFan) {
      p = 2;  // the fan's dominant block is Z_(2)
      break;
    }
    const DivisibilityProfile& prof = seg.block->profile();
    if (prof.default_exp() == 1) has_default1 = true;
    for (const auto& [q, e] : prof.exceptions()) {
      if (!e.is_zero() && (!p || q < *p)) p = q;
      bound = std::max(bound, q + 1);
    }
  }
  if (has_default1) {
    // a default-1 block is non-q-divisible at almost every prime; scan from 2
    for (std::size_t i = 0; !p || nth_prime(i) < *p; ++i) {
      unsigned long q = nth_prime(i);
      if (q >= bound && !p) {
        p = q;
        break;
      }
      bool heavy = false;
      for (const auto& seg : pres.segments())
        if (seg.kind != SegKind::PrimeFan && !seg.block->exp(q).is_zero()) heavy = true;
      if (heavy) {
        p = q;
        break;
      }
    }
  }
  if (!p) return std::nullopt;
  AntiregularityResult anti = antiregularity(pres, *p);
  return std::make_pair(*p, anti.kernel);
}

}  // namespace oag
