#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oag/rank.hpp"

namespace oag {

enum class FieldClass { AlgebraicallyClosed, SeparablyClosed, RealClosed, Finite, Other };
enum class Tri { Yes, No, Unknown };

const char* field_class_name(FieldClass c);
const char* tri_name(Tri t);

// A field known only through classification flags. Hypothesis flags are
// tri-state; the engine closes them under the forced implications and flags
// contradictions instead of silently overriding anything.
struct FieldDescriptor {
  unsigned long characteristic = 0;  // 0 or a prime
  FieldClass cls = FieldClass::Other;
  std::optional<mpz_class> finite_order;  // when cls == Finite
  Tri strongly_dependent = Tri::Unknown;
  Tri perfect = Tri::Unknown;
  Tri artin_schreier_closed = Tri::Unknown;
  Tri no_sep_ext_deg_div_p = Tri::Unknown;
};

// Flag closure: what the stated flags force, plus any contradictions found.
struct DerivedField {
  Tri strongly_dependent = Tri::Unknown;
  Tri perfect = Tri::Unknown;
  Tri artin_schreier_closed = Tri::Unknown;
  Tri no_sep_ext_deg_div_p = Tri::Unknown;
  bool known_infinite = false;
  std::vector<std::string> conflicts;
};

DerivedField derive_field(const FieldDescriptor& f);

// Symbolic (K, v): base and residue descriptors, the value group as a
// presented ordered abelian group, and the archimedean position of v(p) in
// mixed characteristic.
struct ValuedFieldDescriptor {
  FieldDescriptor base;
  FieldDescriptor residue;
  GroupExpr value_group = GroupExpr::Z();
  PresentationPtr vg;  // presentation of value_group
  std::optional<Cut> v_of_p;  // mixed characteristic only
  bool henselian = true;

  // Characteristic pair legality: (0,0), (0,p) or (p,p).
  void validate() const;
  bool equichar_zero() const { return residue.characteristic == 0; }
  bool equichar_p() const {
    return base.characteristic != 0 && base.characteristic == residue.characteristic;
  }
  bool mixed() const { return base.characteristic == 0 && residue.characteristic != 0; }
};

struct KaplanskyReport {
  Tri value_group_p_divisible = Tri::Unknown;
  Tri residue_perfect = Tri::Unknown;
  Tri residue_no_sep_ext_p = Tri::Unknown;
  bool ok = false;
  std::vector<std::string> notes;
};

// The three Kaplansky clauses for residue characteristic p; requires
// residue characteristic > 0.
KaplanskyReport kaplansky_check(const ValuedFieldDescriptor& vf);

// The maximal p-divisible convex subgroup (as a tail cut; whole group when
// the group is p-divisible, zero when the dominant block already obstructs).
Cut delta_p(const Presentation& pres, unsigned long p);

struct StandardDecomposition {
  Cut delta0;        // largest convex subgroup not containing v(p)
  Cut delta;         // smallest convex subgroup containing v(p)
  bool finite_ram;   // [0, v(p)] finite
};

StandardDecomposition standard_decomposition(const Presentation& pres, const Cut& v_p_pos);

struct Violation {
  std::string rule;
  std::string detail;
};

// Necessary conditions for (K, v) strongly dependent with K strongly
// dependent and v henselian, restricted to what the descriptor can decide.
std::vector<Violation> audit_necessary(const ValuedFieldDescriptor& vf);

enum class TransferStatus { StronglyDependent, NotStronglyDependent, Inconsistent, Undetermined };

const char* transfer_status_name(TransferStatus s);

struct RuleStep {
  std::string rule;
  std::string detail;
};

struct TransferVerdict {
  TransferStatus status = TransferStatus::Undetermined;
  std::optional<std::string> case_label;  // "1", "2", "3.1", "3.2"
  std::vector<RuleStep> derivation;
  std::vector<Violation> violations;
  std::vector<std::string> missing;  // flags that blocked a decision
  std::optional<bool> defectless;
  std::optional<bool> algebraically_maximal;
  std::optional<bool> kaplansky;
};

// The transfer engine: routes through the characteristic cases, records the
// derivation trail and attaches the derived side facts. Requires henselian.
TransferVerdict transfer_verdict(const ValuedFieldDescriptor& vf);

// Value-group side of the definable-coarsening argument: a prime p with the
// group not p-divisible and the convex kernel candidate produced by the
// antiregularity witness. Nothing when the group is divisible.
std::optional<std::pair<unsigned long, Cut>> coarsening_witness(const Presentation& pres);

}  // namespace oag
