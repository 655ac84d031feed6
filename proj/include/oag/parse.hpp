#pragma once

#include <string>

#include "oag/group.hpp"

namespace oag {

// Grammar:
//   group   := "Z" | "Q" | "dense" "{" [profile] "}"
//            | "lex" "(" group { "," group } ")"
//            | "omega" "(" group ")" | "zhat_primes"
//   profile := item { "," item } [";" "default" ":" ("0"|"1")]
//   item    := prime ":" (nat | "inf")
//
// "Q" is dense{} with default exponent 0. The result is flattened. Parse
// errors carry the byte offset of the offending token in the message.
GroupExpr parse_group(const std::string& text);

// Canonical text for a flattened expression; parse_group(print_group(e)) == e.
std::string print_group(const GroupExpr& e);

}  // namespace oag
