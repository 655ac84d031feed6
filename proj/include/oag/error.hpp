#pragma once

#include <stdexcept>
#include <string>

namespace oag {

// Every failure mode of the library maps to one of these codes. The CLI
// translates input-shaped codes to exit status 2 and everything else to 3.
enum class ErrorCode {
  EmptySum,
  TrivialGroup,
  NonPrimeKey,
  OmegaOfCompound,
  ParseError,
  BadCut,
  BadBlock,
  BadElement,
  BadLadder,
  UnsupportedGroup,
  BadSubgroup,
  AmbientMismatch,
  NotASubgroupOf,
  InfiniteSpine,
  NotFiniteRank,
  NonDiscreteBlock,
  RankMismatch,
  NotSublattice,
  NotResidueCharP,
  NotHenselian,
  BadDescriptor,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  // Input-shaped errors: the caller handed us something malformed, as
  // opposed to a broken internal invariant.
  bool user_input() const {
    switch (code_) {
      case ErrorCode::Internal:
        return false;
      default:
        return true;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code);

}  // namespace oag
