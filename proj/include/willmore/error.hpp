#pragma once

#include <stdexcept>
#include <string>

namespace wm {

// Every failure raised by the library carries one of these codes; the C API
// forwards them unchanged as integers.
enum class ErrorCode : int {
  Ok = 0,
  DimensionMismatch = 1,
  NullDirection = 2,
  ParameterDomain = 3,
  NoNontrivialSolution = 4,
  InconsistentTargets = 5,
  NotConformal = 6,
  NonzeroResidue = 7,
  PoleOrderMismatch = 8,
  DivisionByZeroJet = 9,
  NonpositiveBranch = 10,
  BranchPoint = 11,
  DegenerateV = 12,
  NotNormal = 13,
  QuadratureNonconvergent = 14,
  UmbilicPoint = 15,
  GridTooCoarse = 16,
  NotImmersed = 17,
  SpanDeficit = 18,
  RankDrop = 19,
  TotallyIsotropicInput = 20,
  SingularSetHit = 21,
  RankCollapse = 22,
  NotTotallyIsotropic = 23,
  DegenerateInput = 24,
  Parse = 25,
  Schema = 26,
  Io = 27,
  InvalidArgument = 28,
};

const char* errorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wm
