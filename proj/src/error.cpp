#include "willmore/error.hpp"

namespace wm {

const char* errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NullDirection: return "NullDirection";
    case ErrorCode::ParameterDomain: return "ParameterDomain";
    case ErrorCode::NoNontrivialSolution: return "NoNontrivialSolution";
    case ErrorCode::InconsistentTargets: return "InconsistentTargets";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::NonzeroResidue: return "NonzeroResidue";
    case ErrorCode::PoleOrderMismatch: return "PoleOrderMismatch";
    case ErrorCode::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorCode::NonpositiveBranch: return "NonpositiveBranch";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::DegenerateV: return "DegenerateV";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::QuadratureNonconvergent: return "QuadratureNonconvergent";
    case ErrorCode::UmbilicPoint: return "UmbilicPoint";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::SpanDeficit: return "SpanDeficit";
    case ErrorCode::RankDrop: return "RankDrop";
    case ErrorCode::TotallyIsotropicInput: return "TotallyIsotropicInput";
    case ErrorCode::SingularSetHit: return "SingularSetHit";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::NotTotallyIsotropic: return "NotTotallyIsotropic";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace wm
