#include "harmlab/error.hpp"

namespace harmlab {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::CurveThroughZero: return "CurveThroughZero";
        case ErrorKind::SingularZeroDetected: return "SingularZeroDetected";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::EmptySupport: return "EmptySupport";
        case ErrorKind::NotRealCoefficients: return "NotRealCoefficients";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::TraceStall: return "TraceStall";
        case ErrorKind::SaddleUnresolved: return "SaddleUnresolved";
        case ErrorKind::CriticalPoint: return "CriticalPoint";
        case ErrorKind::BranchJump: return "BranchJump";
        case ErrorKind::NotOnLemniscate: return "NotOnLemniscate";
        case ErrorKind::NotCritical: return "NotCritical";
        case ErrorKind::AssumptionFailed: return "AssumptionFailed";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_degenerate_input(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SingularSystem:
        case ErrorKind::EmptySupport:
        case ErrorKind::NotRealCoefficients:
        case ErrorKind::NotRegular:
        case ErrorKind::InvalidArgument:
        case ErrorKind::NotOnLemniscate:
        case ErrorKind::NotCritical:
        case ErrorKind::AssumptionFailed:
            return true;
        default:
            return false;
    }
}

}  // namespace harmlab
