#pragma once

#include <stdexcept>
#include <string>

namespace harmlab {

// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    NonConvergence,
    CurveThroughZero,
    SingularZeroDetected,
    NotRegular,
    EmptySupport,
    NotRealCoefficients,
    SingularSystem,
    TraceStall,
    SaddleUnresolved,
    CriticalPoint,
    BranchJump,
    NotOnLemniscate,
    NotCritical,
    AssumptionFailed,
    NotFound,
    InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

// True for kinds caused by degenerate input rather than numerical trouble.
bool is_degenerate_input(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace harmlab
