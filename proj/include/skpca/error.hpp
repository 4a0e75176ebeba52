#pragma once

#include <stdexcept>
#include <string>

namespace skpca {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotEnoughPoints,
    NonFiniteEntry,
    AllPointsIdentical,
    ConvergenceFailure,
    NotPSD,
    SourceMismatch,
    NotExplicitFeatureMap,
    RankDeficient,
    UnboundedProblem,
    SolveFailure,
    NoLabels,
    ParseError,
    UnknownLabel,
    NotBinary,
    FractionOutOfRange,
    UnknownDataset,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is stable; the message is
/// for humans and may carry extra context such as a pipeline stage.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

/// Re-raise `e` with `context` prepended, keeping its code.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context);

}  // namespace skpca
