#include "skpca/error.hpp"

namespace skpca {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotEnoughPoints: return "NotEnoughPoints";
        case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorCode::AllPointsIdentical: return "AllPointsIdentical";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::SourceMismatch: return "SourceMismatch";
        case ErrorCode::NotExplicitFeatureMap: return "NotExplicitFeatureMap";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::UnboundedProblem: return "UnboundedProblem";
        case ErrorCode::SolveFailure: return "SolveFailure";
        case ErrorCode::NoLabels: return "NoLabels";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::NotBinary: return "NotBinary";
        case ErrorCode::FractionOutOfRange: return "FractionOutOfRange";
        case ErrorCode::UnknownDataset: return "UnknownDataset";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void rethrow_with_context(const Error& e, const std::string& context) {
    // what() already starts with the code name; strip it so it is not repeated.
    std::string what = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw Error(e.code(), context + ": " + what);
}

}  // namespace skpca
