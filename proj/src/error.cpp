#include "demtd/error.hpp"

namespace demtd {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::HeaderParse: return "HeaderParse";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonBinary: return "NonBinary";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::SingularH: return "SingularH";
    case ErrorCode::SingularP: return "SingularP";
    case ErrorCode::NoValidPairs: return "NoValidPairs";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyTrainSet: return "EmptyTrainSet";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingFile:
    case ErrorCode::HeaderParse:
    case ErrorCode::SizeMismatch:
    case ErrorCode::NonFinite:
    case ErrorCode::NonBinary:
    case ErrorCode::EmptyMask:
    case ErrorCode::DimMismatch:
    case ErrorCode::TooSmall:
    case ErrorCode::BadParam:
    case ErrorCode::DuplicateId:
    case ErrorCode::BasisMismatch:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace demtd
