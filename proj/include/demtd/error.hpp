#pragma once

#include <stdexcept>
#include <string>

namespace demtd {

enum class ErrorCode {
    MissingFile,
    HeaderParse,
    SizeMismatch,
    NonFinite,
    NonBinary,
    EmptyMask,
    DimMismatch,
    TooSmall,
    BadParam,
    DuplicateId,
    BasisMismatch,
    SingularH,
    SingularP,
    NoValidPairs,
    TooFewSamples,
    SingleClass,
    EmptyTrainSet,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

// True for errors caused by bad user input (files, flags); false for
// numeric or runtime failures.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace demtd
