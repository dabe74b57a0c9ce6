#pragma once

#include <stdexcept>
#include <string>

namespace rwm {

enum class ErrorCode {
    SequenceTooShort,
    EmptyLogo,
    CapacityExceeded,
    MissingFlag,
    CorruptStream,
    RecordOutOfBounds,
    HeaderMismatch,
    PayloadDisagreement,
    DimensionMismatch,
    MixedDimensions,
    MalformedPgm,
    MalformedPbm,
    SizeMismatch,
    InvalidSpec,
    IoFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rwm
