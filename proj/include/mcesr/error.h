#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcesr {

enum class ErrorCode {
    // domain errors
    NotPositiveDefinite,
    DegenerateMarket,
    NonPositiveGmvReturn,
    RateTooHigh,
    ZeroRisk,
    RatioTooSmall,
    Infeasible,
    MaxIterations,
    InvalidPairing,
    HorizonTooLong,
    // input errors
    InvalidInput,
    ParseError,
    DuplicateDate,
    RaggedRow,
    NonPositivePrice,
    EmptySide,
    MissingData,
    Io,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed input files or arguments, as opposed
/// to a well-formed market that does not admit the requested construction.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mcesr
