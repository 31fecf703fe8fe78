#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotor {

enum class ErrorCode {
    SyntaxError,
    MalformedRational,
    NonReducedRational,
    NegativeDenominator,
    ZeroDenominator,
    MissingKey,
    UnknownKey,
    LengthMismatch,
    MissingZeroEndpoint,
    MissingUnitEndpoint,
    InvalidSpec,
    RefinementDiverged,
    NonContiguousWeights,
    NoCycle,
    LengthCapExceeded,
    NonPrimitive,
    NoConvergence,
    AlphaOutsideInterval,
    BracketFailure,
    DegenerateEntry,
    ZeroNotSimple,
    HorizonCapExceeded,
    EpsilonTooLarge,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace rotor
