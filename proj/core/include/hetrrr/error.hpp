#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetrrr {

enum class ErrorCode {
    DimensionMismatch,
    NonFiniteEntry,
    TooFewRows,
    InvalidPair,
    InvalidGamma,
    InvalidConfig,
    SingularDesign,
    RankOutOfRange,
    DegenerateGrid,
    NonPositiveRSS,
    AllFitsDiverged,
    EmptyGroup,
    NotPositiveDefinite,
    RankDeficientSignal,
    EmptyInput,
    Io,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hetrrr
