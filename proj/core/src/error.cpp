#include "hetrrr/error.hpp"

namespace hetrrr {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::InvalidPair: return "InvalidPair";
        case ErrorCode::InvalidGamma: return "InvalidGamma";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::DegenerateGrid: return "DegenerateGrid";
        case ErrorCode::NonPositiveRSS: return "NonPositiveRSS";
        case ErrorCode::AllFitsDiverged: return "AllFitsDiverged";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::RankDeficientSignal: return "RankDeficientSignal";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hetrrr
