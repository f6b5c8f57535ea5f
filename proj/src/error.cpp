#include "mcesr/error.h"

namespace mcesr {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DegenerateMarket: return "DegenerateMarket";
        case ErrorCode::NonPositiveGmvReturn: return "NonPositiveGmvReturn";
        case ErrorCode::RateTooHigh: return "RateTooHigh";
        case ErrorCode::ZeroRisk: return "ZeroRisk";
        case ErrorCode::RatioTooSmall: return "RatioTooSmall";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::MaxIterations: return "MaxIterations";
        case ErrorCode::InvalidPairing: return "InvalidPairing";
        case ErrorCode::HorizonTooLong: return "HorizonTooLong";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::RaggedRow: return "RaggedRow";
        case ErrorCode::NonPositivePrice: return "NonPositivePrice";
        case ErrorCode::EmptySide: return "EmptySide";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput:
        case ErrorCode::ParseError:
        case ErrorCode::DuplicateDate:
        case ErrorCode::RaggedRow:
        case ErrorCode::NonPositivePrice:
        case ErrorCode::EmptySide:
        case ErrorCode::MissingData:
        case ErrorCode::Io:
            return true;
        default:
            return false;
    }
}

}  // namespace mcesr
