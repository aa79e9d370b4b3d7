#include "rotvel/errors.hpp"

namespace rotvel {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PointBehindCamera: return "PointBehindCamera";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::DegenerateNullspace: return "DegenerateNullspace";
    case ErrorCode::InsufficientConsensus: return "InsufficientConsensus";
    case ErrorCode::RejectionExhausted: return "RejectionExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingScale: return "MissingScale";
    case ErrorCode::CoverageGap: return "CoverageGap";
  }
  return "UnknownError";
}

}  // namespace rotvel
