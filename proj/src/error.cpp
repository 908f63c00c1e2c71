#include "confront/error.hpp"

namespace confront {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::UnknownRawType: return "UnknownRawType";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnmappableType: return "UnmappableType";
    case ErrorCode::ConflictingMerge: return "ConflictingMerge";
    case ErrorCode::MissingLength: return "MissingLength";
    case ErrorCode::MissingSegments: return "MissingSegments";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::NoFinitePairs: return "NoFinitePairs";
    case ErrorCode::InsufficientCoordinates: return "InsufficientCoordinates";
    case ErrorCode::UncoveredVertex: return "UncoveredVertex";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace confront
