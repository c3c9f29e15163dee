#include "mhs/error.hpp"

namespace mhs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::CorruptRecord: return "CorruptRecord";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::MissingTrace: return "MissingTrace";
    case ErrorCode::CatalogMismatch: return "CatalogMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::NoTruePositives: return "NoTruePositives";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace mhs
