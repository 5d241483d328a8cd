#include "sphoc/error.hpp"

namespace sphoc {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyTranscription: return "EmptyTranscription";
        case ErrorCode::InvalidIndex: return "InvalidIndex";
        case ErrorCode::CropTooNarrow: return "CropTooNarrow";
        case ErrorCode::DegenerateQuad: return "DegenerateQuad";
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BadTensorFile: return "BadTensorFile";
    }
    return "Unknown";
}

}  // namespace sphoc
