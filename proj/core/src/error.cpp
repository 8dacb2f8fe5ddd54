#include "chogen/error.hpp"

namespace chogen {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DuplicateOption: return "DuplicateOption";
    case ErrorKind::MixedWidth: return "MixedWidth";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EffectOutOfRange: return "EffectOutOfRange";
    case ErrorKind::SamePair: return "SamePair";
    case ErrorKind::SameEffect: return "SameEffect";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NotHadamard: return "NotHadamard";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BadGenerators: return "BadGenerators";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::BadGroup: return "BadGroup";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace chogen
