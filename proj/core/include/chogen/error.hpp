#pragma once

#include <stdexcept>
#include <string>

namespace chogen {

enum class ErrorKind {
    DuplicateOption,
    MixedWidth,
    WidthMismatch,
    ShapeMismatch,
    EffectOutOfRange,
    SamePair,
    SameEffect,
    BadOrder,
    NotHadamard,
    Unsupported,
    BadGenerators,
    RangeError,
    BadGroup,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace chogen
