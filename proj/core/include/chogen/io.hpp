#pragma once

#include <string>
#include <vector>

#include "chogen/design.hpp"

namespace chogen {

struct DesignMeta {
    std::string construction;
    std::string model;
    std::vector<std::string> generators;

    bool operator==(const DesignMeta&) const = default;
};

struct DesignDocument {
    ChoiceDesign design;
    DesignMeta meta;
};

/// {"n", "m", "sets": [[bitstring, ...], ...], "meta": {...}}, newline-terminated.
std::string to_json(const ChoiceDesign& d, const DesignMeta& meta = {});
/// Throws Parse on malformed input or when n / m disagree with the sets.
DesignDocument design_from_json(const std::string& text);

/// Header "set,option,treatment", then one 1-based row per option.
std::string to_csv(const ChoiceDesign& d);
ChoiceDesign design_from_csv(const std::string& text);

/// Reads a design file; ".csv" selects CSV, anything else JSON. Throws Parse.
DesignDocument read_design_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace chogen
