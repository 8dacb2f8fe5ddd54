#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chogen/constructions.hpp"
#include "chogen/design.hpp"
#include "chogen/optimality.hpp"

namespace chogen {

/// The four blocks of the reference N table.
enum class TableBlock { MainEffects, BroaderMainEffects, SpecifiedTwoFactor, SpecifiedAll };

const char* to_string(TableBlock b) noexcept;
/// Accepts the CLI model names: main-effects, broader, spec-2f, spec-all.
std::optional<TableBlock> parse_block(const std::string& text);

ModelSpec model_for_block(TableBlock block, int n);

/// Table range: n in 2..12; m in 2..8 (first two blocks) or 3..4 (specified blocks).
inline constexpr int kTableMinFactors = 2;
inline constexpr int kTableMaxFactors = 12;

/// Reference N, or nullopt for blank and out-of-range cells.
std::optional<int> table_cell(TableBlock block, int m, int n);
/// All (m) rows of a block, in table order.
std::vector<int> table_rows(TableBlock block);

enum class CatalogStatus { Match, Mismatch, NoConstruction, BlankCell };

const char* to_string(CatalogStatus s) noexcept;

struct CandidateOutcome {
    ConstructionRecipe recipe;
    std::optional<std::size_t> sets;
    bool certified = false;
    /// Error text or verdict when the candidate was rejected.
    std::string note;
};

struct CatalogEntry {
    TableBlock block = TableBlock::MainEffects;
    int m = 0;
    int n = 0;
    std::optional<ConstructionRecipe> recipe;
    std::optional<ChoiceDesign> design;
    std::optional<std::size_t> achieved_sets;
    std::optional<int> table_sets;
    CatalogStatus status = CatalogStatus::NoConstruction;
    /// Reason when the cell is on the documented exception list.
    std::optional<std::string> exception;
    std::vector<CandidateOutcome> candidates;
};

/// Every construction that could apply to (block, m, n), before certification.
std::vector<ConstructionRecipe> applicable_recipes(TableBlock block, int m, int n);

/// Known disagreements between the table and the constructions it summarizes.
std::optional<std::string> documented_exception(TableBlock block, int m, int n);

/// Builds and certifies every applicable recipe; keeps the certified one with least N.
/// Throws Unsupported when m is outside every construction's reach.
CatalogEntry catalog_lookup(TableBlock block, int m, int n);

struct TableReport {
    std::vector<CatalogEntry> entries;
    std::size_t matches = 0;
    std::size_t mismatches = 0;
    std::size_t missing = 0;
    std::size_t blanks = 0;
    std::size_t documented = 0;
    /// Non-blank cells for which no construction certified at any N.
    std::size_t unresolved = 0;

    /// True when every disagreement is a documented exception and every
    /// reported design certifies.
    bool consistent() const;
    std::string summary() const;
};

/// Walks every cell of the selected blocks (all four when empty).
TableReport reproduce_table1(const std::vector<TableBlock>& blocks = {});

}  // namespace chogen
