#include "chogen/catalog.hpp"

#include <array>
#include <sstream>

#include "chogen/hadamard.hpp"

namespace chogen {

namespace {

constexpr int kColumns = kTableMaxFactors - kTableMinFactors + 1;
using TableRow = std::array<int, kColumns>;

// Reference values for n = 2..12; 0 marks a blank cell.
constexpr std::array<TableRow, 7> kMainEffects{{
    {2, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {2, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4},
    {0, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {0, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {0, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2},
}};

constexpr std::array<TableRow, 7> kBroader{{
    {2, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {2, 8, 8, 16, 16, 16, 16, 24, 24, 24, 24},
    {1, 2, 4, 4, 4, 8, 8, 8, 8, 8, 8},
    {0, 8, 8, 16, 16, 16, 16, 24, 24, 24, 24},
    {0, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
    {0, 8, 8, 16, 16, 16, 16, 24, 24, 24, 24},
    {0, 1, 1, 2, 2, 2, 4, 4, 4, 4, 4},
}};

constexpr std::array<TableRow, 2> kSpecTwoFactor{{
    {4, 8, 8, 16, 16, 16, 16, 24, 24, 24, 24},
    {0, 4, 4, 8, 8, 8, 8, 12, 12, 12, 12},
}};

constexpr std::array<TableRow, 2> kSpecAll{{
    {4, 8, 8, 16, 16, 16, 16, 32, 32, 32, 32},
    {0, 4, 4, 8, 8, 8, 8, 16, 16, 16, 16},
}};

bool specified(TableBlock block) {
    return block == TableBlock::SpecifiedTwoFactor || block == TableBlock::SpecifiedAll;
}

int first_row(TableBlock block) { return specified(block) ? 3 : 2; }

std::optional<int> supported_order(int n) {
    try {
        return least_hadamard_order(n);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::size_t pow2(int k) { return std::size_t{1} << k; }

void add_generator_recipes(std::vector<ConstructionRecipe>& out, TableBlock block, int m, int n) {
    const bool half = block == TableBlock::MainEffects;
    const ModelKind kind = half ? ModelKind::MainEffects : ModelKind::BroaderMainEffects;

    if ((m - 1) / 2 <= n) {
        if (auto v = supported_order(n)) {
            ConstructionRecipe r;
            r.id = RecipeId::Theorem1Generator;
            r.n = n;
            r.m = m;
            r.order = *v;
            r.alpha = (m - 1) / 2;
            r.generators = default_generators(n, m);
            r.half = half;
            r.claimed_model = kind;
            r.claimed_sets = static_cast<std::size_t>(half || m % 2 == 0 ? *v : 2 * *v);
            out.push_back(r);
        }
    }

    if (m % 2 == 0 && hadamard_order_supported(m / 2) && n <= m / 2) {
        ConstructionRecipe r;
        r.id = RecipeId::SingleSet;
        r.n = n;
        r.m = m;
        r.order = m / 2;
        r.claimed_model = kind;
        r.claimed_sets = 1;
        out.push_back(r);
    }

    if (hadamard_order_supported(m) && n < m) {
        ConstructionRecipe r;
        r.id = RecipeId::FoldoverPair;
        r.n = n;
        r.m = m;
        r.order = m;
        r.half = half;
        r.claimed_model = kind;
        r.claimed_sets = half ? 1 : 2;
        out.push_back(r);
    }

    if (m >= 4 && hadamard_order_supported(m)) {
        try {
            const int alpha = theorem2_alpha(n, m);
            ConstructionRecipe r;
            r.id = RecipeId::Theorem2DirectAdd;
            r.n = n;
            r.m = m;
            r.order = m;
            r.alpha = alpha;
            r.half = half;
            r.claimed_model = kind;
            r.claimed_sets = half ? pow2(alpha) : pow2(alpha + 1);
            out.push_back(r);
        } catch (const Error&) {
        }
    }
}

void add_specified_recipes(std::vector<ConstructionRecipe>& out, TableBlock block, int m, int n) {
    ConstructionRecipe r;
    r.n = n;
    r.m = m;
    if (block == TableBlock::SpecifiedTwoFactor) {
        const auto v = supported_order(n);
        if (!v) return;
        r.id = m == 4 ? RecipeId::Spec2fM4 : RecipeId::Spec2fM3;
        r.order = *v;
        r.claimed_model = ModelKind::SpecifiedTwoFactorOneFactor;
        r.claimed_sets = static_cast<std::size_t>(m == 4 ? *v : 2 * *v);
        out.push_back(r);
        return;
    }
    r.id = m == 4 ? RecipeId::SpecAllM4 : RecipeId::SpecAllM3;
    r.claimed_model = ModelKind::SpecifiedOneFactor;
    auto with_alpha = [&](int alpha, bool outside) {
        r.alpha = alpha;
        r.order = 1 << alpha;
        r.claimed_sets = m == 4 ? pow2(alpha) : pow2(alpha + 1);
        r.outside_stated_range = outside;
        out.push_back(r);
    };
    with_alpha(specified_alpha(n), false);
    if (n == 2) with_alpha(1, true);

    const auto seed = widened_specified_seed(n, m);
    std::vector<int> default_columns(static_cast<std::size_t>(n));
    for (int c = 1; c <= n; ++c) default_columns[static_cast<std::size_t>(c - 1)] = c;
    if ((seed.alpha != specified_alpha(n) || seed.columns != default_columns) &&
        hadamard_order_supported(1 << seed.alpha)) {
        r.columns = seed.columns;
        with_alpha(seed.alpha, true);
    }
}

std::int64_t one_factor_q(int n) { return (n - 1) + (std::int64_t{1} << (n - 1)); }

}  // namespace

const char* to_string(TableBlock b) noexcept {
    switch (b) {
    case TableBlock::MainEffects: return "main-effects";
    case TableBlock::BroaderMainEffects: return "broader";
    case TableBlock::SpecifiedTwoFactor: return "spec-2f";
    case TableBlock::SpecifiedAll: return "spec-all";
    }
    return "unknown";
}

std::optional<TableBlock> parse_block(const std::string& text) {
    for (auto b : {TableBlock::MainEffects, TableBlock::BroaderMainEffects, TableBlock::SpecifiedTwoFactor,
                   TableBlock::SpecifiedAll}) {
        if (text == to_string(b)) return b;
    }
    return std::nullopt;
}

const char* to_string(CatalogStatus s) noexcept {
    switch (s) {
    case CatalogStatus::Match: return "Match";
    case CatalogStatus::Mismatch: return "Mismatch";
    case CatalogStatus::NoConstruction: return "NoConstruction";
    case CatalogStatus::BlankCell: return "BlankCell";
    }
    return "unknown";
}

ModelSpec model_for_block(TableBlock block, int n) {
    switch (block) {
    case TableBlock::MainEffects: return ModelSpec::main_effects(n);
    case TableBlock::BroaderMainEffects: return ModelSpec::broader_main_effects(n);
    case TableBlock::SpecifiedTwoFactor: return ModelSpec::specified_two_factor(n);
    case TableBlock::SpecifiedAll: return ModelSpec::specified_one_factor(n);
    }
    throw Error(ErrorKind::Unsupported, "unknown table block");
}

std::vector<int> table_rows(TableBlock block) {
    if (specified(block)) return {3, 4};
    return {2, 3, 4, 5, 6, 7, 8};
}

std::optional<int> table_cell(TableBlock block, int m, int n) {
    if (n < kTableMinFactors || n > kTableMaxFactors) return std::nullopt;
    const int row = m - first_row(block);
    const auto col = static_cast<std::size_t>(n - kTableMinFactors);
    int value = 0;
    switch (block) {
    case TableBlock::MainEffects:
        if (row >= 0 && row < 7) value = kMainEffects[static_cast<std::size_t>(row)][col];
        break;
    case TableBlock::BroaderMainEffects:
        if (row >= 0 && row < 7) value = kBroader[static_cast<std::size_t>(row)][col];
        break;
    case TableBlock::SpecifiedTwoFactor:
        if (row >= 0 && row < 2) value = kSpecTwoFactor[static_cast<std::size_t>(row)][col];
        break;
    case TableBlock::SpecifiedAll:
        if (row >= 0 && row < 2) value = kSpecAll[static_cast<std::size_t>(row)][col];
        break;
    }
    if (value == 0) return std::nullopt;
    return value;
}

std::optional<std::string> documented_exception(TableBlock block, int m, int n) {
    if (block == TableBlock::BroaderMainEffects && m == 3 && n == 2) {
        return "table lists 2 sets; the odd-m generator construction needs 2v = 4 and no other construction applies";
    }
    if (block == TableBlock::SpecifiedAll && m == 3 && n == 2) {
        return "table value 4 needs the order-2 Sylvester seed (alpha = 1), below the stated alpha >= 2";
    }
    if (block == TableBlock::SpecifiedAll && ((m == 4 && n >= 6) || (m == 3 && n >= 4))) {
        const auto cell = table_cell(block, m, n);
        if (!cell) return std::nullopt;
        const std::int64_t q = one_factor_q(n);
        const std::int64_t rank = static_cast<std::int64_t>(*cell) * (m - 1);
        if (q > rank) {
            return "Q=" + std::to_string(q) + " effects exceed rank(C) <= N(m-1)=" + std::to_string(rank) +
                   ", so no design with the table's N is connected";
        }
        return "the stated seed makes an effect without factor 1 share its effective column with one containing "
               "factor 1, so C is not diagonal";
    }
    return std::nullopt;
}

std::vector<ConstructionRecipe> applicable_recipes(TableBlock block, int m, int n) {
    if (n < 1 || n > kMaxFactors) throw Error(ErrorKind::RangeError, "factor count outside 1.." + std::to_string(kMaxFactors));
    if (m < 2) throw Error(ErrorKind::Unsupported, "set size " + std::to_string(m) + " is below 2");
    if (n < 63 && static_cast<std::uint64_t>(m) > (std::uint64_t{1} << n)) {
        throw Error(ErrorKind::Unsupported, "set size " + std::to_string(m) + " exceeds the 2^" + std::to_string(n) +
                                                " available treatments");
    }
    if (specified(block) && m != 3 && m != 4) {
        throw Error(ErrorKind::Unsupported, std::string(to_string(block)) + " constructions exist only for m = 3 or 4");
    }
    std::vector<ConstructionRecipe> out;
    if (specified(block)) {
        add_specified_recipes(out, block, m, n);
    } else {
        add_generator_recipes(out, block, m, n);
    }
    return out;
}

CatalogEntry catalog_lookup(TableBlock block, int m, int n) {
    CatalogEntry entry;
    entry.block = block;
    entry.m = m;
    entry.n = n;
    entry.table_sets = table_cell(block, m, n);

    const auto recipes = applicable_recipes(block, m, n);
    const auto model = model_for_block(block, n);
    for (const auto& recipe : recipes) {
        CandidateOutcome outcome{recipe, std::nullopt, false, {}};
        try {
            auto d = realize(recipe);
            outcome.sets = d.num_sets();
            const auto report = verify(d, model);
            outcome.certified = report.certified();
            if (!outcome.certified) outcome.note = to_string(report.verdict);
            if (outcome.certified && (!entry.achieved_sets || d.num_sets() < *entry.achieved_sets)) {
                entry.recipe = recipe;
                entry.achieved_sets = d.num_sets();
                entry.design = std::move(d);
            }
        } catch (const Error& e) {
            outcome.note = e.what();
        }
        entry.candidates.push_back(std::move(outcome));
    }

    if (!entry.table_sets) {
        entry.status = CatalogStatus::BlankCell;
    } else if (!entry.achieved_sets) {
        entry.status = CatalogStatus::NoConstruction;
    } else {
        entry.status = static_cast<int>(*entry.achieved_sets) == *entry.table_sets ? CatalogStatus::Match
                                                                                   : CatalogStatus::Mismatch;
    }
    const bool flagged = entry.status != CatalogStatus::Match || (entry.recipe && entry.recipe->outside_stated_range);
    if (flagged && entry.status != CatalogStatus::BlankCell) entry.exception = documented_exception(block, m, n);
    return entry;
}

bool TableReport::consistent() const {
    for (const auto& e : entries) {
        if (e.status == CatalogStatus::BlankCell) continue;
        if (e.status != CatalogStatus::Match && !e.exception) return false;
        if (e.recipe && e.recipe->outside_stated_range && !e.exception) return false;
    }
    return true;
}

std::string TableReport::summary() const {
    std::ostringstream out;
    out << "cells: " << entries.size() << ", match: " << matches << ", mismatch: " << mismatches
        << ", no construction: " << missing << ", blank: " << blanks << ", documented exceptions: " << documented
        << ", without any certified design: " << unresolved << '\n';
    for (const auto& e : entries) {
        if (!e.exception) continue;
        out << "  " << to_string(e.block) << " m=" << e.m << " n=" << e.n << " " << to_string(e.status);
        if (e.achieved_sets) out << " (N=" << *e.achieved_sets << ")";
        out << ": " << *e.exception << '\n';
    }
    out << (consistent() ? "consistent" : "inconsistent") << '\n';
    return out.str();
}

TableReport reproduce_table1(const std::vector<TableBlock>& blocks) {
    std::vector<TableBlock> selected = blocks;
    if (selected.empty()) {
        selected = {TableBlock::MainEffects, TableBlock::BroaderMainEffects, TableBlock::SpecifiedTwoFactor,
                    TableBlock::SpecifiedAll};
    }
    TableReport report;
    for (auto block : selected) {
        for (int m : table_rows(block)) {
            for (int n = kTableMinFactors; n <= kTableMaxFactors; ++n) {
                CatalogEntry entry;
                if (table_cell(block, m, n)) {
                    entry = catalog_lookup(block, m, n);
                } else {
                    entry.block = block;
                    entry.m = m;
                    entry.n = n;
                    entry.status = CatalogStatus::BlankCell;
                }
                switch (entry.status) {
                case CatalogStatus::Match: ++report.matches; break;
                case CatalogStatus::Mismatch: ++report.mismatches; break;
                case CatalogStatus::NoConstruction: ++report.missing; break;
                case CatalogStatus::BlankCell: ++report.blanks; break;
                }
                if (entry.exception) ++report.documented;
                if (entry.table_sets && !entry.design) ++report.unresolved;
                report.entries.push_back(std::move(entry));
            }
        }
    }
    return report;
}

}  // namespace chogen
