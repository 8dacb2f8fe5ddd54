#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chogen/contrast.hpp"
#include "chogen/design.hpp"

namespace chogen {

/// eta+ counts effective component pairs of type (00,11); eta- counts type (01,10).
struct EtaCounts {
    std::int64_t plus = 0;
    std::int64_t minus = 0;

    bool balanced() const noexcept { return plus == minus; }
    bool operator==(const EtaCounts&) const = default;
};

EtaCounts eta_counts(const ChoiceDesign& d, const FactorialEffect& e1, const FactorialEffect& e2);

/// n_p: number of zeros in the effective choice set of each set p.
std::vector<int> np_counts(const ChoiceDesign& d, const FactorialEffect& e);

/// Upper bound on trace(C): Q / 2^n for even m, Q (m^2 - 1) / (2^n m^2) for odd m.
Rational max_trace(int q, int n, int m);

enum class Verdict {
    UniversallyOptimal,
    /// Connected, but the sufficient optimality conditions fail (not certified).
    ConnectedNotOptimal,
    NotConnected,
};

const char* to_string(Verdict v) noexcept;

struct OffendingPair {
    FactorialEffect first;
    FactorialEffect second;
    EtaCounts eta;
};

struct OptimalityReport {
    explicit OptimalityReport(ModelSpec m) : model(std::move(m)) {}

    ModelSpec model;
    bool diagonal = false;
    std::vector<OffendingPair> offending_pairs;
    bool balance_ok = false;
    /// np_table[q][p]: zero count of interest effect q in set p.
    std::vector<std::vector<int>> np_table;
    /// Exact trace of C over the interest effects (C_(1) for the broader model).
    Rational trace;
    Rational trace_bound;
    /// Present only when the model has nuisance effects.
    std::optional<bool> cross_block_zero;
    /// trace(C_(2)) from the pseudo-inverse branch; diagnostic only.
    std::optional<double> adjusted_trace;
    std::int64_t total_component_pairs = 0;
    bool connected = false;
    /// Exact C (interest effects), present unless the Schur correction was numeric.
    std::optional<ScaledIntMatrix> information;
    Verdict verdict = Verdict::NotConnected;

    bool certified() const noexcept { return verdict == Verdict::UniversallyOptimal; }
    std::string summary() const;
};

/// Certifies a design against a model with exact integer and rational arithmetic only.
OptimalityReport verify(const ChoiceDesign& d, const ModelSpec& model);

/// C* rebuilt purely from effective component pairs, independent of
/// the contrast-matrix product.
ScaledIntMatrix oracle_cstar(const ChoiceDesign& d, std::span<const FactorialEffect> effects);

/// Exact rank of an integer matrix (fraction-free elimination, arbitrary precision).
std::size_t exact_rank(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values);

}  // namespace chogen
