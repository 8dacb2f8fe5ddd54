#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "chogen/design.hpp"

namespace chogen {

using Rational = boost::rational<std::int64_t>;

/// i* = (r + 1 - sum of the effect's levels) mod 2.
int effective_position(const Treatment& t, const FactorialEffect& e);

std::vector<int> effective_choice_set(const ChoiceSet& s, const FactorialEffect& e);

/// Orthogonal +-1 contrast of an effect over all 2^n treatments in lexicographic order.
struct SignVector {
    std::vector<std::int8_t> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::int8_t operator[](std::size_t i) const { return entries[i]; }
    std::int64_t sum() const;
};

SignVector contrast_vector(const FactorialEffect& e, int n);

/// B_x M^(ij) B_y' = (x_i - x_j)(y_i - y_j), one of -4, 0, 4.
int pair_contribution(const FactorialEffect& e1, const FactorialEffect& e2, const Treatment& ti,
                      const Treatment& tj);

/// A square integer matrix carried with an exact positive scale factor.
class ScaledIntMatrix {
public:
    ScaledIntMatrix(std::size_t size, Rational scale);
    ScaledIntMatrix(std::size_t size, std::vector<std::int64_t> ints, Rational scale);

    std::size_t size() const noexcept { return size_; }
    const Rational& scale() const noexcept { return scale_; }
    std::span<const std::int64_t> ints() const noexcept { return ints_; }

    std::int64_t& at(std::size_t i, std::size_t j) { return ints_[i * size_ + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return ints_[i * size_ + j]; }
    Rational value(std::size_t i, std::size_t j) const { return scale_ * at(i, j); }

    std::int64_t trace_ints() const;
    Rational trace() const { return scale_ * trace_ints(); }
    bool is_symmetric() const;
    bool is_diagonal() const;
    /// True when the integer part is c * I for some c (the scale is common).
    bool is_scalar_identity() const;
    /// Rows [row0, row0+rows) x cols [col0, col0+cols); returned as a flat row-major array.
    std::vector<std::int64_t> block(std::size_t row0, std::size_t rows, std::size_t col0, std::size_t cols) const;
    /// Square principal submatrix on [first, first+count).
    ScaledIntMatrix principal(std::size_t first, std::size_t count) const;

    bool operator==(const ScaledIntMatrix&) const = default;

private:
    std::size_t size_;
    std::vector<std::int64_t> ints_;
    Rational scale_;
};

/// Largest n for which the dense 2^n x 2^n treatment matrix is materialized.
inline constexpr int kDenseLambdaMaxFactors = 12;

/// Lambda* = sum over sets of M^(j1..jm); represented value is Lambda = Lambda* / (N m^2).
ScaledIntMatrix lambda_star(const ChoiceDesign& d);

/// C* = B Lambda* B' over the listed effects; represented value is C = C* / (2^n N m^2).
///
/// Uses the contrast-matrix product for n <= kDenseLambdaMaxFactors, otherwise sums
/// per choice set over component pairs. Both routes are exact and agree.
ScaledIntMatrix cstar_matrix(const ChoiceDesign& d, std::span<const FactorialEffect> effects);

namespace detail {
/// B Lambda* B' restricted to the treatments that actually occur in the design.
ScaledIntMatrix cstar_by_product(const ChoiceDesign& d, std::span<const FactorialEffect> effects);
/// Sum over sets of m X X' - s s', i.e. the component-pair sum in closed form.
ScaledIntMatrix cstar_by_sets(const ChoiceDesign& d, std::span<const FactorialEffect> effects);
}  // namespace detail

/// Dense floating-point matrix, row-major. Diagnostic output only.
struct NumericMatrix {
    std::size_t size = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
    double trace() const;
};

/// Relative eigenvalue cutoff of the pseudo-inverse used for the Schur complement.
inline constexpr double kPseudoInverseCutoff = 1e-9;

struct InformationMatrix {
    /// Exact C whenever no Schur correction is needed.
    std::optional<ScaledIntMatrix> exact;
    /// Always filled: C as doubles (Schur complement when `exact` is empty).
    NumericMatrix numeric;
    /// Exact C over the interest effects alone (C_(1) for the broader model).
    ScaledIntMatrix interest_only;
    /// B_(1) Lambda* B_(2)' == 0; vacuously true without nuisance effects.
    bool cross_block_zero = true;
};

/// Information matrix of the model's effects of interest, adjusted for nuisance effects.
InformationMatrix info_matrix(const ChoiceDesign& d, const ModelSpec& model);

/// C_(2) through the pseudo-inverse route, even when the cross block is zero and
/// info_matrix would take the exact shortcut. Diagnostic only.
NumericMatrix schur_information(const ChoiceDesign& d, const ModelSpec& model);

}  // namespace chogen
