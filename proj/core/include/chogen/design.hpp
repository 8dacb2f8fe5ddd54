#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chogen/error.hpp"

namespace chogen {

/// Widest treatment representable; bits live in one machine word.
inline constexpr int kMaxFactors = 64;

constexpr std::uint64_t width_mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A level combination of n two-level factors.
///
/// Factor 1 is the most significant bit, so `index()` is the position of the
/// treatment in lexicographic order (0 ... 2^n - 1).
class Treatment {
public:
    Treatment(int n, std::uint64_t bits);

    /// Parses a factor-1-first bitstring such as "1010".
    static Treatment from_string(std::string_view text);

    int width() const noexcept { return n_; }
    std::uint64_t bits() const noexcept { return bits_; }
    std::uint64_t index() const noexcept { return bits_; }

    /// Level (0 or 1) of factor `factor`, 1-based.
    int level(int factor) const;

    Treatment complement() const noexcept { return Treatment(n_, ~bits_ & width_mask(n_)); }
    std::string to_string() const;

    auto operator<=>(const Treatment&) const = default;

private:
    int n_;
    std::uint64_t bits_;
};

/// XOR shift applied to every row of a design component.
class Generator {
public:
    explicit Generator(Treatment bits) : bits_(bits) {}

    static Generator from_string(std::string_view text) { return Generator(Treatment::from_string(text)); }
    /// e_u: a single 1 at factor `factor`.
    static Generator unit(int n, int factor);
    /// (1...1 0...0) with `ones` leading ones.
    static Generator leading_ones(int n, int ones);

    const Treatment& bits() const noexcept { return bits_; }
    int width() const noexcept { return bits_.width(); }
    bool is_zero() const noexcept { return bits_.bits() == 0; }
    bool is_all_ones() const noexcept { return bits_.bits() == width_mask(bits_.width()); }
    Generator complement() const noexcept { return Generator(bits_.complement()); }
    std::string to_string() const { return bits_.to_string(); }

    auto operator<=>(const Generator&) const = default;

private:
    Treatment bits_;
};

/// An ordered run of m >= 2 pairwise-distinct treatments of equal width.
class ChoiceSet {
public:
    explicit ChoiceSet(std::vector<Treatment> options);

    std::size_t size() const noexcept { return options_.size(); }
    int width() const noexcept { return options_.front().width(); }
    const Treatment& operator[](std::size_t i) const { return options_[i]; }
    std::span<const Treatment> options() const noexcept { return options_; }

    ChoiceSet complement() const;
    /// Options sorted ascending; used for order-insensitive comparison.
    ChoiceSet sorted() const;

    bool operator==(const ChoiceSet&) const = default;
    auto operator<=>(const ChoiceSet& other) const { return options_ <=> other.options_; }

private:
    std::vector<Treatment> options_;
};

ChoiceSet make_choice_set(std::vector<Treatment> options);
ChoiceSet make_choice_set(std::initializer_list<std::string_view> bitstrings);

/// One component A_i of a design: N rows of width n.
using ComponentMatrix = std::vector<Treatment>;

class ChoiceDesign {
public:
    explicit ChoiceDesign(std::vector<ChoiceSet> sets);

    /// Rebuilds a design from its components A_1 ... A_m (set p = row p of each).
    static ChoiceDesign from_components(std::span<const ComponentMatrix> components);

    int factors() const noexcept { return n_; }
    std::size_t set_size() const noexcept { return m_; }
    std::size_t num_sets() const noexcept { return sets_.size(); }
    std::span<const ChoiceSet> sets() const noexcept { return sets_; }
    const ChoiceSet& operator[](std::size_t p) const { return sets_[p]; }

    std::vector<ComponentMatrix> components() const;

    /// N * m(m-1)/2, the number of component pairs.
    std::int64_t component_pairs() const noexcept;

    /// Sorts options inside each set, then sorts the sets.
    ChoiceDesign canonical() const;
    bool same_up_to_order(const ChoiceDesign& other) const { return canonical() == other.canonical(); }

    bool operator==(const ChoiceDesign&) const = default;

private:
    std::vector<ChoiceSet> sets_;
    int n_ = 0;
    std::size_t m_ = 0;
};

Treatment complement(const Treatment& t);
ChoiceSet complement(const ChoiceSet& s);
ChoiceDesign complement(const ChoiceDesign& d);
ComponentMatrix complement(const ComponentMatrix& a);

ComponentMatrix add_generator(const ComponentMatrix& a, const Generator& g);

/// Factor-wise concatenation of corresponding options of two designs.
ChoiceDesign direct_add(const ChoiceDesign& d1, const ChoiceDesign& d2);

/// Keeps the first `n` factors of every treatment.
ChoiceDesign truncate_factors(const ChoiceDesign& d, int n);

/// The sets of `first` followed by the sets of `second`: {d1, d2}.
ChoiceDesign stack(const ChoiceDesign& first, const ChoiceDesign& second);

/// F_{h1...hr}: a nonempty, strictly increasing set of 1-based factor indices.
class FactorialEffect {
public:
    explicit FactorialEffect(std::vector<int> factors);
    FactorialEffect(std::initializer_list<int> factors) : FactorialEffect(std::vector<int>(factors)) {}

    static FactorialEffect main(int factor) { return FactorialEffect({factor}); }

    const std::vector<int>& factors() const noexcept { return factors_; }
    int order() const noexcept { return static_cast<int>(factors_.size()); }
    int highest_factor() const noexcept { return factors_.back(); }
    bool fits(int n) const noexcept { return highest_factor() <= n; }

    /// Bit mask selecting this effect's factors in an n-factor treatment.
    std::uint64_t mask(int n) const;

    /// "F13", or "F1.10" once any factor index exceeds 9.
    std::string name() const;
    static FactorialEffect parse(std::string_view name);

    bool operator==(const FactorialEffect&) const = default;
    /// Orders by effect order first, then lexicographically.
    std::strong_ordering operator<=>(const FactorialEffect& other) const;

private:
    std::vector<int> factors_;
};

enum class ModelKind {
    MainEffects,
    BroaderMainEffects,
    SpecifiedOneFactor,
    SpecifiedTwoFactorOneFactor,
    SpecifiedGroup,
    Custom,
};

const char* to_string(ModelKind kind) noexcept;

/// Effects of interest plus nuisance effects assumed present (broader model only).
class ModelSpec {
public:
    static ModelSpec main_effects(int n);
    /// Main effects of interest; all two-factor interactions as nuisance.
    static ModelSpec broader_main_effects(int n);
    /// Main effects and every interaction involving factor 1.
    static ModelSpec specified_one_factor(int n);
    /// Main effects and F_12 ... F_1n.
    static ModelSpec specified_two_factor(int n);
    /// Main effects and every F_{h K} with h in {1..r}, K a nonempty subset of {r+1..n}.
    static ModelSpec specified_group(int n, int r);
    static ModelSpec custom(int n, std::vector<FactorialEffect> interest,
                            std::vector<FactorialEffect> nuisance = {});

    ModelKind kind() const noexcept { return kind_; }
    int factors() const noexcept { return n_; }
    int group_size() const noexcept { return group_size_; }
    const std::vector<FactorialEffect>& interest() const noexcept { return interest_; }
    const std::vector<FactorialEffect>& nuisance() const noexcept { return nuisance_; }
    std::size_t q() const noexcept { return interest_.size(); }
    std::string name() const;

private:
    ModelSpec(ModelKind kind, int n, std::vector<FactorialEffect> interest,
              std::vector<FactorialEffect> nuisance, int group_size = 0);

    ModelKind kind_;
    int n_;
    std::vector<FactorialEffect> interest_;
    std::vector<FactorialEffect> nuisance_;
    int group_size_;
};

std::vector<FactorialEffect> main_effects(int n);
std::vector<FactorialEffect> two_factor_interactions(int n);

}  // namespace chogen
