#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chogen/design.hpp"

namespace chogen {

enum class RecipeId {
    Theorem1Generator,  ///< Hadamard seed, complement and generator shifts (any m)
    SingleSet,          ///< one set: v Hadamard rows and their complements, m = 2v
    FoldoverPair,       ///< two sets: v Hadamard rows, then their complements, m = v
    Theorem2DirectAdd,  ///< recursive direct addition, m = v
    SpecAllM4,
    SpecAllM3,
    Spec2fM4,
    Spec2fM3,
    SpecGroupM4,
    SpecGroupM3,
};

const char* to_string(RecipeId id) noexcept;

/// Which interest set a specified-interaction construction targets.
enum class SpecifiedScope { AllOrdersOneFactor, TwoFactorOneFactor, Group };

/// Parameters of one construction, plus the model and N it is claimed to attain.
struct ConstructionRecipe {
    RecipeId id = RecipeId::Theorem1Generator;
    int n = 0;
    int m = 0;
    /// Hadamard order of the seed.
    int order = 0;
    /// Generator count (generator construction) or recursion/Sylvester exponent.
    int alpha = 0;
    std::vector<Generator> generators;
    int group_size = 0;
    /// Only the half design d (main-effects use), not {d, complement(d)}.
    bool half = false;
    /// 1-based seed columns; empty means the default selection.
    std::vector<int> columns;
    ModelKind claimed_model = ModelKind::MainEffects;
    std::size_t claimed_sets = 0;
    /// Parameters lie outside the range the construction is stated for.
    bool outside_stated_range = false;

    std::string describe() const;
};

struct Theorem1Options {
    /// Defaults to unit vectors e_1 ... e_alpha with alpha = ceil((m - 2) / 2).
    std::optional<std::vector<Generator>> generators;
    /// Defaults to the first n columns of the seed.
    std::vector<int> columns;
    std::optional<int> order;
};

/// Broader-model design: N = v for even m, {d, complement(d)} with N = 2v for odd m.
ChoiceDesign theorem1_design(int n, int m, const Theorem1Options& options = {});
/// The half design d = (A_1, ..., A_m), N = v; main effects only.
ChoiceDesign theorem1_half_design(int n, int m, const Theorem1Options& options = {});
/// Default generators for set size m.
std::vector<Generator> default_generators(int n, int m);
/// Throws BadGenerators for zero, all-ones, repeated, or complementary generators.
void validate_generators(int n, const std::vector<Generator>& generators);

/// One set of v seed rows followed by their complements (m = 2v). Default v is the
/// least Hadamard order >= n.
ChoiceDesign single_set_design(int n, std::optional<int> order = std::nullopt);

/// {(T_1..T_v), (complements)} from seed columns 2..n+1; requires n < v. Default v is
/// the least Hadamard order > n.
ChoiceDesign foldover_pair_design(int n, std::optional<int> order = std::nullopt);
/// First set of the foldover pair alone; main effects only.
ChoiceDesign foldover_half_design(int n, std::optional<int> order = std::nullopt);

/// Smallest alpha >= 1 with n <= 2^alpha (v - 1).
int theorem2_alpha(int n, int order);
/// Recursive direct-addition design truncated to n factors, then {d, complement(d)}.
/// Requires n >= order.
ChoiceDesign theorem2_design(int n, int order);
/// The truncated recursion output d alone, N = 2^alpha.
ChoiceDesign theorem2_half_design(int n, int order);

struct SpecifiedOptions {
    /// Group size r for the Group scope.
    int group_size = 0;
    /// Sylvester exponent for the all-orders and group scopes; defaults to the smallest
    /// alpha >= 2 with n <= 2^alpha. Larger values are accepted; alpha = 1 only for n = 2.
    std::optional<int> alpha;
    /// Hadamard order for the two-factor scope; defaults to the least order >= n.
    std::optional<int> order;
    std::vector<int> columns;
};

/// m = 4: (A_1, ~A_1, A_1 + g, ~A_1 + g); m = 3: {(A_1, ~A_1, A_1 + g), complement}.
ChoiceDesign specified_design(int n, int m, SpecifiedScope scope, const SpecifiedOptions& options = {});
int specified_alpha(int n);

/// A larger Sylvester seed for the all-orders scope when the default one cannot certify.
/// m = 4: least alpha with 3 * 2^alpha >= Q, columns 1..4 then 1 + 2^k.
/// m = 3: alpha = n - 1, columns 1 and 1 + 2^k, so factors 2..n get independent
/// effective columns.
struct SpecifiedSeed {
    int alpha = 0;
    std::vector<int> columns;
};
SpecifiedSeed widened_specified_seed(int n, int m);

/// Builds the design a recipe describes.
ChoiceDesign realize(const ConstructionRecipe& recipe);

}  // namespace chogen
