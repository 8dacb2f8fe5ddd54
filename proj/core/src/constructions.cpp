#include "chogen/constructions.hpp"

#include <algorithm>
#include <set>

#include "chogen/hadamard.hpp"

namespace chogen {

const char* to_string(RecipeId id) noexcept {
    switch (id) {
    case RecipeId::Theorem1Generator: return "T1-generator";
    case RecipeId::SingleSet: return "single-set";
    case RecipeId::FoldoverPair: return "foldover-pair";
    case RecipeId::Theorem2DirectAdd: return "T2-direct-add";
    case RecipeId::SpecAllM4: return "spec-all-m4";
    case RecipeId::SpecAllM3: return "spec-all-m3";
    case RecipeId::Spec2fM4: return "spec-2f-m4";
    case RecipeId::Spec2fM3: return "spec-2f-m3";
    case RecipeId::SpecGroupM4: return "spec-group-m4";
    case RecipeId::SpecGroupM3: return "spec-group-m3";
    }
    return "unknown";
}

std::string ConstructionRecipe::describe() const {
    std::string out = to_string(id);
    if (half) out += "/half";
    out += "(n=" + std::to_string(n) + ",m=" + std::to_string(m);
    if (order > 0) out += ",v=" + std::to_string(order);
    if (alpha > 0) out += ",alpha=" + std::to_string(alpha);
    if (group_size > 0) out += ",r=" + std::to_string(group_size);
    if (!columns.empty()) {
        out += ",cols=";
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? ":" : "") + std::to_string(columns[i]);
    }
    if (!generators.empty()) {
        out += ",g=";
        for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? "," : "") + generators[i].to_string();
    }
    return out + ")";
}

namespace {

ComponentMatrix seed_rows(const HadamardMatrix& h, int n, const std::vector<int>& columns) {
    const auto seed = zero_one(h);
    if (columns.empty()) return seed.rows(1, n);
    if (static_cast<int>(columns.size()) != n) {
        throw Error(ErrorKind::RangeError, "expected " + std::to_string(n) + " seed columns, got " +
                                               std::to_string(columns.size()));
    }
    std::set<int> unique(columns.begin(), columns.end());
    if (unique.size() != columns.size()) throw Error(ErrorKind::RangeError, "seed columns repeat");
    return seed.rows(columns);
}

ChoiceDesign design_from_components(const std::vector<ComponentMatrix>& components, ErrorKind duplicate_as) {
    try {
        return ChoiceDesign::from_components(components);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DuplicateOption) throw Error(duplicate_as, e.what());
        throw;
    }
}

ChoiceDesign theorem1_half(int n, int m, const Theorem1Options& options) {
    if (m < 2) throw Error(ErrorKind::RangeError, "set size must be at least 2");
    const int order = options.order.value_or(least_hadamard_order(n));
    if (n > order) {
        throw Error(ErrorKind::RangeError, std::to_string(n) + " factors exceed Hadamard order " + std::to_string(order));
    }
    const auto generators = options.generators.value_or(default_generators(n, m));
    validate_generators(n, generators);
    const auto alpha = static_cast<int>(generators.size());
    if (m > 2 * alpha + 2) {
        throw Error(ErrorKind::RangeError, "m=" + std::to_string(m) + " needs at least " +
                                               std::to_string((m - 1) / 2) + " generators");
    }
    const auto a1 = seed_rows(hadamard_of_order(order), n, options.columns);
    const auto a2 = complement(a1);
    std::vector<ComponentMatrix> components{a1, a2};
    for (int u = 0; static_cast<int>(components.size()) < m; ++u) {
        components.push_back(add_generator(a1, generators[static_cast<std::size_t>(u)]));
        if (static_cast<int>(components.size()) < m) components.push_back(add_generator(a2, generators[static_cast<std::size_t>(u)]));
    }
    return design_from_components(components, ErrorKind::BadGenerators);
}

}  // namespace

std::vector<Generator> default_generators(int n, int m) {
    const int alpha = std::max(0, (m - 1) / 2);
    if (alpha > n) {
        throw Error(ErrorKind::BadGenerators, "m=" + std::to_string(m) + " needs " + std::to_string(alpha) +
                                                  " unit generators but only " + std::to_string(n) + " factors exist");
    }
    std::vector<Generator> out;
    for (int u = 1; u <= alpha; ++u) out.push_back(Generator::unit(n, u));
    return out;
}

void validate_generators(int n, const std::vector<Generator>& generators) {
    std::set<Generator> seen;
    for (const auto& g : generators) {
        if (g.width() != n) {
            throw Error(ErrorKind::BadGenerators, "generator " + g.to_string() + " has width " +
                                                      std::to_string(g.width()) + ", expected " + std::to_string(n));
        }
        if (g.is_zero()) throw Error(ErrorKind::BadGenerators, "zero generator " + g.to_string());
        if (g.is_all_ones()) throw Error(ErrorKind::BadGenerators, "all-ones generator " + g.to_string());
        if (seen.count(g)) throw Error(ErrorKind::BadGenerators, "repeated generator " + g.to_string());
        if (seen.count(g.complement())) {
            throw Error(ErrorKind::BadGenerators, "generator " + g.to_string() + " and its complement both present");
        }
        seen.insert(g);
    }
}

ChoiceDesign theorem1_design(int n, int m, const Theorem1Options& options) {
    auto d = theorem1_half(n, m, options);
    if (m % 2 == 0) return d;
    return stack(d, complement(d));
}

ChoiceDesign theorem1_half_design(int n, int m, const Theorem1Options& options) { return theorem1_half(n, m, options); }

ChoiceDesign single_set_design(int n, std::optional<int> order) {
    const int v = order.value_or(least_hadamard_order(n));
    if (n > v) throw Error(ErrorKind::RangeError, std::to_string(n) + " factors exceed Hadamard order " + std::to_string(v));
    const auto seed = zero_one(hadamard_of_order(v));
    const auto rows = n <= v - 1 ? seed.rows(2, n) : seed.rows(1, n);
    std::vector<Treatment> options(rows.begin(), rows.end());
    for (const auto& t : rows) options.push_back(t.complement());
    return ChoiceDesign({ChoiceSet(std::move(options))});
}

ChoiceDesign foldover_pair_design(int n, std::optional<int> order) {
    const int v = order.value_or(least_hadamard_order(n + 1));
    if (n >= v) {
        throw Error(ErrorKind::RangeError, "foldover pair needs n < v, got n=" + std::to_string(n) + ", v=" + std::to_string(v));
    }
    const auto rows = zero_one(hadamard_of_order(v)).rows(2, n);
    ChoiceSet first(rows);
    return ChoiceDesign({first, first.complement()});
}

ChoiceDesign foldover_half_design(int n, std::optional<int> order) {
    const auto pair = foldover_pair_design(n, order);
    return ChoiceDesign({pair[0]});
}

int theorem2_alpha(int n, int order) {
    if (order < 2) throw Error(ErrorKind::RangeError, "direct-addition seed needs order >= 2");
    int alpha = 1;
    while (n > (1 << alpha) * (order - 1)) {
        ++alpha;
        if ((1 << alpha) * (order - 1) > 4 * kMaxFactors) break;
    }
    if ((1 << alpha) * (order - 1) > kMaxFactors) {
        throw Error(ErrorKind::RangeError, "direct-addition recursion for n=" + std::to_string(n) + " exceeds " +
                                               std::to_string(kMaxFactors) + " factors");
    }
    return alpha;
}

ChoiceDesign theorem2_half_design(int n, int order) {
    // Below n = v the truncated recursion repeats options; the foldover pair covers it.
    if (n < order) {
        throw Error(ErrorKind::RangeError, "direct addition needs n >= v, got n=" + std::to_string(n) +
                                               ", v=" + std::to_string(order));
    }
    const int alpha = theorem2_alpha(n, order);
    const auto rows = zero_one(hadamard_of_order(order)).rows(2, order - 1);
    ChoiceDesign d({ChoiceSet(rows)});
    for (int level = 0; level < alpha; ++level) {
        d = stack(direct_add(d, d), direct_add(d, complement(d)));
    }
    return truncate_factors(d, n);
}

ChoiceDesign theorem2_design(int n, int order) {
    auto d = theorem2_half_design(n, order);
    return stack(d, complement(d));
}

int specified_alpha(int n) {
    if (n < 2) throw Error(ErrorKind::RangeError, "specified-interaction designs need n >= 2");
    int alpha = 2;
    while ((1 << alpha) < n) ++alpha;
    return alpha;
}

ChoiceDesign specified_design(int n, int m, SpecifiedScope scope, const SpecifiedOptions& options) {
    if (m != 3 && m != 4) throw Error(ErrorKind::RangeError, "specified designs exist for m = 3 or 4, got " + std::to_string(m));
    if (n < 2) throw Error(ErrorKind::RangeError, "specified-interaction designs need n >= 2");

    HadamardMatrix h = sylvester(0);
    if (scope == SpecifiedScope::TwoFactorOneFactor) {
        const int v = options.order.value_or(least_hadamard_order(n));
        if (n > v) throw Error(ErrorKind::RangeError, std::to_string(n) + " factors exceed Hadamard order " + std::to_string(v));
        h = hadamard_of_order(v);
    } else {
        const int minimal = specified_alpha(n);
        const int alpha = options.alpha.value_or(minimal);
        const bool two_factor_extension = n == 2 && alpha == 1;
        if ((alpha < minimal && !two_factor_extension) || alpha > 8) {
            throw Error(ErrorKind::RangeError, "alpha=" + std::to_string(alpha) + " does not admit n=" + std::to_string(n));
        }
        if ((1 << alpha) > max_hadamard_order()) {
            throw Error(ErrorKind::Unsupported, "Sylvester order " + std::to_string(1 << alpha) + " exceeds the cap " +
                                                    std::to_string(max_hadamard_order()));
        }
        h = sylvester(alpha);
    }
    if (!options.columns.empty() &&
        std::find(options.columns.begin(), options.columns.end(), 1) == options.columns.end()) {
        throw Error(ErrorKind::RangeError, "seed columns must include column 1");
    }

    Generator g = Generator::unit(n, 1);
    if (scope == SpecifiedScope::Group) {
        const int r = options.group_size;
        if (r < 1 || r > n - 1) {
            throw Error(ErrorKind::BadGroup, "group size " + std::to_string(r) + " outside 1.." + std::to_string(n - 1));
        }
        g = Generator::leading_ones(n, r);
    }

    const auto a1 = seed_rows(h, n, options.columns);
    const auto a2 = complement(a1);
    std::vector<ComponentMatrix> components{a1, a2, add_generator(a1, g)};
    if (m == 4) {
        components.push_back(add_generator(a2, g));
        return design_from_components(components, ErrorKind::DuplicateOption);
    }
    const auto d = design_from_components(components, ErrorKind::DuplicateOption);
    return stack(d, complement(d));
}

SpecifiedSeed widened_specified_seed(int n, int m) {
    if (m != 3 && m != 4) throw Error(ErrorKind::RangeError, "specified designs exist for m = 3 or 4, got " + std::to_string(m));
    if (n < 2 || n > 31) throw Error(ErrorKind::RangeError, "factor count outside 2..31");
    SpecifiedSeed seed;
    if (m == 3) {
        seed.alpha = std::max(2, n - 1);
        seed.columns.push_back(1);
        for (int k = 0; static_cast<int>(seed.columns.size()) < n; ++k) seed.columns.push_back(1 + (1 << k));
        return seed;
    }
    const std::int64_t q = (n - 1) + (std::int64_t{1} << (n - 1));
    seed.alpha = specified_alpha(n);
    while (3 * (std::int64_t{1} << seed.alpha) < q) ++seed.alpha;
    seed.columns = {1, 2, 3, 4};
    for (int k = 2; static_cast<int>(seed.columns.size()) < n; ++k) seed.columns.push_back(1 + (1 << k));
    seed.columns.resize(static_cast<std::size_t>(n));
    return seed;
}

ChoiceDesign realize(const ConstructionRecipe& recipe) {
    const auto optional_order = recipe.order > 0 ? std::optional<int>(recipe.order) : std::nullopt;
    auto check_m = [&](const ChoiceDesign& d) {
        if (static_cast<int>(d.set_size()) != recipe.m) {
            throw Error(ErrorKind::ShapeMismatch, recipe.describe() + " produced set size " + std::to_string(d.set_size()));
        }
        return d;
    };
    switch (recipe.id) {
    case RecipeId::Theorem1Generator: {
        Theorem1Options options;
        if (!recipe.generators.empty()) options.generators = recipe.generators;
        options.columns = recipe.columns;
        options.order = optional_order;
        return recipe.half ? theorem1_half_design(recipe.n, recipe.m, options)
                           : theorem1_design(recipe.n, recipe.m, options);
    }
    case RecipeId::SingleSet: return check_m(single_set_design(recipe.n, optional_order));
    case RecipeId::FoldoverPair:
        return check_m(recipe.half ? foldover_half_design(recipe.n, optional_order)
                                   : foldover_pair_design(recipe.n, optional_order));
    case RecipeId::Theorem2DirectAdd: {
        const int v = recipe.order > 0 ? recipe.order : recipe.m;
        return check_m(recipe.half ? theorem2_half_design(recipe.n, v) : theorem2_design(recipe.n, v));
    }
    case RecipeId::SpecAllM4:
    case RecipeId::SpecAllM3:
    case RecipeId::SpecGroupM4:
    case RecipeId::SpecGroupM3: {
        SpecifiedOptions options;
        if (recipe.alpha > 0) options.alpha = recipe.alpha;
        options.group_size = recipe.group_size;
        options.columns = recipe.columns;
        const bool group = recipe.id == RecipeId::SpecGroupM4 || recipe.id == RecipeId::SpecGroupM3;
        return specified_design(recipe.n, recipe.m, group ? SpecifiedScope::Group : SpecifiedScope::AllOrdersOneFactor,
                                options);
    }
    case RecipeId::Spec2fM4:
    case RecipeId::Spec2fM3: {
        SpecifiedOptions options;
        options.order = optional_order;
        options.columns = recipe.columns;
        return specified_design(recipe.n, recipe.m, SpecifiedScope::TwoFactorOneFactor, options);
    }
    }
    throw Error(ErrorKind::Unsupported, "unknown recipe");
}

}  // namespace chogen
