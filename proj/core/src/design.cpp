#include "chogen/design.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>

namespace chogen {

namespace {

void check_width(int n) {
    if (n < 1 || n > kMaxFactors) {
        throw Error(ErrorKind::RangeError, "factor count " + std::to_string(n) + " outside 1.." +
                                               std::to_string(kMaxFactors));
    }
}

}  // namespace

Treatment::Treatment(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    check_width(n);
    if ((bits & ~width_mask(n)) != 0) {
        throw Error(ErrorKind::WidthMismatch, "bits exceed treatment width " + std::to_string(n));
    }
}

Treatment Treatment::from_string(std::string_view text) {
    if (text.empty() || static_cast<int>(text.size()) > kMaxFactors) {
        throw Error(ErrorKind::Parse, "bad treatment length in '" + std::string(text) + "'");
    }
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::Parse, "non-binary level in '" + std::string(text) + "'");
        }
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Treatment(static_cast<int>(text.size()), bits);
}

int Treatment::level(int factor) const {
    if (factor < 1 || factor > n_) {
        throw Error(ErrorKind::EffectOutOfRange, "factor " + std::to_string(factor) + " of " +
                                                     std::to_string(n_));
    }
    return static_cast<int>((bits_ >> (n_ - factor)) & 1U);
}

std::string Treatment::to_string() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int r = 0; r < n_; ++r) {
        if ((bits_ >> (n_ - 1 - r)) & 1U) out[static_cast<std::size_t>(r)] = '1';
    }
    return out;
}

Generator Generator::unit(int n, int factor) {
    if (factor < 1 || factor > n) {
        throw Error(ErrorKind::RangeError, "unit generator position " + std::to_string(factor));
    }
    return Generator(Treatment(n, std::uint64_t{1} << (n - factor)));
}

Generator Generator::leading_ones(int n, int ones) {
    if (ones < 0 || ones > n) {
        throw Error(ErrorKind::RangeError, "leading-ones count " + std::to_string(ones));
    }
    return Generator(Treatment(n, width_mask(n) & ~width_mask(n - ones)));
}

ChoiceSet::ChoiceSet(std::vector<Treatment> options) : options_(std::move(options)) {
    if (options_.size() < 2) {
        throw Error(ErrorKind::RangeError, "a choice set needs at least two options");
    }
    const int n = options_.front().width();
    for (const auto& t : options_) {
        if (t.width() != n) throw Error(ErrorKind::MixedWidth, "options of different widths in one set");
    }
    std::vector<Treatment> seen(options_);
    std::sort(seen.begin(), seen.end());
    auto dup = std::adjacent_find(seen.begin(), seen.end());
    if (dup != seen.end()) {
        throw Error(ErrorKind::DuplicateOption, "option " + dup->to_string() + " repeated in a set");
    }
}

ChoiceSet ChoiceSet::complement() const {
    std::vector<Treatment> out;
    out.reserve(options_.size());
    for (const auto& t : options_) out.push_back(t.complement());
    return ChoiceSet(std::move(out));
}

ChoiceSet ChoiceSet::sorted() const {
    std::vector<Treatment> out(options_);
    std::sort(out.begin(), out.end());
    return ChoiceSet(std::move(out));
}

ChoiceSet make_choice_set(std::vector<Treatment> options) { return ChoiceSet(std::move(options)); }

ChoiceSet make_choice_set(std::initializer_list<std::string_view> bitstrings) {
    std::vector<Treatment> options;
    for (auto s : bitstrings) options.push_back(Treatment::from_string(s));
    return ChoiceSet(std::move(options));
}

ChoiceDesign::ChoiceDesign(std::vector<ChoiceSet> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) throw Error(ErrorKind::RangeError, "a design needs at least one choice set");
    n_ = sets_.front().width();
    m_ = sets_.front().size();
    for (const auto& s : sets_) {
        if (s.width() != n_) throw Error(ErrorKind::MixedWidth, "choice sets of different widths");
        if (s.size() != m_) throw Error(ErrorKind::ShapeMismatch, "choice sets of different sizes");
    }
}

ChoiceDesign ChoiceDesign::from_components(std::span<const ComponentMatrix> components) {
    if (components.size() < 2) throw Error(ErrorKind::RangeError, "need at least two components");
    const std::size_t rows = components.front().size();
    for (const auto& a : components) {
        if (a.size() != rows) throw Error(ErrorKind::ShapeMismatch, "components with different row counts");
    }
    std::vector<ChoiceSet> sets;
    sets.reserve(rows);
    for (std::size_t p = 0; p < rows; ++p) {
        std::vector<Treatment> options;
        options.reserve(components.size());
        for (const auto& a : components) options.push_back(a[p]);
        sets.emplace_back(std::move(options));
    }
    return ChoiceDesign(std::move(sets));
}

std::vector<ComponentMatrix> ChoiceDesign::components() const {
    std::vector<ComponentMatrix> out(m_);
    for (auto& a : out) a.reserve(sets_.size());
    for (const auto& s : sets_) {
        for (std::size_t i = 0; i < m_; ++i) out[i].push_back(s[i]);
    }
    return out;
}

std::int64_t ChoiceDesign::component_pairs() const noexcept {
    const auto m = static_cast<std::int64_t>(m_);
    return static_cast<std::int64_t>(sets_.size()) * m * (m - 1) / 2;
}

ChoiceDesign ChoiceDesign::canonical() const {
    std::vector<ChoiceSet> out;
    out.reserve(sets_.size());
    for (const auto& s : sets_) out.push_back(s.sorted());
    std::sort(out.begin(), out.end());
    return ChoiceDesign(std::move(out));
}

Treatment complement(const Treatment& t) { return t.complement(); }
ChoiceSet complement(const ChoiceSet& s) { return s.complement(); }

ChoiceDesign complement(const ChoiceDesign& d) {
    std::vector<ChoiceSet> out;
    out.reserve(d.num_sets());
    for (const auto& s : d.sets()) out.push_back(s.complement());
    return ChoiceDesign(std::move(out));
}

ComponentMatrix complement(const ComponentMatrix& a) {
    ComponentMatrix out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back(t.complement());
    return out;
}

ComponentMatrix add_generator(const ComponentMatrix& a, const Generator& g) {
    ComponentMatrix out;
    out.reserve(a.size());
    for (const auto& t : a) {
        if (t.width() != g.width()) {
            throw Error(ErrorKind::WidthMismatch, "generator width " + std::to_string(g.width()) +
                                                      " vs row width " + std::to_string(t.width()));
        }
        out.emplace_back(t.width(), t.bits() ^ g.bits().bits());
    }
    return out;
}

ChoiceDesign direct_add(const ChoiceDesign& d1, const ChoiceDesign& d2) {
    if (d1.num_sets() != d2.num_sets() || d1.set_size() != d2.set_size()) {
        throw Error(ErrorKind::ShapeMismatch, "direct addition needs equal N and m");
    }
    const int n2 = d2.factors();
    const int n = d1.factors() + n2;
    if (n > kMaxFactors) throw Error(ErrorKind::RangeError, "direct sum exceeds the factor limit");
    std::vector<ChoiceSet> sets;
    sets.reserve(d1.num_sets());
    for (std::size_t p = 0; p < d1.num_sets(); ++p) {
        std::vector<Treatment> options;
        options.reserve(d1.set_size());
        for (std::size_t i = 0; i < d1.set_size(); ++i) {
            options.emplace_back(n, (d1[p][i].bits() << n2) | d2[p][i].bits());
        }
        sets.emplace_back(std::move(options));
    }
    return ChoiceDesign(std::move(sets));
}

ChoiceDesign truncate_factors(const ChoiceDesign& d, int n) {
    if (n < 1 || n > d.factors()) {
        throw Error(ErrorKind::RangeError, "cannot truncate " + std::to_string(d.factors()) +
                                               " factors to " + std::to_string(n));
    }
    const int drop = d.factors() - n;
    std::vector<ChoiceSet> sets;
    sets.reserve(d.num_sets());
    for (const auto& s : d.sets()) {
        std::vector<Treatment> options;
        options.reserve(s.size());
        for (const auto& t : s.options()) options.emplace_back(n, t.bits() >> drop);
        sets.emplace_back(std::move(options));
    }
    return ChoiceDesign(std::move(sets));
}

ChoiceDesign stack(const ChoiceDesign& first, const ChoiceDesign& second) {
    std::vector<ChoiceSet> sets(first.sets().begin(), first.sets().end());
    sets.insert(sets.end(), second.sets().begin(), second.sets().end());
    return ChoiceDesign(std::move(sets));
}

FactorialEffect::FactorialEffect(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorKind::EffectOutOfRange, "empty factorial effect");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 1 || factors_[i] > kMaxFactors) {
            throw Error(ErrorKind::EffectOutOfRange, "factor index " + std::to_string(factors_[i]));
        }
        if (i > 0 && factors_[i] <= factors_[i - 1]) {
            throw Error(ErrorKind::EffectOutOfRange, "effect factors must be strictly increasing");
        }
    }
}

std::uint64_t FactorialEffect::mask(int n) const {
    if (!fits(n)) {
        throw Error(ErrorKind::EffectOutOfRange, name() + " does not fit in " + std::to_string(n) + " factors");
    }
    std::uint64_t out = 0;
    for (int h : factors_) out |= std::uint64_t{1} << (n - h);
    return out;
}

std::string FactorialEffect::name() const {
    const bool wide = highest_factor() > 9;
    std::string out = "F";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (wide && i > 0) out += '.';
        out += std::to_string(factors_[i]);
    }
    return out;
}

FactorialEffect FactorialEffect::parse(std::string_view name) {
    if (name.size() < 2 || (name[0] != 'F' && name[0] != 'f')) {
        throw Error(ErrorKind::Parse, "effect name must look like F13 or F1.10: '" + std::string(name) + "'");
    }
    std::string_view body = name.substr(1);
    std::vector<int> factors;
    if (body.find('.') == std::string_view::npos) {
        for (char c : body) {
            if (c < '1' || c > '9') throw Error(ErrorKind::Parse, "bad effect '" + std::string(name) + "'");
            factors.push_back(c - '0');
        }
    } else {
        while (!body.empty()) {
            auto dot = body.find('.');
            auto token = body.substr(0, dot);
            int value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw Error(ErrorKind::Parse, "bad effect '" + std::string(name) + "'");
            }
            factors.push_back(value);
            body = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        }
    }
    return FactorialEffect(std::move(factors));
}

std::strong_ordering FactorialEffect::operator<=>(const FactorialEffect& other) const {
    if (auto c = order() <=> other.order(); c != 0) return c;
    return factors_ <=> other.factors_;
}

const char* to_string(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::MainEffects: return "main-effects";
    case ModelKind::BroaderMainEffects: return "broader";
    case ModelKind::SpecifiedOneFactor: return "spec-all";
    case ModelKind::SpecifiedTwoFactorOneFactor: return "spec-2f";
    case ModelKind::SpecifiedGroup: return "spec-group";
    case ModelKind::Custom: return "custom";
    }
    return "unknown";
}

std::vector<FactorialEffect> main_effects(int n) {
    std::vector<FactorialEffect> out;
    for (int h = 1; h <= n; ++h) out.push_back(FactorialEffect::main(h));
    return out;
}

std::vector<FactorialEffect> two_factor_interactions(int n) {
    std::vector<FactorialEffect> out;
    for (int h = 1; h <= n; ++h) {
        for (int k = h + 1; k <= n; ++k) out.push_back(FactorialEffect({h, k}));
    }
    return out;
}

namespace {

// Every nonempty subset of `pool`, each prefixed by `head`, ordered by size then lexicographically.
std::vector<FactorialEffect> with_subsets(int head, const std::vector<int>& pool) {
    std::vector<FactorialEffect> out;
    const std::size_t k = pool.size();
    if (k >= 63) throw Error(ErrorKind::RangeError, "too many factors to enumerate interactions");
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << k); ++subset) {
        std::vector<int> factors{head};
        for (std::size_t i = 0; i < k; ++i) {
            if ((subset >> i) & 1U) factors.push_back(pool[i]);
        }
        std::sort(factors.begin(), factors.end());
        out.emplace_back(std::move(factors));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ModelSpec::ModelSpec(ModelKind kind, int n, std::vector<FactorialEffect> interest,
                     std::vector<FactorialEffect> nuisance, int group_size)
    : kind_(kind), n_(n), interest_(std::move(interest)), nuisance_(std::move(nuisance)),
      group_size_(group_size) {
    check_width(n);
    if (interest_.empty()) throw Error(ErrorKind::RangeError, "a model needs at least one effect of interest");
    std::set<FactorialEffect> seen;
    for (const auto& e : interest_) {
        if (!e.fits(n)) throw Error(ErrorKind::EffectOutOfRange, e.name() + " exceeds " + std::to_string(n) + " factors");
        if (!seen.insert(e).second) throw Error(ErrorKind::RangeError, "effect " + e.name() + " listed twice");
    }
    for (const auto& e : nuisance_) {
        if (!e.fits(n)) throw Error(ErrorKind::EffectOutOfRange, e.name() + " exceeds " + std::to_string(n) + " factors");
        if (!seen.insert(e).second) {
            throw Error(ErrorKind::RangeError, "effect " + e.name() + " is both of interest and nuisance");
        }
    }
}

ModelSpec ModelSpec::main_effects(int n) {
    check_width(n);
    return ModelSpec(ModelKind::MainEffects, n, chogen::main_effects(n), {});
}

ModelSpec ModelSpec::broader_main_effects(int n) {
    check_width(n);
    return ModelSpec(ModelKind::BroaderMainEffects, n, chogen::main_effects(n), two_factor_interactions(n));
}

ModelSpec ModelSpec::specified_one_factor(int n) {
    check_width(n);
    if (n < 2) throw Error(ErrorKind::RangeError, "a specified-factor model needs n >= 2");
    auto interest = chogen::main_effects(n);
    std::vector<int> rest;
    for (int h = 2; h <= n; ++h) rest.push_back(h);
    auto extra = with_subsets(1, rest);
    interest.insert(interest.end(), extra.begin(), extra.end());
    return ModelSpec(ModelKind::SpecifiedOneFactor, n, std::move(interest), {}, 1);
}

ModelSpec ModelSpec::specified_two_factor(int n) {
    check_width(n);
    if (n < 2) throw Error(ErrorKind::RangeError, "a specified-factor model needs n >= 2");
    auto interest = chogen::main_effects(n);
    for (int h = 2; h <= n; ++h) interest.push_back(FactorialEffect({1, h}));
    return ModelSpec(ModelKind::SpecifiedTwoFactorOneFactor, n, std::move(interest), {}, 1);
}

ModelSpec ModelSpec::specified_group(int n, int r) {
    check_width(n);
    if (r < 1 || r > n - 1) {
        throw Error(ErrorKind::BadGroup, "group size " + std::to_string(r) + " outside 1.." + std::to_string(n - 1));
    }
    auto interest = chogen::main_effects(n);
    std::vector<int> second;
    for (int k = r + 1; k <= n; ++k) second.push_back(k);
    std::vector<FactorialEffect> extra;
    for (int h = 1; h <= r; ++h) {
        auto part = with_subsets(h, second);
        extra.insert(extra.end(), part.begin(), part.end());
    }
    std::sort(extra.begin(), extra.end());
    interest.insert(interest.end(), extra.begin(), extra.end());
    return ModelSpec(ModelKind::SpecifiedGroup, n, std::move(interest), {}, r);
}

ModelSpec ModelSpec::custom(int n, std::vector<FactorialEffect> interest, std::vector<FactorialEffect> nuisance) {
    return ModelSpec(ModelKind::Custom, n, std::move(interest), std::move(nuisance));
}

std::string ModelSpec::name() const {
    std::string out = to_string(kind_);
    if (kind_ == ModelKind::SpecifiedGroup) out += "(r=" + std::to_string(group_size_) + ")";
    return out + " n=" + std::to_string(n_) + " Q=" + std::to_string(q());
}

}  // namespace chogen
