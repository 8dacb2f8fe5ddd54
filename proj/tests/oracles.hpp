#pragma once

// Independent reference computations used only by the tests. Nothing here calls
// into the library's contrast or optimality code paths.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "chogen/design.hpp"

namespace oracle {

using Rational = boost::rational<std::int64_t>;

inline int level(std::uint64_t bits, int n, int factor) { return static_cast<int>((bits >> (n - factor)) & 1U); }

// Contrast sign of treatment `bits` for an effect: product of (-1 if level 0, +1 if level 1).
inline int sign(std::uint64_t bits, int n, const std::vector<int>& factors) {
    int s = 1;
    for (int f : factors) s *= level(bits, n, f) == 1 ? 1 : -1;
    return s;
}

inline int effective(std::uint64_t bits, int n, const std::vector<int>& factors) {
    int total = 0;
    for (int f : factors) total += level(bits, n, f);
    const int r = static_cast<int>(factors.size());
    return ((r + 1 - total) % 2 + 2) % 2;
}

struct Dense {
    std::size_t size = 0;
    std::vector<std::int64_t> ints;
    Rational scale;

    std::int64_t at(std::size_t i, std::size_t j) const { return ints[i * size + j]; }
};

// Lambda* built literally from the M^(j1..jm) blocks over all 2^n treatments.
inline std::vector<std::int64_t> dense_lambda(const chogen::ChoiceDesign& d) {
    const std::size_t t = std::size_t{1} << d.factors();
    const auto m = static_cast<std::int64_t>(d.set_size());
    std::vector<std::int64_t> lambda(t * t, 0);
    for (const auto& s : d.sets()) {
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (std::size_t b = 0; b < s.size(); ++b) {
                const auto i = s[a].bits();
                const auto j = s[b].bits();
                lambda[i * t + j] += a == b ? m - 1 : -1;
            }
        }
    }
    return lambda;
}

// C* = B Lambda* B' with B built from level signs, all 2^n columns.
inline Dense dense_cstar(const chogen::ChoiceDesign& d, const std::vector<chogen::FactorialEffect>& effects) {
    const int n = d.factors();
    const std::size_t t = std::size_t{1} << n;
    const auto lambda = dense_lambda(d);
    const std::size_t q = effects.size();
    std::vector<std::vector<int>> b(q, std::vector<int>(t));
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t i = 0; i < t; ++i) b[k][i] = sign(i, n, effects[k].factors());
    }
    std::vector<std::int64_t> bl(q * t, 0);
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t i = 0; i < t; ++i) {
            if (b[k][i] == 0) continue;
            for (std::size_t j = 0; j < t; ++j) bl[k * t + j] += b[k][i] * lambda[i * t + j];
        }
    }
    Dense out;
    out.size = q;
    out.ints.assign(q * q, 0);
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t l = 0; l < q; ++l) {
            std::int64_t sum = 0;
            for (std::size_t j = 0; j < t; ++j) sum += bl[k * t + j] * b[l][j];
            out.ints[k * q + l] = sum;
        }
    }
    const auto m = static_cast<std::int64_t>(d.set_size());
    out.scale = Rational(1, static_cast<std::int64_t>(t) * static_cast<std::int64_t>(d.num_sets()) * m * m);
    return out;
}

struct Eta {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
};

// Walks every component pair and classifies it by its effective bits.
inline Eta brute_eta(const chogen::ChoiceDesign& d, const chogen::FactorialEffect& e1,
                     const chogen::FactorialEffect& e2) {
    const int n = d.factors();
    Eta out;
    for (const auto& s : d.sets()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const int xi = effective(s[i].bits(), n, e1.factors());
                const int yi = effective(s[i].bits(), n, e2.factors());
                const int xj = effective(s[j].bits(), n, e1.factors());
                const int yj = effective(s[j].bits(), n, e2.factors());
                const bool same_i = xi == yi;
                const bool same_j = xj == yj;
                if (xi == xj) continue;
                if (same_i && same_j) ++out.plus;
                if (!same_i && !same_j) ++out.minus;
            }
        }
    }
    return out;
}

inline chogen::ChoiceDesign random_design(std::mt19937_64& rng, int n, int m, int sets) {
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    std::vector<chogen::ChoiceSet> out;
    for (int p = 0; p < sets; ++p) {
        std::set<std::uint64_t> seen;
        std::vector<chogen::Treatment> options;
        while (static_cast<int>(options.size()) < m) {
            const auto bits = pick(rng);
            if (seen.insert(bits).second) options.emplace_back(n, bits);
        }
        out.emplace_back(std::move(options));
    }
    return chogen::ChoiceDesign(std::move(out));
}

// All nonempty subsets of {1..n} as effects.
inline std::vector<chogen::FactorialEffect> all_effects(int n) {
    std::vector<chogen::FactorialEffect> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> f;
        for (int k = 1; k <= n; ++k) {
            if (mask >> (k - 1) & 1U) f.push_back(k);
        }
        out.emplace_back(f);
    }
    return out;
}

inline chogen::ChoiceDesign parse_design(const std::vector<std::vector<const char*>>& rows) {
    std::vector<chogen::ChoiceSet> sets;
    for (const auto& row : rows) {
        std::vector<chogen::Treatment> options;
        for (const char* t : row) options.push_back(chogen::Treatment::from_string(t));
        sets.emplace_back(std::move(options));
    }
    return chogen::ChoiceDesign(std::move(sets));
}

}  // namespace oracle
