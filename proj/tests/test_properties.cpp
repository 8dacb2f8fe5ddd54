// Randomized and exhaustive invariants. Seeds are fixed so failures reproduce.
#include <doctest.h>

#include <random>

#include "chogen/constructions.hpp"
#include "chogen/contrast.hpp"
#include "chogen/hadamard.hpp"
#include "chogen/optimality.hpp"
#include "oracles.hpp"

using namespace chogen;

TEST_CASE("contrast sign is 2 i* - 1 for every treatment and effect, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& e : oracle::all_effects(n)) {
            const auto v = contrast_vector(e, n);
            REQUIRE(v.size() == (std::size_t{1} << n));
            for (std::uint64_t t = 0; t < v.size(); ++t) {
                const int star = effective_position(Treatment(n, t), e);
                CHECK(v[t] == 2 * star - 1);
                CHECK(star == oracle::effective(t, n, e.factors()));
            }
            CHECK(v.sum() == 0);
        }
    }
}

TEST_CASE("lambda star is symmetric with zero row sums") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 5;
        const int m = 2 + trial % std::min(3, (1 << n) - 1);
        const auto d = oracle::random_design(rng, n, m, 1 + trial % 6);
        const auto l = lambda_star(d);
        CHECK(l.is_symmetric());
        for (std::size_t i = 0; i < l.size(); ++i) {
            std::int64_t row = 0;
            for (std::size_t j = 0; j < l.size(); ++j) row += l.at(i, j);
            CHECK(row == 0);
        }
        const auto dense = oracle::dense_lambda(d);
        CHECK(std::equal(dense.begin(), dense.end(), l.ints().begin(), l.ints().end()));
    }
}

TEST_CASE("complement and generator shifts are involutions") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const auto d = oracle::random_design(rng, n, 2 + trial % 3, 1 + trial % 5);
        CHECK(complement(complement(d)) == d);
        const Generator g(Treatment(n, rng() & width_mask(n)));
        for (const auto& a : d.components()) CHECK(add_generator(add_generator(a, g), g) == a);
    }
}

TEST_CASE("supported Hadamard orders up to 32 satisfy H H' = v I") {
    for (int order = 1; order <= 32; ++order) {
        if (!hadamard_order_supported(order)) continue;
        const auto h = hadamard_of_order(order);
        for (int i = 0; i < order; ++i) {
            for (int j = 0; j < order; ++j) {
                int dot = 0;
                for (int k = 0; k < order; ++k) dot += h.at(i, k) * h.at(j, k);
                CHECK(dot == (i == j ? order : 0));
            }
        }
    }
}

TEST_CASE("C* entries are 4 (eta+ - eta-) off the diagonal and sum 4 n_p (m - n_p) on it") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + trial % 4;
        const int m = 2 + trial % 4;
        const auto d = oracle::random_design(rng, n, m, 1 + trial % 6);
        const auto effects = oracle::all_effects(n);
        const auto c = cstar_matrix(d, effects);
        for (std::size_t i = 0; i < effects.size(); ++i) {
            std::int64_t diag = 0;
            for (int np : np_counts(d, effects[i])) diag += 4 * np * (m - np);
            CHECK(c.at(i, i) == diag);
            for (std::size_t j = i + 1; j < effects.size(); ++j) {
                const auto eta = oracle::brute_eta(d, effects[i], effects[j]);
                CHECK(c.at(i, j) == 4 * (eta.plus - eta.minus));
                CHECK(c.at(j, i) == c.at(i, j));
            }
        }
    }
}

TEST_CASE("matrix-product C* equals the pairwise oracle and the dense reference") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + trial % 4;
        const int m = 2 + trial % std::min(3, (1 << n) - 1);
        const auto d = oracle::random_design(rng, n, m, 1 + trial % 6);
        const auto effects = oracle::all_effects(n);
        const auto c = cstar_matrix(d, effects);
        CHECK(c == oracle_cstar(d, effects));
        CHECK(c == detail::cstar_by_sets(d, effects));
        const auto dense = oracle::dense_cstar(d, effects);
        CHECK(std::equal(dense.ints.begin(), dense.ints.end(), c.ints().begin(), c.ints().end()));
        CHECK(dense.scale == c.scale());
    }
}

TEST_CASE("trace never exceeds the bound") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 4;
        const int m = 2 + trial % std::min(5, (1 << n) - 1);
        const auto d = oracle::random_design(rng, n, m, 1 + trial % 4);
        for (const auto& model : {ModelSpec::main_effects(n), ModelSpec::specified_one_factor(n)}) {
            const auto c = cstar_matrix(d, model.interest());
            CHECK(c.trace() <= max_trace(static_cast<int>(model.q()), n, m));
        }
    }
}

TEST_CASE("broader constructions have a zero cross block") {
    std::vector<ChoiceDesign> designs;
    for (int n = 2; n <= 9; ++n) {
        for (int m = 2; m <= 8; ++m) {
            if ((m - 1) / 2 < n) designs.push_back(theorem1_design(n, m));
        }
        designs.push_back(single_set_design(n));
        designs.push_back(foldover_pair_design(n));
        for (int v : {4, 8}) {
            if (n >= v) designs.push_back(theorem2_design(n, v));
        }
    }
    for (const auto& d : designs) {
        const auto info = info_matrix(d, ModelSpec::broader_main_effects(d.factors()));
        CHECK(info.cross_block_zero);
        REQUIRE(info.exact);
        CHECK(*info.exact == info.interest_only);
    }
}

TEST_CASE("adjusting for nuisance effects never raises the trace") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + trial % 3;
        const auto d = oracle::random_design(rng, n, 2 + trial % 3, 1 + trial % 5);
        const auto r = verify(d, ModelSpec::broader_main_effects(n));
        REQUIRE(r.adjusted_trace);
        CHECK(*r.adjusted_trace <= boost::rational_cast<double>(r.trace) + 1e-9);
    }
}
