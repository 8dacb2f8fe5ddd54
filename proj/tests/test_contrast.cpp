#include <doctest.h>

#include <random>

#include "chogen/constructions.hpp"
#include "chogen/contrast.hpp"
#include "chogen/optimality.hpp"
#include "oracles.hpp"

using namespace chogen;

TEST_CASE("effective positions") {
    CHECK(effective_position(Treatment::from_string("1010"), FactorialEffect{1}) == 1);
    CHECK(effective_position(Treatment::from_string("01"), FactorialEffect{1, 2}) == 0);
    CHECK(effective_position(Treatment::from_string("11"), FactorialEffect{1, 2}) == 1);
    CHECK_THROWS_AS(effective_position(Treatment::from_string("11"), FactorialEffect{1, 3}), Error);

    const auto s = make_choice_set({"00", "11", "01", "10"});
    CHECK(effective_choice_set(s, FactorialEffect{1}) == std::vector<int>{0, 1, 0, 1});
    CHECK(effective_choice_set(s, FactorialEffect{1, 2}) == std::vector<int>{1, 1, 0, 0});
}

TEST_CASE("contrast vectors") {
    const auto main1 = contrast_vector(FactorialEffect{1}, 2);
    CHECK(main1.entries == std::vector<std::int8_t>{-1, -1, 1, 1});
    const auto inter = contrast_vector(FactorialEffect{1, 2}, 2);
    CHECK(inter.entries == std::vector<std::int8_t>{1, -1, -1, 1});
    CHECK(inter.sum() == 0);
}

TEST_CASE("pair contributions") {
    const FactorialEffect f1{1};
    const FactorialEffect f2{2};
    const auto t = [](const char* s) { return Treatment::from_string(s); };
    CHECK(pair_contribution(f1, f2, t("00"), t("11")) == 4);
    CHECK(pair_contribution(f1, f2, t("01"), t("10")) == -4);
    CHECK(pair_contribution(f1, f2, t("00"), t("01")) == 0);
    CHECK_THROWS_AS(pair_contribution(f1, f2, t("01"), t("01")), Error);
}

TEST_CASE("lambda star") {
    const auto single = oracle::parse_design({{"0", "1"}});
    const auto l = lambda_star(single);
    CHECK(l.size() == 2);
    CHECK(l.ints().size() == 4);
    CHECK(l.at(0, 0) == 1);
    CHECK(l.at(0, 1) == -1);
    CHECK(l.at(1, 0) == -1);
    CHECK(l.at(1, 1) == 1);
    CHECK(l.scale() == Rational(1, 4));

    const auto d1 = single_set_design(4);
    const auto big = lambda_star(d1);
    for (std::size_t i = 0; i < 16; ++i) {
        bool member = false;
        for (const auto& t : d1[0].options()) member = member || t.index() == i;
        CHECK(big.at(i, i) == (member ? 7 : 0));
    }
    CHECK(big.scale() == Rational(1, 64));
}

TEST_CASE("C* for small designs") {
    const auto single = oracle::parse_design({{"0", "1"}});
    const std::vector<FactorialEffect> f1{FactorialEffect{1}};
    const auto c = cstar_matrix(single, f1);
    CHECK(c.at(0, 0) == 4);
    CHECK(c.value(0, 0) == Rational(1, 2));

    const auto d = oracle::parse_design({{"00", "11"}, {"01", "10"}});
    const auto main = main_effects(2);
    const auto cm = cstar_matrix(d, main);
    const auto ref = oracle::dense_cstar(d, main);
    CHECK(cm.ints().size() == ref.ints.size());
    for (std::size_t i = 0; i < 4; ++i) CHECK(cm.ints()[i] == ref.ints[i]);
    CHECK(cm.scale() == ref.scale);
    CHECK(cm.is_scalar_identity());
    CHECK(cm.value(0, 0) == Rational(1, 4));
}

TEST_CASE("product and per-set routes agree with the dense oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int m = 2 + static_cast<int>(rng() % 3);
        const int sets = 1 + static_cast<int>(rng() % 5);
        const auto d = oracle::random_design(rng, n, m, sets);
        const auto effects = oracle::all_effects(n);
        const auto product = detail::cstar_by_product(d, effects);
        const auto per_set = detail::cstar_by_sets(d, effects);
        const auto ref = oracle::dense_cstar(d, effects);
        CHECK(product == per_set);
        CHECK(product.scale() == ref.scale);
        bool same = true;
        for (std::size_t k = 0; k < ref.ints.size(); ++k) same = same && product.ints()[k] == ref.ints[k];
        CHECK(same);
        CHECK(product.is_symmetric());
    }
}

TEST_CASE("info_matrix for the broader model") {
    const auto d = single_set_design(4);
    const auto info = info_matrix(d, ModelSpec::broader_main_effects(4));
    CHECK(info.cross_block_zero);
    REQUIRE(info.exact);
    CHECK(info.exact->is_scalar_identity());
    CHECK(info.exact->value(0, 0) == Rational(1, 16));

    // F12 takes effective bit 1 on both 00 and 11, so the cross block vanishes even
    // though F1 and F2 are aliased.
    const auto aliased = oracle::parse_design({{"00", "11"}});
    const auto shortcut = info_matrix(aliased, ModelSpec::broader_main_effects(2));
    CHECK(shortcut.cross_block_zero);
    REQUIRE(shortcut.exact);
    CHECK(*shortcut.exact == shortcut.interest_only);
    const auto forced = schur_information(aliased, ModelSpec::broader_main_effects(2));
    CHECK(forced.size == 2);
    CHECK(forced.trace() == doctest::Approx(0.5));

    const auto bad = oracle::parse_design({{"00", "10"}});
    const auto numeric = info_matrix(bad, ModelSpec::broader_main_effects(2));
    CHECK_FALSE(numeric.cross_block_zero);
    CHECK_FALSE(numeric.exact);
    CHECK(numeric.numeric.size == 2);
    const double c1 = boost::rational_cast<double>(numeric.interest_only.trace());
    CHECK(numeric.numeric.trace() <= c1 + 1e-9);
    CHECK(numeric.numeric.trace() == doctest::Approx(schur_information(bad, ModelSpec::broader_main_effects(2)).trace()));

    const auto plain = info_matrix(d, ModelSpec::main_effects(4));
    REQUIRE(plain.exact);
    CHECK(*plain.exact == cstar_matrix(d, main_effects(4)));
}

TEST_CASE("C* above the dense threshold uses the per-set route") {
    const auto d = theorem2_half_design(14, 4);
    const auto effects = main_effects(14);
    const auto c = cstar_matrix(d, effects);
    CHECK(c == detail::cstar_by_sets(d, effects));
    CHECK(c.is_scalar_identity());
    CHECK_THROWS_AS(lambda_star(d), Error);
}
