#include <doctest.h>

#include <random>

#include "chogen/design.hpp"
#include "oracles.hpp"

using namespace chogen;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("treatment index uses factor 1 as the most significant bit") {
    const auto t = Treatment::from_string("1010");
    CHECK(t.width() == 4);
    CHECK(t.index() == 10);
    CHECK(t.level(1) == 1);
    CHECK(t.level(2) == 0);
    CHECK(t.to_string() == "1010");
    for (std::uint64_t i = 0; i < 64; ++i) CHECK(Treatment::from_string(Treatment(6, i).to_string()).index() == i);
}

TEST_CASE("make_choice_set validates options") {
    const auto s = make_choice_set({"00", "11"});
    CHECK(s.size() == 2);
    CHECK(s.width() == 2);
    CHECK(kind_of([] { make_choice_set({"00", "00"}); }) == ErrorKind::DuplicateOption);
    CHECK(kind_of([] { make_choice_set({"00", "110"}); }) == ErrorKind::MixedWidth);
    const auto first = make_choice_set({"111", "100", "010", "001"});
    CHECK(first.size() == 4);
}

TEST_CASE("complement flips bits and is an involution") {
    CHECK(complement(Treatment::from_string("1010")).to_string() == "0101");
    const auto s = make_choice_set({"111", "100", "010", "001"});
    CHECK(complement(s) == make_choice_set({"000", "011", "101", "110"}));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = oracle::random_design(rng, 4, 3, 5);
        CHECK(complement(complement(d)) == d);
        CHECK(complement(d).num_sets() == d.num_sets());
    }
}

TEST_CASE("add_generator") {
    ComponentMatrix a{Treatment::from_string("1111"), Treatment::from_string("1010")};
    CHECK(add_generator(a, Generator::from_string("0000")) == a);
    CHECK(add_generator(a, Generator::from_string("1111")) == complement(a));
    CHECK(add_generator(a, Generator::from_string("1000"))[0].to_string() == "0111");
    const auto g = Generator::from_string("0110");
    CHECK(add_generator(add_generator(a, g), g) == a);
    CHECK(kind_of([&] { add_generator(a, Generator::from_string("011")); }) == ErrorKind::WidthMismatch);
}

TEST_CASE("direct_add concatenates corresponding options") {
    const auto d0 = oracle::parse_design({{"111", "100", "010", "001"}});
    CHECK(direct_add(d0, d0) == oracle::parse_design({{"111111", "100100", "010010", "001001"}}));
    // Option j of d0 followed by option j of the complement of d0.
    CHECK(direct_add(d0, complement(d0)) == oracle::parse_design({{"111000", "100011", "010101", "001110"}}));
    CHECK(direct_add(d0, complement(d0)).factors() == 6);

    const auto two = oracle::parse_design({{"01", "10"}, {"00", "11"}});
    CHECK(kind_of([&] { direct_add(d0, two); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("direct_add is associative") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_design(rng, 2, 3, 3);
        const auto b = oracle::random_design(rng, 3, 3, 3);
        const auto c = oracle::random_design(rng, 1, 2, 3);
        if (a.set_size() != c.set_size()) continue;
        CHECK(direct_add(direct_add(a, b), c) == direct_add(a, direct_add(b, c)));
    }
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_design(rng, 2, 2, 4);
        const auto b = oracle::random_design(rng, 3, 2, 4);
        const auto c = oracle::random_design(rng, 2, 2, 4);
        CHECK(direct_add(direct_add(a, b), c) == direct_add(a, direct_add(b, c)));
    }
}

TEST_CASE("truncate_factors") {
    const auto d1 = oracle::parse_design({{"111111", "100100", "001001", "010010"}});
    CHECK(truncate_factors(d1, 5) == oracle::parse_design({{"11111", "10010", "00100", "01001"}}));
    CHECK(truncate_factors(d1, 6) == d1);
    const auto collapse = oracle::parse_design({{"01", "00"}});
    CHECK(kind_of([&] { truncate_factors(collapse, 1); }) == ErrorKind::DuplicateOption);
}

TEST_CASE("component view round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = oracle::random_design(rng, 5, 4, 6);
        const auto parts = d.components();
        CHECK(parts.size() == 4);
        CHECK(parts[0].size() == 6);
        CHECK(ChoiceDesign::from_components(parts) == d);
    }
}

TEST_CASE("canonical ordering ignores option and set order") {
    const auto a = oracle::parse_design({{"01", "10"}, {"11", "00"}});
    const auto b = oracle::parse_design({{"00", "11"}, {"10", "01"}});
    CHECK(a != b);
    CHECK(a.same_up_to_order(b));
    CHECK(a.component_pairs() == 2);
}

TEST_CASE("factorial effects") {
    const FactorialEffect e{1, 3};
    CHECK(e.order() == 2);
    CHECK(e.name() == "F13");
    CHECK(FactorialEffect::parse("F13") == e);
    CHECK(FactorialEffect({1, 10}).name() == "F1.10");
    CHECK(FactorialEffect::parse("F1.10") == FactorialEffect({1, 10}));
    CHECK(e.mask(4) == 0b1010);
    CHECK(FactorialEffect::main(2) < FactorialEffect({1, 2}));
    CHECK_THROWS_AS(FactorialEffect({2, 1}), Error);
    CHECK_THROWS_AS(FactorialEffect(std::vector<int>{}), Error);
}

TEST_CASE("model specs") {
    CHECK(ModelSpec::main_effects(5).q() == 5);
    const auto broader = ModelSpec::broader_main_effects(5);
    CHECK(broader.q() == 5);
    CHECK(broader.nuisance().size() == 10);
    CHECK(ModelSpec::specified_one_factor(4).q() == 11);
    CHECK(ModelSpec::specified_two_factor(4).q() == 7);
    CHECK(ModelSpec::specified_group(4, 2).q() == 10);
    CHECK(kind_of([] { ModelSpec::specified_group(4, 4); }) == ErrorKind::BadGroup);
    CHECK(kind_of([] { ModelSpec::custom(3, {FactorialEffect{1, 4}}); }) == ErrorKind::EffectOutOfRange);
}
