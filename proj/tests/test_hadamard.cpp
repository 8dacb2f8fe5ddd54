#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "chogen/hadamard.hpp"

using namespace chogen;

namespace {

// H H' computed entry by entry, independent of the library check.
bool gram_is_scalar(const HadamardMatrix& h) {
    const int v = h.order();
    for (int i = 0; i < v; ++i) {
        for (int j = 0; j < v; ++j) {
            int dot = 0;
            for (int k = 0; k < v; ++k) dot += h.at(i, k) * h.at(j, k);
            if (dot != (i == j ? v : 0)) return false;
        }
    }
    return true;
}

std::vector<int> flat(const HadamardMatrix& h) { return {h.entries().begin(), h.entries().end()}; }

}  // namespace

TEST_CASE("sylvester") {
    CHECK(sylvester(0).order() == 1);
    CHECK(sylvester(0).at(0, 0) == 1);
    CHECK(flat(sylvester(2)) == std::vector<int>{1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1});
    const auto seed = zero_one(sylvester(2));
    const auto rows = seed.rows(1, 4);
    CHECK(rows[0].to_string() == "1111");
    CHECK(rows[1].to_string() == "1010");
    CHECK(rows[2].to_string() == "1100");
    CHECK(rows[3].to_string() == "1001");
    for (int k = 0; k <= 5; ++k) CHECK(gram_is_scalar(sylvester(k)));
}

TEST_CASE("paley constructions") {
    CHECK(paley_type1(3).order() == 4);
    CHECK(paley_type1(11).order() == 12);
    CHECK(gram_is_scalar(paley_type1(11)));
    CHECK(gram_is_scalar(paley_type1(27)));
    CHECK(paley_type2(5).order() == 12);
    CHECK(gram_is_scalar(paley_type2(5)));
    CHECK_THROWS_AS(paley_type1(5), Error);
    CHECK_THROWS_AS(paley_type2(7), Error);
    try {
        paley_type1(5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadOrder);
    }
}

TEST_CASE("least order") {
    CHECK(least_hadamard_order(5) == 8);
    CHECK(least_hadamard_order(9) == 12);
    CHECK(least_hadamard_order(4) == 4);
    CHECK(least_hadamard_order(1) == 1);
    CHECK(least_hadamard_order(2) == 2);
    CHECK(least_hadamard_order(3) == 4);
    int previous = 0;
    for (int n = 1; n <= 64; ++n) {
        const int v = least_hadamard_order(n);
        CHECK(v >= previous);
        CHECK(least_hadamard_order(v) == v);
        previous = v;
    }
    CHECK_THROWS_AS(least_hadamard_order(65), Error);
}

TEST_CASE("every supported order up to 64 is exact and normalized") {
    for (int v : {1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64}) {
        CAPTURE(v);
        REQUIRE(hadamard_order_supported(v));
        const auto h = hadamard_of_order(v);
        CHECK(h.order() == v);
        CHECK(h.is_normalized());
        CHECK(gram_is_scalar(h));
    }
    CHECK_FALSE(hadamard_order_supported(6));
    CHECK_FALSE(hadamard_order_supported(128));
    CHECK(hadamard_order_supported(128, 128));
}

TEST_CASE("normalize, is_hadamard and zero_one") {
    for (int k = 0; k <= 4; ++k) CHECK(normalize(sylvester(k)) == sylvester(k));
    auto entries = flat(sylvester(2));
    CHECK(is_hadamard(4, entries));
    entries[5] = -entries[5];
    CHECK_FALSE(is_hadamard(4, entries));
    std::vector<std::int8_t> broken(entries.begin(), entries.end());
    CHECK_THROWS_AS(HadamardMatrix(4, broken), Error);

    const auto seed = zero_one(sylvester(3));
    for (int r = 0; r < 8; ++r) CHECK(seed.at(r, 0) == 1);
    const auto h = hadamard_of_order(12);
    const auto z = zero_one(h);
    for (int r = 0; r < 12; ++r) {
        for (int c = 0; c < 12; ++c) CHECK(2 * z.at(r, c) - 1 == h.at(r, c));
    }
    const auto p = paley_type1(19);
    CHECK(normalize(p).is_normalized());
    CHECK(gram_is_scalar(normalize(p)));
}

TEST_CASE("kronecker") {
    const auto k = kronecker(sylvester(1), hadamard_of_order(12));
    CHECK(k.order() == 24);
    CHECK(gram_is_scalar(k));
}
