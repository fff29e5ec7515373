#include "bimodal/arith.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace bimodal;

TEST_CASE("nu2 splits out the even part") {
    auto d = nu2(12);
    CHECK(d.exponent == 2);
    CHECK(d.odd_factor == 3);
    CHECK(d.form == decomp_form::even_part);

    d = nu2(7);
    CHECK(d.exponent == 0);
    CHECK(d.odd_factor == 7);

    auto [m, k] = oracle::halving_decomp(40);
    d = nu2(40);
    CHECK(d.exponent == m);
    CHECK(d.odd_factor == k);
    CHECK(m == 3);
    CHECK(k == 5);

    CHECK_THROWS_AS(nu2(0), std::invalid_argument);
}

TEST_CASE("odd decomposition, plus form") {
    auto d = odd_decomp_plus(21);
    CHECK(d.exponent == 2);
    CHECK(d.odd_factor == 5);
    CHECK(d.form == decomp_form::odd_plus);

    d = odd_decomp_plus(3);
    CHECK(d.exponent == 1);
    CHECK(d.odd_factor == 1);

    d = odd_decomp_plus(9);
    CHECK(d.exponent == 3);
    CHECK(d.odd_factor == 1);

    CHECK_THROWS_AS(odd_decomp_plus(8), std::invalid_argument);
    CHECK_THROWS_AS(odd_decomp_plus(1), std::invalid_argument);
}

TEST_CASE("odd decomposition, minus form") {
    auto d = odd_decomp_minus(7);
    CHECK(d.exponent == 3);
    CHECK(d.odd_factor == 1);
    CHECK(d.form == decomp_form::odd_minus);

    d = odd_decomp_minus(11);
    CHECK(d.exponent == 2);
    CHECK(d.odd_factor == 3);

    d = odd_decomp_minus(1);
    CHECK(d.exponent == 1);
    CHECK(d.odd_factor == 1);

    CHECK_THROWS_AS(odd_decomp_minus(6), std::invalid_argument);
}

TEST_CASE("2^e + 1 shape test") {
    CHECK(pow2_plus1_exponent(9) == 3);
    CHECK(pow2_plus1_exponent(3) == 1);
    CHECK_FALSE(pow2_plus1_exponent(21).has_value());
    CHECK_FALSE(pow2_plus1_exponent(1).has_value());
    CHECK_FALSE(pow2_plus1_exponent(0).has_value());
    CHECK_FALSE(pow2_plus1_exponent(2).has_value());
    CHECK(pow2_plus1_exponent(pow2(100) + 1) == 100);

    // nonempty exactly when the plus decomposition has k == 1
    for (nat n = 3; n <= 2001; n += 2) {
        CHECK(pow2_plus1_exponent(n).has_value() == (odd_decomp_plus(n).odd_factor == 1));
    }
}

TEST_CASE("choose2") {
    CHECK(choose2(3) == 3);
    CHECK(choose2(1) == 0);
    CHECK(choose2(0) == 0);
    CHECK(choose2(21) == 210);

    nat running = 0;  // 0 + 1 + ... + (n-1)
    for (nat n = 1; n <= 1000; ++n) {
        running += n - 1;
        CHECK(choose2(n) == running);
    }
}

TEST_CASE("decompositions recompose exactly and keep k odd") {
    for (nat n = 1; n <= 100000; ++n) {
        auto d = nu2(n);
        REQUIRE(is_odd(d.odd_factor));
        REQUIRE(recompose(d) == n);
        if (is_odd(n)) {
            if (n >= 3) {
                auto p = odd_decomp_plus(n);
                REQUIRE(is_odd(p.odd_factor));
                REQUIRE(p.exponent >= 1);
                REQUIRE(recompose(p) == n);
            }
            auto mnu = odd_decomp_minus(n);
            REQUIRE(is_odd(mnu.odd_factor));
            REQUIRE(mnu.exponent >= 1);
            REQUIRE(recompose(mnu) == n);
        }
    }
}

TEST_CASE("round trips hold at 1024 bits") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 200; ++i) {
        nat n = oracle::random_bits(rng, 1024);
        CHECK(recompose(nu2(n)) == n);
        nat odd = n | 1;
        CHECK(recompose(odd_decomp_plus(odd)) == odd);
        CHECK(recompose(odd_decomp_minus(odd)) == odd);
        auto [m, k] = oracle::halving_decomp(n);
        auto d = nu2(n);
        CHECK(d.exponent == m);
        CHECK(d.odd_factor == k);
    }
}

TEST_CASE("decimal parse and print round-trip") {
    CHECK(parse_decimal("0") == nat(0));
    CHECK(parse_decimal("10376293541461622785") == (nat(9) << 60) + 1);
    CHECK_FALSE(parse_decimal("").has_value());
    CHECK_FALSE(parse_decimal("-3").has_value());
    CHECK_FALSE(parse_decimal("01").has_value());
    CHECK_FALSE(parse_decimal("12x").has_value());
    CHECK_FALSE(parse_decimal("1 2").has_value());

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        nat n = oracle::random_bits(rng, 4000 + i);
        std::string s = to_decimal(n);
        auto back = parse_decimal(s);
        REQUIRE(back.has_value());
        CHECK(*back == n);
        CHECK(to_decimal(*back) == s);
    }
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(2) == 2);
    CHECK(bit_length(255) == 8);
    CHECK(bit_length(256) == 9);
    CHECK(bit_length(pow2(4096)) == 4097);
}
