#include <doctest.h>

#include "catenoid/parser.hpp"
#include "generators.hpp"

using namespace catenoid;
using testgen::Rng;

namespace {

LocalElement parse_local_str(const std::string& s) { return eval_local(*parse_expr(s)); }

AlgElement parse_alg_str(const std::string& s) { return to_alg(parse_local_str(s)); }

}  // namespace

TEST_CASE("parser: products and precedence") {
    // W*U elaborates to U W + hbar W
    CHECK(parse_alg_str("W*U") ==
          AlgElement({1, 0, 1}, Scalar::one()) + AlgElement({0, 0, 1}, Scalar::hbar()));

    // q^2*R*W^-2: scalar times monomial
    CHECK(parse_alg_str("q^2*R*W^-2") == AlgElement({0, 1, -2}, Scalar::q_power(2)));

    // ^ binds tighter than juxtaposition, juxtaposition multiplies
    CHECK(parse_alg_str("2U^2 W") == AlgElement({2, 0, 1}, Scalar(2)));

    // left-to-right, noncommutative
    CHECK(parse_alg_str("W U") == parse_alg_str("U*W + hbar*W"));

    // unary minus and subtraction
    CHECK(parse_alg_str("-U + U").is_zero());
    CHECK(parse_alg_str("1 - 1").is_zero());
}

TEST_CASE("parser: rationals via division") {
    CHECK(parse_alg_str("3/2") == AlgElement(Scalar::rational(3, 2)));
    CHECK(parse_alg_str("1/2 * W") == AlgElement({0, 0, 1}, Scalar::rational(1, 2)));
}

TEST_CASE("parser: inv produces certified inverses") {
    LocalElement f = parse_local_str("inv(1+U^2)");
    REQUIRE(f.terms().size() == 1);
    CHECK(f.component(0).den_is_one() == false);
    CHECK(loc_mul(f, parse_local_str("1+U^2")) == LocalElement::one());

    // division is multiplication by the certified inverse
    CHECK(parse_local_str("R/(1+U^2)") ==
          loc_mul(parse_local_str("R"), parse_local_str("inv(1+U^2)")));

    CHECK_THROWS_WITH_AS(parse_local_str("inv(U)"),
                         doctest::Contains("NotCertifiedPositive"), Error);
}

TEST_CASE("parser: error positions") {
    // "U +" has nothing after the operator: SyntaxError at offset 3
    try {
        parse_expr("U +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
        CHECK(std::string(e.what()).find("SyntaxError") != std::string::npos);
    }

    try {
        parse_expr("U @ W");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }

    try {
        parse_expr("2 * foo");
        FAIL("expected an unknown symbol error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("UnknownSymbol") != std::string::npos);
        CHECK(e.offset() == 4);
    }

    CHECK_THROWS_AS(parse_expr("1.5"), ParseError);
    CHECK_THROWS_AS(parse_expr("(U"), ParseError);
}

TEST_CASE("parser: negative powers of U are rejected") {
    CHECK_THROWS_AS(parse_local_str("U^-1"), Error);
    CHECK_THROWS_AS(eval_free(*parse_expr("U^-1")), Error);
    // but R and W support them in both evaluators
    CHECK_NOTHROW(parse_local_str("R^-3 W^-2"));
    CHECK_NOTHROW(eval_free(*parse_expr("R^-3 W^-2")));
}

TEST_CASE("free evaluation rejects localized constructs") {
    CHECK_THROWS_AS(eval_free(*parse_expr("inv(1+U^2)")), Error);
    CHECK_THROWS_AS(eval_free(*parse_expr("W/(1+U^2)")), Error);
    // scalar division is fine
    CHECK_NOTHROW(eval_free(*parse_expr("W/2")));
}

TEST_CASE("parser survives arbitrary input with typed errors only") {
    Rng rng(5503);
    const std::string pool = "URWiq hbarinv()^*/+-0123456789.,@";
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        int len = testgen::uniform(rng, 0, 24);
        for (int j = 0; j < len; ++j)
            s += pool[static_cast<std::size_t>(testgen::uniform(rng, 0, pool.size() - 1))];
        try {
            eval_local(*parse_expr(s));
        } catch (const Error&) {
            // ParseError or a domain error; anything else is a bug
        }
        try {
            eval_free(*parse_expr(s));
        } catch (const Error&) {
        }
    }
}

TEST_CASE("round-trip: canonical normal forms re-parse to themselves") {
    Rng rng(5501);
    for (int i = 0; i < 300; ++i) {
        AlgElement a = testgen::random_alg_element(rng, 3, 5, 3);
        CHECK(parse_alg_str(a.to_string()) == a);
    }
}

TEST_CASE("round-trip: localized canonical text re-parses to an equal element") {
    Rng rng(5502);
    for (int i = 0; i < 150; ++i) {
        LocalElement a = testgen::random_local_element(rng);
        CHECK(parse_local_str(a.to_string()) == a);
    }
}
