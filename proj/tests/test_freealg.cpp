#include <doctest.h>

#include "catenoid/freealg.hpp"
#include "catenoid/nfalg.hpp"
#include "generators.hpp"

using namespace catenoid;
using testgen::Rng;

namespace {

FreeElement gen(Letter l) { return FreeElement::generator(l); }

FreeElement word(std::initializer_list<Letter> ls, Scalar c = Scalar::one()) {
    return FreeElement(Word(ls), c);
}

}  // namespace

TEST_CASE("reduction rules are order-compatible") {
    for (const auto& rule : reduction_rules()) {
        CHECK(rule.lhs.size() == 2);
        for (const auto& [w, c] : rule.rhs.terms())
            CHECK(word_order(w, rule.lhs) == std::weak_ordering::less);
    }
}

TEST_CASE("normalize: the defining relations") {
    using enum Letter;
    // WU -> UW + hbar W
    CHECK(normalize(word({W, U})) == word({U, W}) + word({W}, Scalar::hbar()));
    // W^-1 W -> 1
    CHECK(normalize(word({Winv, W})) == FreeElement::one());
    // W R W^-1 -> q^2 R
    CHECK(normalize(word({W, R, Winv})) == word({R}, Scalar::q_power(2)));
}

TEST_CASE("normalize terminates and counts steps") {
    using enum Letter;
    NormalizeStats stats;
    normalize(word({W, W, U, U}), ReductionStrategy::leftmost, &stats);
    CHECK(stats.steps > 0);
    // Irreducible input takes no steps.
    normalize(word({U, R, W}), ReductionStrategy::leftmost, &stats);
    CHECK(stats.steps == 0);
}

TEST_CASE("normalize is idempotent and strategy-independent") {
    Rng rng(1101);
    for (int i = 0; i < 1000; ++i) {
        FreeElement x = testgen::random_free_element(rng);
        FreeElement left = normalize(x, ReductionStrategy::leftmost);
        FreeElement right = normalize(x, ReductionStrategy::rightmost);
        CHECK(left == right);
        CHECK(normalize(left) == left);
    }
}

TEST_CASE("normalize is an algebra map onto normal forms") {
    Rng rng(1102);
    for (int i = 0; i < 200; ++i) {
        FreeElement a = testgen::random_free_element(rng, 2, 4);
        FreeElement b = testgen::random_free_element(rng, 2, 4);
        CHECK(normalize(free_mul(a, b)) == normalize(free_mul(normalize(a), normalize(b))));
    }
}

TEST_CASE("free_mul basics") {
    using enum Letter;
    CHECK(free_mul(gen(W), gen(U)) == word({W, U}));
    Rng rng(1100);
    FreeElement a = testgen::random_free_element(rng, 2, 3);
    CHECK(free_mul(FreeElement::one(), a) == a);
    CHECK(free_mul(gen(U) + gen(R), gen(W)) == word({U, W}) + word({R, W}));
}

TEST_CASE("diamond lemma: exactly 20 overlaps, all resolvable") {
    AmbiguityReport report = check_all_ambiguities();
    CHECK(report.overlaps.size() == 20);
    CHECK(report.all_resolvable);
    for (const auto& amb : report.overlaps) {
        CHECK(amb.resolvable);
        CHECK(amb.left_normal_form == amb.right_normal_form);
    }

    using enum Letter;
    // (W^-1 W) R = W^-1 (W R): both resolutions give R.
    bool found = false;
    for (const auto& amb : report.overlaps) {
        if (amb.overlap == Word{Winv, W, R}) {
            found = true;
            CHECK(amb.left_normal_form == gen(R));
            CHECK(amb.right_normal_form == gen(R));
        }
    }
    CHECK(found);

    // (R^-1 R) U = R^-1 (R U): both resolutions give U.
    found = false;
    for (const auto& amb : report.overlaps) {
        if (amb.overlap == Word{Rinv, R, U}) {
            found = true;
            CHECK(amb.left_normal_form == gen(U));
            CHECK(amb.right_normal_form == gen(U));
        }
    }
    CHECK(found);
}

TEST_CASE("normal forms are ordered monomials") {
    Rng rng(1103);
    for (int i = 0; i < 200; ++i) {
        FreeElement x = testgen::random_free_element(rng);
        // from_free_normal throws if any word is not an ordered monomial
        CHECK_NOTHROW(from_free_normal(normalize(x)));
    }
}
