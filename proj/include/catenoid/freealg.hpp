#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catenoid/scalar.hpp"

namespace catenoid {

// Alphabet of the free *-algebra, in the order used by the reduction system:
// U < R < Rinv < W < Winv.
enum class Letter : std::uint8_t { U = 0, R = 1, Rinv = 2, W = 3, Winv = 4 };

const char* letter_name(Letter l);

// A monomial of the free algebra; the empty word is the unit.
using Word = std::vector<Letter>;

// Semigroup order: length first, then lexicographic in the alphabet order.
// Compatible with the reduction system and satisfies the descending chain
// condition, which is what termination of normalize() rests on.
std::weak_ordering word_order(const Word& a, const Word& b);

std::string word_str(const Word& w);

/// Finite linear combination of words with Scalar coefficients.
class FreeElement {
public:
    using TermMap = std::map<Word, Scalar>;

    FreeElement() = default;
    explicit FreeElement(const Scalar& c) { insert({}, c); }
    FreeElement(const Word& w, const Scalar& c) { insert(w, c); }

    static FreeElement one() { return FreeElement(Scalar::one()); }
    static FreeElement generator(Letter l) { return FreeElement(Word{l}, Scalar::one()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void insert(const Word& w, const Scalar& c);

    FreeElement operator-() const;
    FreeElement operator+(const FreeElement& o) const;
    FreeElement operator-(const FreeElement& o) const;
    bool operator==(const FreeElement& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    TermMap terms_;
};

// Bilinear concatenation product; performs no reduction.
FreeElement free_mul(const FreeElement& a, const FreeElement& b);
FreeElement scalar_mul(const Scalar& c, const FreeElement& a);

/// One rewrite rule lhs -> rhs where lhs is a two-letter word and every
/// monomial of rhs is strictly smaller in the semigroup order.
struct ReductionRule {
    Word lhs;
    FreeElement rhs;
};

// The fixed twelve-rule reduction system presenting the algebra: inverse
// pairs for R and W, R-U commutation, W-R commutation with coefficients
// e^{±hbar} (stored as q^{±2}), and the W-U rules with the hbar terms.
const std::array<ReductionRule, 12>& reduction_rules();

enum class ReductionStrategy { leftmost, rightmost };

struct NormalizeStats {
    std::size_t steps = 0;
};

// Rewrites until no word contains a rule lhs. Deterministic for a fixed
// strategy; strategy-independence is certified by check_all_ambiguities().
FreeElement normalize(const FreeElement& x,
                      ReductionStrategy strategy = ReductionStrategy::leftmost,
                      NormalizeStats* stats = nullptr);

/// One overlap ambiguity (AB)C = A(BC) with both one-step resolutions
/// reduced to normal form.
struct Ambiguity {
    Word overlap;
    std::size_t first_rule;   // index of the rule applied to AB
    std::size_t second_rule;  // index of the rule applied to BC
    FreeElement left_normal_form;
    FreeElement right_normal_form;
    bool resolvable = false;
};

struct AmbiguityReport {
    std::vector<Ambiguity> overlaps;
    bool all_resolvable = false;
};

// Enumerates every overlap of two rule left-hand sides (all lhs have length
// two, so there are no inclusion ambiguities) and checks the diamond
// condition for each.
AmbiguityReport check_all_ambiguities();

}  // namespace catenoid
