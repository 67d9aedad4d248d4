#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "catenoid/freealg.hpp"
#include "catenoid/scalar.hpp"

namespace catenoid {

// Basis monomial U^alpha R^j W^k with alpha >= 0 and j, k in Z
// (negative exponents denote the inverse generators).
struct Monomial {
    int alpha = 0;
    int j = 0;
    int k = 0;
    auto operator<=>(const Monomial&) const = default;
};

// Derivations of the algebra: the hermitian pair du, dv and the complex
// combinations d = (du - i dv)/2, dbar = (du + i dv)/2.
enum class DerivationLabel { du, dv, d, dbar };

/**
 * AlgElement: an element of the catenoid algebra in its normal-form basis,
 * a finite Scalar-linear combination of monomials U^alpha R^j W^k.
 */
class AlgElement {
public:
    using TermMap = std::map<Monomial, Scalar>;

    AlgElement() = default;
    explicit AlgElement(const Scalar& c) { insert({}, c); }
    AlgElement(const Monomial& m, const Scalar& c) { insert(m, c); }

    static AlgElement one() { return AlgElement(Scalar::one()); }
    static AlgElement u_gen() { return AlgElement({1, 0, 0}, Scalar::one()); }
    static AlgElement r_gen(int power = 1) { return AlgElement({0, power, 0}, Scalar::one()); }
    static AlgElement w_gen(int power = 1) { return AlgElement({0, 0, power}, Scalar::one()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void insert(const Monomial& m, const Scalar& c);

    AlgElement operator-() const;
    AlgElement operator+(const AlgElement& o) const;
    AlgElement operator-(const AlgElement& o) const;
    bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }

    // Leading monomial in the (alpha, j, k) order used by the zero-divisor
    // argument: max alpha, then max j among those, then max k.
    std::optional<Monomial> leading_monomial() const;

    std::string to_string() const;

private:
    TermMap terms_;
};

// Product in the normal-form basis via the closed commutation forms
//   W^k U^beta = (U + k hbar)^beta W^k,   W^k R^l = q^{2kl} R^l W^k.
AlgElement nf_mul(const AlgElement& a, const AlgElement& b);
AlgElement scalar_mul(const Scalar& c, const AlgElement& a);

// The *-involution: U, R hermitian, W* = W^{-1}; antilinear antihomomorphism.
AlgElement nf_star(const AlgElement& a);

// Derivations determined by du U = 1, du R = R, dv W = iW (all else zero),
// extended by the Leibniz rule; closed form on basis monomials.
AlgElement nf_derive(DerivationLabel dl, const AlgElement& a);

// Expansion into the free algebra (letters U, R, R^-1, W, W^-1).
FreeElement to_free(const AlgElement& a);

// Reads a normal-form FreeElement back into the basis. Requires every word
// to be an ordered monomial U^a R^j W^k; throws otherwise.
AlgElement from_free_normal(const FreeElement& x);

}  // namespace catenoid
