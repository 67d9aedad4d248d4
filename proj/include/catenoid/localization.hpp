#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catenoid/nfalg.hpp"
#include "catenoid/scalar.hpp"

namespace catenoid {

/**
 * CommPoly: the commutative subalgebra generated by 1, U, R, R^-1 —
 * polynomials in U, Laurent in R, with Scalar coefficients.
 */
class CommPoly {
public:
    struct Key {
        int upow = 0;  // nonnegative
        int rpow = 0;
        auto operator<=>(const Key&) const = default;
    };
    using TermMap = std::map<Key, Scalar>;

    CommPoly() = default;
    explicit CommPoly(const Scalar& c) { insert({0, 0}, c); }
    CommPoly(int upow, int rpow, const Scalar& c) { insert({upow, rpow}, c); }

    static CommPoly one() { return CommPoly(Scalar::one()); }
    static CommPoly u_gen() { return CommPoly(1, 0, Scalar::one()); }
    static CommPoly r_gen(int power = 1) { return CommPoly(0, power, Scalar::one()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    void insert(Key k, const Scalar& c);

    CommPoly operator-() const;
    CommPoly operator+(const CommPoly& o) const;
    CommPoly operator-(const CommPoly& o) const;
    CommPoly operator*(const CommPoly& o) const;
    bool operator==(const CommPoly& o) const { return terms_ == o.terms_; }

    CommPoly pow(unsigned n) const;
    CommPoly conj() const;

    // d/du with du U = 1 and du R = R (Euler derivative in R).
    CommPoly derive_u() const;

    // The shift substitution U -> U + k hbar, R -> q^{2k} R.
    CommPoly sigma(int k) const;

    // Divides every term by U^du R^dr; requires du <= min upow.
    CommPoly shift_down(int du, int dr) const;

    // phi: U -> u, R -> e^u, coefficients via Scalar::eval. rpow_shift
    // multiplies by e^{-shift*u}, used to balance fractions for large |u|.
    std::complex<long double> phi(long double u, long double hbar_value,
                                  int rpow_shift = 0) const;

    int min_rpow() const;
    int max_rpow() const;

    std::string to_string() const;

private:
    TermMap terms_;
};

/**
 * PositiveCert: a certificate that a CommPoly p has |phi(p)(u)| > 0 for all
 * real u (membership in the multiplicative set of invertible denominators).
 * Certificates form a small tree; the numeric-sampling fallback is flagged
 * heuristic and never produced unless explicitly allowed.
 */
struct PositiveCert {
    enum class Kind {
        constant,             // c * q^b with c a nonzero real rational
        r_power,              // c * q^b * R^m with c > 0
        positive_sum,         // c0 q^{b} + sum of nonnegative terms (even powers
                              // of U and hbar, positive real coefficients), c0 > 0
        product,              // product of certified factors
        sigma_shift,          // sigma_k image of a certified element
        conjugate,            // coefficient conjugate of a certified element
        numeric_sampled,      // heuristic grid check
    };

    Kind kind;
    std::vector<std::shared_ptr<const PositiveCert>> children;
    int shift = 0;            // for sigma_shift
    double margin = 0.0;      // for numeric_sampled
    bool heuristic = false;   // true only for numeric_sampled (or children)

    std::string describe() const;
};

using CertPtr = std::shared_ptr<const PositiveCert>;

// Attempts a structural certificate from the whitelist (no sampling).
std::optional<CertPtr> certify(const CommPoly& p);

// Heuristic fallback: samples |phi(p)| on u in [-50, 50] step 0.01 over a
// small grid of hbar values, demanding a margin of 1e-9 everywhere.
std::optional<CertPtr> certify_numeric(const CommPoly& p);

/**
 * RationalFn: num/den with den certified invertible. Equality is decided by
 * cross-multiplication; only monomial content is cancelled opportunistically.
 */
class RationalFn {
public:
    RationalFn() : num_(), den_(CommPoly::one()), cert_(constant_cert()) {}
    explicit RationalFn(const CommPoly& num)
        : num_(num), den_(CommPoly::one()), cert_(constant_cert()) {}
    RationalFn(const CommPoly& num, const CommPoly& den, CertPtr cert);

    static RationalFn one() { return RationalFn(CommPoly::one()); }

    const CommPoly& num() const { return num_; }
    const CommPoly& den() const { return den_; }
    const CertPtr& den_cert() const { return cert_; }

    bool is_zero() const { return num_.is_zero(); }
    bool den_is_one() const { return den_.is_one(); }

    RationalFn operator-() const;
    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    bool operator==(const RationalFn& o) const;

    RationalFn conj() const;
    RationalFn sigma(int k) const;
    RationalFn derive_u() const;  // quotient rule

    // phi evaluation; throws DenominatorTooSmall when |phi(den)| is
    // effectively zero (which a valid certificate should preclude).
    std::complex<double> phi(double u, double hbar_value) const;

    std::string to_string() const;

private:
    static CertPtr constant_cert();

    CommPoly num_;
    CommPoly den_;
    CertPtr cert_;
};

// Inverse of a rational function: requires a positivity certificate for the
// numerator; throws NotCertifiedPositive otherwise. Set allow_numeric to
// fall back to the flagged sampling heuristic.
RationalFn rat_inv(const RationalFn& f, bool allow_numeric = false);

/**
 * LocalElement: an element of the localized algebra written in normal form
 * sum_k a_k W^k with rational-function coefficients a_k.
 */
class LocalElement {
public:
    using TermMap = std::map<int, RationalFn>;

    LocalElement() = default;
    explicit LocalElement(const RationalFn& a0) { insert(0, a0); }
    LocalElement(int k, const RationalFn& ak) { insert(k, ak); }

    static LocalElement one() { return LocalElement(RationalFn::one()); }
    static LocalElement from_scalar(const Scalar& c) {
        return LocalElement(RationalFn(CommPoly(c)));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void insert(int k, const RationalFn& a);

    // The W^k coefficient (zero function if absent).
    RationalFn component(int k) const;

    LocalElement operator-() const;
    LocalElement operator+(const LocalElement& o) const;
    LocalElement operator-(const LocalElement& o) const;
    bool operator==(const LocalElement& o) const;

    std::string to_string() const;

private:
    TermMap terms_;
};

// Product via W^k p = sigma_k(p) W^k: (a_k W^k)(b_l W^l) = a_k sigma_k(b_l) W^{k+l}.
LocalElement loc_mul(const LocalElement& a, const LocalElement& b);
LocalElement scalar_mul(const Scalar& c, const LocalElement& a);

// Star: (a_k W^k)* = sigma_{-k}(conj a_k) W^{-k}.
LocalElement loc_star(const LocalElement& a);

// Derivations extended to the localization by the quotient rule; dv
// contributes i*k on the W^k component.
LocalElement loc_derive(DerivationLabel dl, const LocalElement& a);

// Embedding of the polynomial algebra.
LocalElement embed(const AlgElement& a);

// Inverse of an element supported in degree zero; throws NotInvertible for
// other supports, NotCertifiedPositive when no certificate exists.
LocalElement loc_inv(const LocalElement& a, bool allow_numeric = false);

// phi on the k = 0 component of a degree-zero element.
std::complex<double> phi_eval(const RationalFn& f, double u, double hbar_value);

}  // namespace catenoid
