#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "catenoid/errors.hpp"

namespace catenoid {

/**
 * GaussianRational: exact complex numbers re + im*i with rational parts.
 * mpq_class keeps denominators positive and in lowest terms.
 */
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

    static GaussianRational imaginary_unit() { return GaussianRational(0, 1); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    // Exact field division; throws on division by zero.
    GaussianRational operator/(const GaussianRational& o) const;

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string to_string() const;
};

/**
 * Scalar: the exact coefficient ring Q(i)[hbar][q, q^-1].
 *
 * hbar and q are algebraically independent formal symbols; the relation
 * q = e^{hbar/2} is imposed only in eval(). Terms are keyed by the pair of
 * exponents (hbar power >= 0, q power in Z); zero coefficients are never
 * stored, so structural equality is semantic equality.
 */
class Scalar {
public:
    struct Key {
        int hpow = 0;  // nonnegative
        int qpow = 0;
        auto operator<=>(const Key&) const = default;
    };
    using TermMap = std::map<Key, GaussianRational>;

    Scalar() = default;
    Scalar(long n) { insert({0, 0}, GaussianRational(n)); }
    explicit Scalar(const GaussianRational& c) { insert({0, 0}, c); }
    Scalar(const GaussianRational& c, int hpow, int qpow) { insert({hpow, qpow}, c); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar imaginary_unit() { return Scalar(GaussianRational::imaginary_unit()); }
    static Scalar hbar(int power = 1) { return Scalar(GaussianRational(1), power, 0); }
    static Scalar q_power(int power) { return Scalar(GaussianRational(1), 0, power); }
    static Scalar rational(long num, long den) {
        mpq_class r(num, den);
        r.canonicalize();
        return Scalar(GaussianRational(r));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    // Single term c with hpow = qpow = 0, c real?
    bool is_rational_constant() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar conj() const;
    Scalar pow(unsigned n) const;

    // Multiplicative inverse, defined for single-term scalars with hpow = 0
    // (hbar powers are not invertible in the polynomial ring).
    std::optional<Scalar> inverse() const;

    // Substitutes hbar -> value, q -> exp(value/2).
    std::complex<double> eval(double hbar_value) const;
    std::complex<long double> eval_ld(long double hbar_value) const;

    std::string to_string() const;

    void insert(Key k, const GaussianRational& c);

private:
    TermMap terms_;
};

inline Scalar operator*(const GaussianRational& c, const Scalar& s) { return Scalar(c) * s; }

}  // namespace catenoid
