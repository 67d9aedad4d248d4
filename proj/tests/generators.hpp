#pragma once

// Deterministic random generators shared by the property tests.

#include <random>

#include "catenoid/localization.hpp"
#include "catenoid/nfalg.hpp"

namespace catenoid::testgen {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline GaussianRational random_gaussian_rational(Rng& rng) {
    mpq_class re(uniform(rng, -5, 5), uniform(rng, 1, 4));
    mpq_class im(uniform(rng, -5, 5), uniform(rng, 1, 4));
    re.canonicalize();
    im.canonicalize();
    return {re, im};
}

inline Scalar random_scalar(Rng& rng, int max_terms = 2) {
    Scalar s;
    int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i)
        s += Scalar(random_gaussian_rational(rng), uniform(rng, 0, 2), uniform(rng, -2, 2));
    return s;
}

inline Scalar random_nonzero_scalar(Rng& rng, int max_terms = 2) {
    for (;;) {
        Scalar s = random_scalar(rng, max_terms);
        if (!s.is_zero()) return s;
    }
}

inline Word random_word(Rng& rng, int max_len) {
    Word w(static_cast<std::size_t>(uniform(rng, 0, max_len)));
    for (auto& l : w) l = static_cast<Letter>(uniform(rng, 0, 4));
    return w;
}

inline FreeElement random_free_element(Rng& rng, int max_terms = 3, int max_len = 6) {
    FreeElement x;
    int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) x.insert(random_word(rng, max_len), random_scalar(rng));
    return x;
}

// Total degree alpha + |j| + |k| <= max_degree, |j|, |k| <= max_jk.
inline Monomial random_monomial(Rng& rng, int max_degree = 5, int max_jk = 3) {
    for (;;) {
        Monomial m{uniform(rng, 0, max_degree), uniform(rng, -max_jk, max_jk),
                   uniform(rng, -max_jk, max_jk)};
        if (m.alpha + std::abs(m.j) + std::abs(m.k) <= max_degree) return m;
    }
}

inline AlgElement random_alg_element(Rng& rng, int max_terms = 3, int max_degree = 5,
                                     int max_jk = 3) {
    AlgElement a;
    int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i)
        a.insert(random_monomial(rng, max_degree, max_jk), random_scalar(rng));
    return a;
}

inline AlgElement random_nonzero_alg_element(Rng& rng, int max_terms = 3, int max_degree = 5,
                                             int max_jk = 3) {
    for (;;) {
        AlgElement a = random_alg_element(rng, max_terms, max_degree, max_jk);
        if (!a.is_zero()) return a;
    }
}

inline CommPoly random_comm_poly(Rng& rng, int max_terms = 3, int max_u = 2, int max_r = 2) {
    CommPoly p;
    int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i)
        p.insert({uniform(rng, 0, max_u), uniform(rng, -max_r, max_r)}, random_scalar(rng));
    return p;
}

// A certified-invertible polynomial: positive constant plus nonnegative
// monomials (even U powers, positive rational coefficients).
inline CommPoly random_positive_poly(Rng& rng, int extra_terms = 2) {
    CommPoly p(Scalar::rational(uniform(rng, 1, 5), uniform(rng, 1, 3)));
    int n = uniform(rng, 0, extra_terms);
    for (int i = 0; i < n; ++i) {
        Scalar c = Scalar::rational(uniform(rng, 1, 4), uniform(rng, 1, 3)) *
                   Scalar::q_power(uniform(rng, -1, 1));
        p.insert({2 * uniform(rng, 0, 1), uniform(rng, -2, 2)}, c);
    }
    return p;
}

inline RationalFn random_rational_fn(Rng& rng) {
    CommPoly num = random_comm_poly(rng);
    if (uniform(rng, 0, 1) == 0) return RationalFn(num);
    CommPoly den = random_positive_poly(rng);
    auto cert = certify(den);
    if (!cert) throw std::logic_error("generator produced an uncertifiable denominator");
    return RationalFn(num, den, *cert);
}

// Lean variant for identities whose checks cross-multiply denominators.
inline RationalFn random_small_rational_fn(Rng& rng) {
    CommPoly num;
    num.insert({uniform(rng, 0, 1), uniform(rng, -1, 1)},
               Scalar(random_gaussian_rational(rng)));
    if (uniform(rng, 0, 1) == 0) num.insert({0, 0}, Scalar(random_gaussian_rational(rng)));
    if (uniform(rng, 0, 2) > 0) return RationalFn(num);
    CommPoly den = random_positive_poly(rng, 1);
    auto cert = certify(den);
    if (!cert) throw std::logic_error("generator produced an uncertifiable denominator");
    return RationalFn(num, den, *cert);
}

inline LocalElement random_small_local_element(Rng& rng, int max_k = 2) {
    LocalElement a;
    int n = uniform(rng, 1, 2);
    for (int i = 0; i < n; ++i)
        a.insert(uniform(rng, -max_k, max_k), random_small_rational_fn(rng));
    return a;
}

inline LocalElement random_local_element(Rng& rng, int max_terms = 2, int max_k = 3) {
    LocalElement a;
    int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) a.insert(uniform(rng, -max_k, max_k), random_rational_fn(rng));
    return a;
}

inline LocalElement random_nonzero_local_element(Rng& rng, int max_terms = 2, int max_k = 3) {
    for (;;) {
        LocalElement a = random_local_element(rng, max_terms, max_k);
        if (!a.is_zero()) return a;
    }
}

// A random certified conformal metric component.
inline LocalElement random_certified_metric(Rng& rng) {
    CommPoly p = random_positive_poly(rng, 3);
    return LocalElement(RationalFn(p));
}

}  // namespace catenoid::testgen
