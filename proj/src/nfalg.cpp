#include "catenoid/nfalg.hpp"

#include <cstdlib>

namespace catenoid {

void AlgElement::insert(const Monomial& m, const Scalar& c) {
    if (m.alpha < 0)
        throw Error(errc::domain_error, "negative power of U");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgElement AlgElement::operator-() const {
    AlgElement r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
    AlgElement r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, c);
    return r;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
    AlgElement r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, -c);
    return r;
}

std::optional<Monomial> AlgElement::leading_monomial() const {
    if (terms_.empty()) return std::nullopt;
    // Map order is lexicographic in (alpha, j, k), so the largest key is the
    // leading monomial in exactly the (N, J, K) sense.
    return terms_.rbegin()->first;
}

namespace {

std::string monomial_str(const Monomial& m) {
    std::string s;
    auto append = [&s](const char* gen, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += gen;
        if (e != 1) s += "^" + std::to_string(e);
    };
    append("U", m.alpha);
    append("R", m.j);
    append("W", m.k);
    return s;
}

// Binomial coefficient C(n, t) as an exact integer.
mpz_class binomial(unsigned n, unsigned t) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, t);
    return r;
}

// (U + shift*hbar)^beta expanded in the basis: sum_t C(beta,t) (shift*hbar)^t U^{beta-t}.
// Returned as (exponent of U -> Scalar) pairs folded into the target monomial.
void accumulate_shifted_power(AlgElement& out, const Scalar& coeff, int beta, int shift,
                              int j, int k) {
    for (int t = 0; t <= beta; ++t) {
        Scalar c = coeff;
        if (t > 0) {
            Scalar sh = Scalar(GaussianRational(mpq_class(shift))) * Scalar::hbar();
            c *= sh.pow(static_cast<unsigned>(t));
            c *= Scalar(GaussianRational(mpq_class(binomial(beta, t))));
        }
        out.insert({beta - t, j, k}, c);
    }
}

}  // namespace

std::string AlgElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Leading terms first: descending (alpha, j, k).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = monomial_str(m);
        std::string t;
        if (mono.empty()) {
            t = c.to_string();
        } else if (c.is_one()) {
            t = mono;
        } else if ((-c).is_one()) {
            t = "-" + mono;
        } else {
            std::string cs = c.to_string();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            t = cs + "*" + mono;
        }
        if (out.empty())
            out = t;
        else if (t.front() == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

AlgElement nf_mul(const AlgElement& a, const AlgElement& b) {
    AlgElement r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            // (U^a R^j W^k)(U^b R^l W^m)
            //   = q^{2kl} * (U + k hbar)^b-expansion * U^a R^{j+l} W^{k+m}
            Scalar c = ca * cb * Scalar::q_power(2 * ma.k * mb.j);
            AlgElement shifted;
            accumulate_shifted_power(shifted, c, mb.alpha, ma.k, ma.j + mb.j, ma.k + mb.k);
            for (const auto& [m, sc] : shifted.terms())
                r.insert({m.alpha + ma.alpha, m.j, m.k}, sc);
        }
    }
    return r;
}

AlgElement scalar_mul(const Scalar& c, const AlgElement& a) {
    AlgElement r;
    for (const auto& [m, coeff] : a.terms()) r.insert(m, c * coeff);
    return r;
}

AlgElement nf_star(const AlgElement& a) {
    AlgElement r;
    for (const auto& [m, c] : a.terms()) {
        // (c U^a R^j W^k)* = conj(c) q^{-2kj} (U - k hbar)^a R^j W^{-k}
        Scalar coeff = c.conj() * Scalar::q_power(-2 * m.k * m.j);
        accumulate_shifted_power(r, coeff, m.alpha, -m.k, m.j, -m.k);
    }
    return r;
}

AlgElement nf_derive(DerivationLabel dl, const AlgElement& a) {
    switch (dl) {
    case DerivationLabel::du: {
        AlgElement r;
        for (const auto& [m, c] : a.terms()) {
            if (m.alpha > 0)
                r.insert({m.alpha - 1, m.j, m.k}, c * Scalar(m.alpha));
            if (m.j != 0)
                r.insert(m, c * Scalar(m.j));
        }
        return r;
    }
    case DerivationLabel::dv: {
        AlgElement r;
        for (const auto& [m, c] : a.terms())
            if (m.k != 0)
                r.insert(m, c * Scalar::imaginary_unit() * Scalar(m.k));
        return r;
    }
    case DerivationLabel::d: {
        // (du - i dv)/2
        AlgElement r;
        const Scalar half = Scalar::rational(1, 2);
        const Scalar mihalf = Scalar::rational(-1, 2) * Scalar::imaginary_unit();
        AlgElement du = nf_derive(DerivationLabel::du, a);
        AlgElement dv = nf_derive(DerivationLabel::dv, a);
        for (const auto& [m, c] : du.terms()) r.insert(m, c * half);
        for (const auto& [m, c] : dv.terms()) r.insert(m, c * mihalf);
        return r;
    }
    case DerivationLabel::dbar: {
        AlgElement r;
        const Scalar half = Scalar::rational(1, 2);
        const Scalar ihalf = Scalar::rational(1, 2) * Scalar::imaginary_unit();
        AlgElement du = nf_derive(DerivationLabel::du, a);
        AlgElement dv = nf_derive(DerivationLabel::dv, a);
        for (const auto& [m, c] : du.terms()) r.insert(m, c * half);
        for (const auto& [m, c] : dv.terms()) r.insert(m, c * ihalf);
        return r;
    }
    }
    return {};
}

FreeElement to_free(const AlgElement& a) {
    FreeElement r;
    for (const auto& [m, c] : a.terms()) {
        Word w;
        for (int i = 0; i < m.alpha; ++i) w.push_back(Letter::U);
        for (int i = 0; i < std::abs(m.j); ++i)
            w.push_back(m.j > 0 ? Letter::R : Letter::Rinv);
        for (int i = 0; i < std::abs(m.k); ++i)
            w.push_back(m.k > 0 ? Letter::W : Letter::Winv);
        r.insert(w, c);
    }
    return r;
}

AlgElement from_free_normal(const FreeElement& x) {
    AlgElement r;
    for (const auto& [w, c] : x.terms()) {
        Monomial m;
        int rpos = 0, rneg = 0, wpos = 0, wneg = 0;
        std::size_t i = 0;
        while (i < w.size() && w[i] == Letter::U) { ++m.alpha; ++i; }
        while (i < w.size() && w[i] == Letter::R) { ++rpos; ++i; }
        while (i < w.size() && w[i] == Letter::Rinv) { ++rneg; ++i; }
        while (i < w.size() && w[i] == Letter::W) { ++wpos; ++i; }
        while (i < w.size() && w[i] == Letter::Winv) { ++wneg; ++i; }
        if (i != w.size() || (rpos && rneg) || (wpos && wneg))
            throw Error(errc::domain_error,
                        "word is not an ordered normal-form monomial: " + word_str(w));
        m.j = rpos - rneg;
        m.k = wpos - wneg;
        r.insert(m, c);
    }
    return r;
}

}  // namespace catenoid
