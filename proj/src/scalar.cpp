#include "catenoid/scalar.hpp"

#include <cmath>
#include <sstream>

namespace catenoid {

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
    if (o.is_zero())
        throw Error(errc::domain_error, "division by zero");
    mpq_class n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

namespace {

std::string mpq_str(const mpq_class& r) { return r.get_str(); }

}  // namespace

std::string GaussianRational::to_string() const {
    if (is_zero()) return "0";
    if (im == 0) return mpq_str(re);
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = mpq_str(im) + "*i";
    if (re == 0) return imag;
    // Mixed real and imaginary parts print parenthesized so the result can
    // appear as a factor inside products.
    std::string s = "(" + mpq_str(re);
    if (im > 0)
        s += " + " + (im == 1 ? std::string("i") : mpq_str(im) + "*i");
    else
        s += " - " + (im == -1 ? std::string("i") : mpq_str(-im) + "*i");
    return s + ")";
}

void Scalar::insert(Key k, const GaussianRational& c) {
    if (k.hpow < 0)
        throw Error(errc::domain_error, "negative hbar power in scalar");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
           terms_.begin()->second == GaussianRational(1);
}

bool Scalar::is_rational_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
           terms_.begin()->second.is_real();
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    for (const auto& [k, c] : o.terms_) r.insert(k, c);
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    for (const auto& [k, c] : o.terms_) r.insert(k, -c);
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.insert({ka.hpow + kb.hpow, ka.qpow + kb.qpow}, ca * cb);
    return r;
}

Scalar Scalar::conj() const {
    Scalar r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.conj());
    return r;
}

Scalar Scalar::pow(unsigned n) const {
    Scalar r = one();
    Scalar base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::optional<Scalar> Scalar::inverse() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [k, c] = *terms_.begin();
    if (k.hpow != 0) return std::nullopt;
    return Scalar(GaussianRational(1) / c, 0, -k.qpow);
}

std::complex<double> Scalar::eval(double hbar_value) const {
    auto v = eval_ld(static_cast<long double>(hbar_value));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> Scalar::eval_ld(long double hbar_value) const {
    std::complex<long double> acc(0, 0);
    for (const auto& [k, c] : terms_) {
        long double mag = std::pow(hbar_value, static_cast<long double>(k.hpow)) *
                          std::exp(hbar_value * k.qpow / 2.0L);
        acc += std::complex<long double>(static_cast<long double>(c.re.get_d()),
                                         static_cast<long double>(c.im.get_d())) *
               mag;
    }
    return acc;
}

namespace {

// One term as a product string: coefficient, hbar power, q power, with unit
// factors elided. Never empty: the constant term prints its coefficient.
std::string term_str(const Scalar::Key& k, const GaussianRational& c) {
    std::string parts;
    auto append = [&parts](const std::string& p) {
        if (!parts.empty()) parts += "*";
        parts += p;
    };
    if (k.hpow == 1)
        append("hbar");
    else if (k.hpow != 0)
        append("hbar^" + std::to_string(k.hpow));
    if (k.qpow == 1)
        append("q");
    else if (k.qpow != 0)
        append("q^" + std::to_string(k.qpow));
    if (parts.empty()) return c.to_string();
    if (c == GaussianRational(1)) return parts;
    if (c == GaussianRational(-1)) return "-" + parts;
    return c.to_string() + "*" + parts;
}

}  // namespace

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string t = term_str(k, c);
        if (out.empty()) {
            out = t;
        } else if (t.front() == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

}  // namespace catenoid
