#include "catenoid/localization.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace catenoid {

void CommPoly::insert(Key k, const Scalar& c) {
    if (k.upow < 0)
        throw Error(errc::domain_error, "negative power of U");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool CommPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
           terms_.begin()->second.is_one();
}

CommPoly CommPoly::operator-() const {
    CommPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

CommPoly CommPoly::operator+(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.insert(k, c);
    return r;
}

CommPoly CommPoly::operator-(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.insert(k, -c);
    return r;
}

CommPoly CommPoly::operator*(const CommPoly& o) const {
    CommPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.insert({ka.upow + kb.upow, ka.rpow + kb.rpow}, ca * cb);
    return r;
}

CommPoly CommPoly::pow(unsigned n) const {
    CommPoly r = one();
    CommPoly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

CommPoly CommPoly::conj() const {
    CommPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.conj());
    return r;
}

CommPoly CommPoly::derive_u() const {
    CommPoly r;
    for (const auto& [k, c] : terms_) {
        if (k.upow > 0) r.insert({k.upow - 1, k.rpow}, c * Scalar(k.upow));
        if (k.rpow != 0) r.insert(k, c * Scalar(k.rpow));
    }
    return r;
}

namespace {

mpz_class binomial(unsigned n, unsigned t) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, t);
    return r;
}

}  // namespace

CommPoly CommPoly::sigma(int k) const {
    if (k == 0) return *this;
    CommPoly r;
    for (const auto& [key, c] : terms_) {
        // (U + k hbar)^a (q^{2k} R)^b
        Scalar base = c * Scalar::q_power(2 * k * key.rpow);
        for (int t = 0; t <= key.upow; ++t) {
            Scalar coeff = base;
            if (t > 0) {
                Scalar sh = Scalar(GaussianRational(mpq_class(k))) * Scalar::hbar();
                coeff *= sh.pow(static_cast<unsigned>(t));
                coeff *= Scalar(GaussianRational(mpq_class(binomial(key.upow, t))));
            }
            r.insert({key.upow - t, key.rpow}, coeff);
        }
    }
    return r;
}

CommPoly CommPoly::shift_down(int du, int dr) const {
    CommPoly r;
    for (const auto& [k, c] : terms_) r.insert({k.upow - du, k.rpow - dr}, c);
    return r;
}

std::complex<long double> CommPoly::phi(long double u, long double hbar_value,
                                        int rpow_shift) const {
    std::complex<long double> acc(0, 0);
    for (const auto& [k, c] : terms_) {
        long double mag = std::pow(u, static_cast<long double>(k.upow)) *
                          std::exp(u * (k.rpow - rpow_shift));
        acc += c.eval_ld(hbar_value) * mag;
    }
    return acc;
}

int CommPoly::min_rpow() const {
    int m = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        m = first ? k.rpow : std::min(m, k.rpow);
        first = false;
    }
    return m;
}

int CommPoly::max_rpow() const {
    int m = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        m = first ? k.rpow : std::max(m, k.rpow);
        first = false;
    }
    return m;
}

std::string CommPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string mono;
        auto append = [&mono](const char* gen, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += gen;
            if (e != 1) mono += "^" + std::to_string(e);
        };
        append("U", k.upow);
        append("R", k.rpow);
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

std::string PositiveCert::describe() const {
    switch (kind) {
    case Kind::constant: return "constant";
    case Kind::r_power: return "r-power";
    case Kind::positive_sum: return "positive-sum";
    case Kind::product: return "product";
    case Kind::sigma_shift: return "sigma-shift(" + std::to_string(shift) + ")";
    case Kind::conjugate: return "conjugate";
    case Kind::numeric_sampled: return "numeric-sampled[heuristic]";
    }
    return "?";
}

namespace {

CertPtr make_cert(PositiveCert::Kind kind,
                  std::vector<CertPtr> children = {}, int shift = 0,
                  double margin = 0.0) {
    auto c = std::make_shared<PositiveCert>();
    c->kind = kind;
    c->shift = shift;
    c->margin = margin;
    for (const auto& ch : children) c->heuristic = c->heuristic || ch->heuristic;
    if (kind == PositiveCert::Kind::numeric_sampled) c->heuristic = true;
    c->children = std::move(children);
    return c;
}

// A scalar whose phi image is strictly positive for every real hbar:
// nonempty, all terms c * q^b with c a positive rational (no hbar factors,
// which vanish at hbar = 0).
bool scalar_strictly_positive(const Scalar& s) {
    if (s.terms().empty()) return false;
    for (const auto& [k, c] : s.terms())
        if (k.hpow != 0 || !c.is_real() || c.re <= 0) return false;
    return true;
}

// A scalar all of whose phi values are >= 0 for every real u, hbar:
// positive real coefficients on even hbar powers.
bool scalar_nonnegative(const Scalar& s) {
    for (const auto& [k, c] : s.terms())
        if (k.hpow % 2 != 0 || !c.is_real() || c.re <= 0) return false;
    return true;
}

std::optional<CertPtr> certify_positive_shape(const CommPoly& p) {
    if (p.is_zero()) return std::nullopt;

    // Single monomial c * q^b * R^m, c > 0.
    if (p.terms().size() == 1) {
        const auto& [k, c] = *p.terms().begin();
        if (k.upow == 0 && scalar_strictly_positive(c))
            return make_cert(k.rpow == 0 ? PositiveCert::Kind::constant
                                         : PositiveCert::Kind::r_power);
    }

    // Sum of pointwise-nonnegative terms with at least one term that is
    // strictly positive for every u (no U factor, positive constant scalar).
    bool base = false;
    for (const auto& [k, c] : p.terms()) {
        if (k.upow % 2 != 0) return std::nullopt;
        if (!scalar_nonnegative(c)) return std::nullopt;
        if (k.upow == 0 && scalar_strictly_positive(c)) base = true;
    }
    if (base) return make_cert(PositiveCert::Kind::positive_sum);
    return std::nullopt;
}

}  // namespace

std::optional<CertPtr> certify(const CommPoly& p) {
    if (auto c = certify_positive_shape(p)) return c;
    // |phi| > 0 is sign-blind: a globally negative element qualifies too.
    if (auto c = certify_positive_shape(-p))
        return make_cert(PositiveCert::Kind::product,
                         {make_cert(PositiveCert::Kind::constant), *c});
    return std::nullopt;
}

std::optional<CertPtr> certify_numeric(const CommPoly& p) {
    if (p.is_zero()) return std::nullopt;
    constexpr double kMargin = 1e-9;
    const double hbars[] = {0.0, 0.5, -0.5, 1.0, -1.0};
    for (double h : hbars) {
        for (int i = -5000; i <= 5000; ++i) {
            long double u = i * 0.01L;
            auto v = p.phi(u, h);
            if (!(std::abs(v) > kMargin)) return std::nullopt;
        }
    }
    return make_cert(PositiveCert::Kind::numeric_sampled, {}, 0, kMargin);
}

CertPtr RationalFn::constant_cert() {
    static const CertPtr c = make_cert(PositiveCert::Kind::constant);
    return c;
}

RationalFn::RationalFn(const CommPoly& num, const CommPoly& den, CertPtr cert)
    : num_(num), den_(den), cert_(std::move(cert)) {
    if (den_.is_zero())
        throw Error(errc::domain_error, "zero denominator");
    if (num_.is_zero()) {
        den_ = CommPoly::one();
        cert_ = constant_cert();
        return;
    }
    if (num_ == den_) {
        num_ = CommPoly::one();
        den_ = CommPoly::one();
        cert_ = constant_cert();
        return;
    }
    if (den_.is_one()) {
        cert_ = constant_cert();
        return;
    }
    // Cancel the common monomial content. R powers always cancel (R is
    // invertible); U powers only via a genuinely common polynomial factor.
    int cu = INT_MAX, cr_num = INT_MAX, cr_den = INT_MAX;
    for (const auto& [k, c] : num_.terms()) {
        cu = std::min(cu, k.upow);
        cr_num = std::min(cr_num, k.rpow);
    }
    int cu_den = INT_MAX;
    for (const auto& [k, c] : den_.terms()) {
        cu_den = std::min(cu_den, k.upow);
        cr_den = std::min(cr_den, k.rpow);
    }
    cu = std::min(cu, cu_den);
    int cr = std::min(cr_num, cr_den);
    if (cu > 0 || cr != 0) {
        num_ = num_.shift_down(cu, cr);
        den_ = den_.shift_down(cu, cr);
    }
    // A single-term denominator c * q^b * R^m is a unit; fold it into the
    // numerator.
    if (den_.terms().size() == 1) {
        const auto& [k, c] = *den_.terms().begin();
        if (k.upow == 0) {
            if (auto cinv = c.inverse()) {
                num_ = (num_ * CommPoly(*cinv)).shift_down(0, k.rpow);
                den_ = CommPoly::one();
            }
        }
    }
    if (den_.is_one()) cert_ = constant_cert();
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (den_ == o.den_)
        return RationalFn(num_ + o.num_, den_, cert_);
    if (den_.is_one())
        return RationalFn(num_ * o.den_ + o.num_, o.den_, o.cert_);
    if (o.den_.is_one())
        return RationalFn(num_ + o.num_ * den_, den_, cert_);
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_,
                      make_cert(PositiveCert::Kind::product, {cert_, o.cert_}));
}

RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
    if (o.den_.is_one())
        return RationalFn(num_ * o.num_, den_, cert_);
    if (den_.is_one())
        return RationalFn(num_ * o.num_, o.den_, o.cert_);
    return RationalFn(num_ * o.num_, den_ * o.den_,
                      make_cert(PositiveCert::Kind::product, {cert_, o.cert_}));
}

bool RationalFn::operator==(const RationalFn& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
}

RationalFn RationalFn::conj() const {
    CommPoly cd = den_.conj();
    if (cd == den_) return RationalFn(num_.conj(), den_, cert_);
    return RationalFn(num_.conj(), cd, make_cert(PositiveCert::Kind::conjugate, {cert_}));
}

RationalFn RationalFn::sigma(int k) const {
    if (k == 0) return *this;
    if (den_.is_one()) return RationalFn(num_.sigma(k));
    return RationalFn(num_.sigma(k), den_.sigma(k),
                      make_cert(PositiveCert::Kind::sigma_shift, {cert_}, k));
}

RationalFn RationalFn::derive_u() const {
    if (den_.is_one()) return RationalFn(num_.derive_u());
    return RationalFn(num_.derive_u() * den_ - num_ * den_.derive_u(), den_ * den_,
                      make_cert(PositiveCert::Kind::product, {cert_, cert_}));
}

std::complex<double> RationalFn::phi(double u, double hbar_value) const {
    // Scale num and den by the denominator's dominant exponential so that
    // large |u| cannot produce inf/inf.
    int shift = u > 0 ? den_.max_rpow() : (u < 0 ? den_.min_rpow() : 0);
    auto n = num_.phi(u, hbar_value, shift);
    auto d = den_.phi(u, hbar_value, shift);
    constexpr long double kDenFloor = 1e-250L;
    if (std::abs(d) < kDenFloor)
        throw Error(errc::denominator_too_small,
                    "phi(denominator) vanished at u = " + std::to_string(u) +
                        " despite certificate " + cert_->describe());
    auto q = n / d;
    return {static_cast<double>(q.real()), static_cast<double>(q.imag())};
}

std::string RationalFn::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFn rat_inv(const RationalFn& f, bool allow_numeric) {
    if (f.is_zero())
        throw Error(errc::not_certified_positive, "cannot invert zero");
    auto cert = certify(f.num());
    if (!cert && allow_numeric) cert = certify_numeric(f.num());
    if (!cert)
        throw Error(errc::not_certified_positive,
                    "no positivity certificate for " + f.num().to_string());
    return RationalFn(f.den(), f.num(), *cert);
}

void LocalElement::insert(int k, const RationalFn& a) {
    if (a.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, a);
    if (!fresh) {
        it->second = it->second + a;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

RationalFn LocalElement::component(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? RationalFn() : it->second;
}

LocalElement LocalElement::operator-() const {
    LocalElement r;
    for (const auto& [k, a] : terms_) r.terms_.emplace(k, -a);
    return r;
}

LocalElement LocalElement::operator+(const LocalElement& o) const {
    LocalElement r = *this;
    for (const auto& [k, a] : o.terms_) r.insert(k, a);
    return r;
}

LocalElement LocalElement::operator-(const LocalElement& o) const {
    LocalElement r = *this;
    for (const auto& [k, a] : o.terms_) r.insert(k, -a);
    return r;
}

bool LocalElement::operator==(const LocalElement& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (auto it = terms_.begin(), jt = o.terms_.begin(); it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!(it->second == jt->second)) return false;
    }
    return true;
}

std::string LocalElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, a] : terms_) {
        std::string w;
        if (k == 1)
            w = "W";
        else if (k != 0)
            w = "W^" + std::to_string(k);

        std::string body;
        bool negated = false;
        if (a.den_is_one()) {
            const CommPoly& n = a.num();
            std::string ns = n.to_string();
            if (w.empty()) {
                body = ns;
            } else if (n.is_one()) {
                body = w;
            } else if ((-n).is_one()) {
                body = w;
                negated = true;
            } else if (ns.find(' ') == std::string::npos) {
                body = (ns.front() == '-' ? (negated = true, ns.substr(1)) : ns) + "*" + w;
            } else {
                body = "(" + ns + ")*" + w;
            }
        } else {
            body = a.to_string();
            if (!w.empty()) body += "*" + w;
        }
        std::string t = (negated ? "-" : "") + body;
        if (out.empty())
            out = t;
        else if (t.front() == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

LocalElement loc_mul(const LocalElement& a, const LocalElement& b) {
    LocalElement r;
    for (const auto& [k, ak] : a.terms())
        for (const auto& [l, bl] : b.terms())
            r.insert(k + l, ak * bl.sigma(k));
    return r;
}

LocalElement scalar_mul(const Scalar& c, const LocalElement& a) {
    LocalElement r;
    RationalFn cf{CommPoly(c)};
    for (const auto& [k, ak] : a.terms()) r.insert(k, ak * cf);
    return r;
}

LocalElement loc_star(const LocalElement& a) {
    LocalElement r;
    for (const auto& [k, ak] : a.terms()) r.insert(-k, ak.conj().sigma(-k));
    return r;
}

LocalElement loc_derive(DerivationLabel dl, const LocalElement& a) {
    LocalElement r;
    const Scalar half = Scalar::rational(1, 2);
    for (const auto& [k, ak] : a.terms()) {
        switch (dl) {
        case DerivationLabel::du:
            r.insert(k, ak.derive_u());
            break;
        case DerivationLabel::dv:
            r.insert(k, ak * RationalFn(CommPoly(Scalar(k) * Scalar::imaginary_unit())));
            break;
        case DerivationLabel::d:
        case DerivationLabel::dbar: {
            // (du a_k +- k a_k)/2 assembled over the shared denominator
            // den^2 to keep representations small.
            Scalar kc = half * Scalar(dl == DerivationLabel::d ? k : -k);
            if (ak.den_is_one()) {
                CommPoly num = ak.num().derive_u() * CommPoly(half) + ak.num() * CommPoly(kc);
                r.insert(k, RationalFn(num));
            } else {
                const CommPoly& n = ak.num();
                const CommPoly& d = ak.den();
                CommPoly num = (n.derive_u() * d - n * d.derive_u()) * CommPoly(half) +
                               n * d * CommPoly(kc);
                r.insert(k, RationalFn(num, d * d,
                                       make_cert(PositiveCert::Kind::product,
                                                 {ak.den_cert(), ak.den_cert()})));
            }
            break;
        }
        }
    }
    return r;
}

LocalElement embed(const AlgElement& a) {
    LocalElement r;
    for (const auto& [m, c] : a.terms())
        r.insert(m.k, RationalFn(CommPoly(m.alpha, m.j, c)));
    return r;
}

LocalElement loc_inv(const LocalElement& a, bool allow_numeric) {
    if (a.terms().size() != 1)
        throw Error(errc::not_invertible,
                    "only W-homogeneous elements can be inverted");
    const auto& [k, g] = *a.terms().begin();
    RationalFn ginv = rat_inv(g, allow_numeric);
    return LocalElement(-k, ginv.sigma(-k));
}

std::complex<double> phi_eval(const RationalFn& f, double u, double hbar_value) {
    return f.phi(u, hbar_value);
}

}  // namespace catenoid
