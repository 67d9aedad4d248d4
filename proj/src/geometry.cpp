#include "catenoid/geometry.hpp"

namespace catenoid {

namespace {

const Scalar kHalf = Scalar::rational(1, 2);
const Scalar kMinusIHalf = Scalar::rational(-1, 2) * Scalar::imaginary_unit();

AlgElement rw(int sign) {
    // R W for sign = +1, R^-1 W^-1 for sign = -1.
    return AlgElement({0, sign, sign}, Scalar::one());
}

}  // namespace

std::array<AlgElement, 3> phi_vector_alg() {
    // Phi^1 = (1/2) e^{hbar/2} (RW - R^-1 W^-1), e^{hbar/2} stored as q.
    const Scalar hq = kHalf * Scalar::q_power(1);
    const Scalar mihq = kMinusIHalf * Scalar::q_power(1);
    AlgElement phi1 = scalar_mul(hq, rw(1) - rw(-1));
    AlgElement phi2 = scalar_mul(mihq, rw(1) + rw(-1));
    return {phi1, phi2, AlgElement::one()};
}

EmbeddingTriple phi_vector() {
    auto [p1, p2, p3] = phi_vector_alg();
    return {embed(p1), embed(p2), embed(p3)};
}

std::array<AlgElement, 3> embedding_coords_alg() {
    const Scalar hq = kHalf * Scalar::q_power(1);
    const Scalar mihq = kMinusIHalf * Scalar::q_power(1);
    AlgElement plus = rw(1) + rw(-1);
    AlgElement minus = rw(1) - rw(-1);
    AlgElement x1 = scalar_mul(hq, plus + nf_star(plus));
    AlgElement x2 = scalar_mul(mihq, minus - nf_star(minus));
    return {x1, x2, AlgElement::u_gen()};
}

EmbeddingTriple embedding_coords() {
    auto [x1, x2, x3] = embedding_coords_alg();
    return {embed(x1), embed(x2), embed(x3)};
}

LocalElement ambient_form(const EmbeddingTriple& x, const EmbeddingTriple& y) {
    LocalElement h;
    auto xs = x.components();
    auto ys = y.components();
    for (int i = 0; i < 3; ++i) h = h + loc_mul(loc_star(*xs[i]), *ys[i]);
    return h;
}

namespace {

// 1 + (c/2) q^{2e} (R^2 + R^-2) with a positive-sum certificate.
LocalElement one_plus_half_q(int qexp) {
    CommPoly p = CommPoly::one();
    Scalar half_q = Scalar::rational(1, 2) * Scalar::q_power(qexp);
    p.insert({0, 2}, half_q);
    p.insert({0, -2}, half_q);
    return LocalElement(RationalFn(p));
}

}  // namespace

Metric induced_metric() {
    return {one_plus_half_q(-2), one_plus_half_q(2)};
}

Metric conformal_catenoid_metric() {
    // (R + R^-1)^2 / 4 = R^2/4 + 1/2 + R^-2/4
    CommPoly p;
    Scalar quarter = Scalar::rational(1, 4);
    p.insert({0, 2}, quarter);
    p.insert({0, 0}, Scalar::rational(1, 2));
    p.insert({0, -2}, quarter);
    LocalElement s{RationalFn(p)};
    return {s, s};
}

Metric conformal_metric(const LocalElement& s) { return {s, s}; }

Connection levi_civita(const Metric& m) {
    LocalElement dS = loc_derive(DerivationLabel::d, m.S);
    LocalElement dbarT = loc_derive(DerivationLabel::dbar, m.T);
    return {loc_mul(m.S_inv(), dS), loc_mul(m.T_inv(), dbarT)};
}

VectorField apply_connection(const Connection& c, DerivationLabel dl, const VectorField& x) {
    if (dl == DerivationLabel::d) {
        // nabla_d(Phi a + Phibar b) = Phi(d a + gamma1 a) + Phibar(d b)
        return {loc_derive(dl, x.a) + loc_mul(c.gamma1, x.a), loc_derive(dl, x.b)};
    }
    if (dl == DerivationLabel::dbar) {
        return {loc_derive(dl, x.a), loc_derive(dl, x.b) + loc_mul(c.gamma2, x.b)};
    }
    throw Error(errc::domain_error, "connection acts along d and dbar only");
}

VectorField curvature_operator(const Connection& c, const VectorField& x) {
    VectorField fwd = apply_connection(c, DerivationLabel::d,
                                       apply_connection(c, DerivationLabel::dbar, x));
    VectorField bwd = apply_connection(c, DerivationLabel::dbar,
                                       apply_connection(c, DerivationLabel::d, x));
    return fwd - bwd;
}

std::array<LocalElement, 4> hermitian_residuals(const Metric& m, const Connection& c) {
    LocalElement dS = loc_derive(DerivationLabel::d, m.S);
    LocalElement dbarS = loc_derive(DerivationLabel::dbar, m.S);
    LocalElement dT = loc_derive(DerivationLabel::d, m.T);
    LocalElement dbarT = loc_derive(DerivationLabel::dbar, m.T);
    return {
        dS - loc_mul(m.S, c.gamma1),
        dbarS - loc_mul(loc_star(c.gamma1), m.S),
        dbarT - loc_mul(m.T, c.gamma2),
        dT - loc_mul(loc_star(c.gamma2), m.T),
    };
}

CurvatureReport curvature_report(const Metric& m) {
    Connection conn = levi_civita(m);
    LocalElement s_inv = m.S_inv();
    LocalElement t_inv = m.T_inv();

    LocalElement dbar_g1 = loc_derive(DerivationLabel::dbar, conn.gamma1);
    LocalElement d_g2 = loc_derive(DerivationLabel::d, conn.gamma2);

    CurvatureReport rep;
    rep.r1_112 = -dbar_g1;
    rep.r2_212 = d_g2;
    rep.r_1212 = loc_mul(m.T, d_g2);
    rep.r_2112 = -loc_mul(m.S, dbar_g1);
    rep.ric_12 = -dbar_g1;
    rep.ric_21 = -d_g2;
    rep.scalar = -(loc_mul(d_g2, s_inv) + loc_mul(dbar_g1, t_inv));
    if (m.conformal())
        rep.gaussian = scalar_mul(Scalar::rational(1, 2), rep.scalar);
    return rep;
}

VectorField gradient(const Metric& m, const LocalElement& f) {
    return {loc_mul(m.S_inv(), loc_derive(DerivationLabel::dbar, f)),
            loc_mul(m.T_inv(), loc_derive(DerivationLabel::d, f))};
}

LocalElement divergence(const Metric& m, const VectorField& x) {
    LocalElement sa = loc_derive(DerivationLabel::d, loc_mul(m.S, x.a));
    LocalElement tb = loc_derive(DerivationLabel::dbar, loc_mul(m.T, x.b));
    return loc_mul(m.S_inv(), sa) + loc_mul(m.T_inv(), tb);
}

LocalElement laplacian(const Metric& m, const LocalElement& f) {
    return divergence(m, gradient(m, f));
}

}  // namespace catenoid
