#include <doctest.h>

#include <cmath>

#include "catenoid/geometry.hpp"
#include "generators.hpp"

using namespace catenoid;
using testgen::Rng;

namespace {

VectorField apply_j(const VectorField& x) {
    // J Phi = i Phi, J Phibar = -i Phibar
    return {scalar_mul(Scalar::imaginary_unit(), x.a),
            scalar_mul(-Scalar::imaginary_unit(), x.b)};
}

LocalElement d_op(const LocalElement& f) { return loc_derive(DerivationLabel::d, f); }
LocalElement dbar_op(const LocalElement& f) { return loc_derive(DerivationLabel::dbar, f); }

}  // namespace

TEST_CASE("isotropy: (Phi^1)^2 + (Phi^2)^2 + (Phi^3)^2 = 0 exactly") {
    auto [p1, p2, p3] = phi_vector_alg();
    AlgElement sum = nf_mul(p1, p1) + nf_mul(p2, p2) + nf_mul(p3, p3);
    CHECK(sum.is_zero());
    CHECK(p3 == AlgElement::one());
}

TEST_CASE("dbar kills the holomorphic frame componentwise") {
    auto [p1, p2, p3] = phi_vector_alg();
    CHECK(nf_derive(DerivationLabel::dbar, p1).is_zero());
    CHECK(nf_derive(DerivationLabel::dbar, p2).is_zero());
    CHECK(nf_derive(DerivationLabel::dbar, p3).is_zero());
}

TEST_CASE("induced metric equals the ambient hermitian form of the frame") {
    EmbeddingTriple phi = phi_vector();
    EmbeddingTriple phibar{loc_star(phi.c1), loc_star(phi.c2), loc_star(phi.c3)};
    Metric m = induced_metric();

    CHECK(ambient_form(phi, phi) == m.S);
    CHECK(ambient_form(phibar, phibar) == m.T);
    CHECK(ambient_form(phi, phibar).is_zero());
    CHECK(ambient_form(phibar, phi).is_zero());

    // S and T are hermitian
    CHECK(loc_star(m.S) == m.S);
    CHECK(loc_star(m.T) == m.T);

    // phi(S)(0) = 1 + cosh(0 * 2) = 2 at hbar = 0
    CHECK(std::abs(m.S.component(0).phi(0.0, 0.0) - 2.0) < 1e-14);
}

TEST_CASE("basis property: components determine the coefficients") {
    Rng rng(4401);
    auto [p1, p2, p3] = phi_vector_alg();
    std::array<AlgElement, 3> phis = {p1, p2, p3};
    Metric m = induced_metric();
    for (int i = 0; i < 30; ++i) {
        AlgElement a = testgen::random_alg_element(rng, 2, 3, 2);
        AlgElement b = testgen::random_alg_element(rng, 2, 3, 2);
        // components of Phi a + Phibar b in the ambient module
        std::array<AlgElement, 3> comp;
        for (int c = 0; c < 3; ++c)
            comp[c] = nf_mul(phis[c], a) + nf_mul(nf_star(phis[c]), b);
        // sum_i (Phi^i)* comp_i = S a   and   sum_i Phi^i comp_i = T b
        AlgElement sa, tb;
        for (int c = 0; c < 3; ++c) {
            sa = sa + nf_mul(nf_star(phis[c]), comp[c]);
            tb = tb + nf_mul(phis[c], comp[c]);
        }
        CHECK(embed(sa) == loc_mul(m.S, embed(a)));
        CHECK(embed(tb) == loc_mul(m.T, embed(b)));
        // and nonzero coefficients give a nonzero field
        if (!a.is_zero() || !b.is_zero())
            CHECK((!comp[0].is_zero() || !comp[1].is_zero() || !comp[2].is_zero()));
    }
}

TEST_CASE("levi_civita: flat metric has a vanishing connection") {
    Metric flat{LocalElement::one(), LocalElement::one()};
    Connection c = levi_civita(flat);
    CHECK(c.gamma1.is_zero());
    CHECK(c.gamma2.is_zero());
    CurvatureReport rep = curvature_report(flat);
    CHECK(rep.r1_112.is_zero());
    CHECK(rep.r2_212.is_zero());
    CHECK(rep.r_1212.is_zero());
    CHECK(rep.r_2112.is_zero());
    CHECK(rep.ric_12.is_zero());
    CHECK(rep.ric_21.is_zero());
    CHECK(rep.scalar.is_zero());
    REQUIRE(rep.gaussian.has_value());
    CHECK(rep.gaussian->is_zero());
}

TEST_CASE("levi_civita: induced metric connection coefficient") {
    Metric m = induced_metric();
    Connection c = levi_civita(m);
    // Gamma^1 = S^-1 * (1/2) q^-2 (R^2 - R^-2)
    CommPoly ds;
    Scalar hq = Scalar::rational(1, 2) * Scalar::q_power(-2);
    ds.insert({0, 2}, hq);
    ds.insert({0, -2}, -hq);
    CHECK(c.gamma1 == loc_mul(m.S_inv(), LocalElement(RationalFn(ds))));
}

TEST_CASE("levi_civita satisfies both hermiticity identities exactly") {
    for (const Metric& m : {induced_metric(), conformal_catenoid_metric()}) {
        Connection c = levi_civita(m);
        for (const LocalElement& res : hermitian_residuals(m, c)) CHECK(res.is_zero());
    }
    Rng rng(4402);
    for (int i = 0; i < 5; ++i) {
        Metric m = conformal_metric(testgen::random_certified_metric(rng));
        Connection c = levi_civita(m);
        for (const LocalElement& res : hermitian_residuals(m, c)) CHECK(res.is_zero());
    }
}

TEST_CASE("uniqueness: perturbing the connection breaks hermiticity") {
    Rng rng(4403);
    Metric m = induced_metric();
    Connection lc = levi_civita(m);
    for (int i = 0; i < 20; ++i) {
        LocalElement delta = testgen::random_nonzero_local_element(rng);
        Connection perturbed{lc.gamma1 + delta, lc.gamma2};
        auto res = hermitian_residuals(m, perturbed);
        bool some_nonzero = false;
        for (const LocalElement& r : res) some_nonzero = some_nonzero || !r.is_zero();
        CHECK(some_nonzero);
    }
}

TEST_CASE("the connection is almost complex: nabla commutes with J") {
    Rng rng(4404);
    Metric m = induced_metric();
    Connection c = levi_civita(m);
    for (int i = 0; i < 20; ++i) {
        VectorField x{testgen::random_small_local_element(rng),
                      testgen::random_small_local_element(rng)};
        for (DerivationLabel dl : {DerivationLabel::d, DerivationLabel::dbar}) {
            VectorField lhs = apply_connection(c, dl, apply_j(x));
            VectorField rhs = apply_j(apply_connection(c, dl, x));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("curvature operator matches the component formulas") {
    for (const Metric& m : {induced_metric(), conformal_catenoid_metric()}) {
        Connection c = levi_civita(m);
        CurvatureReport rep = curvature_report(m);

        VectorField phi_field{LocalElement::one(), LocalElement()};
        VectorField phibar_field{LocalElement(), LocalElement::one()};

        // R(d, dbar) Phi = Phi R^1_112, R(d, dbar) Phibar = Phibar R^2_212
        VectorField on_phi = curvature_operator(c, phi_field);
        CHECK(on_phi.a == rep.r1_112);
        CHECK(on_phi.b.is_zero());
        VectorField on_phibar = curvature_operator(c, phibar_field);
        CHECK(on_phibar.b == rep.r2_212);
        CHECK(on_phibar.a.is_zero());

        // Antisymmetry: R(dbar, d) = -R(d, dbar) on both basis fields.
        auto reversed = [&c](const VectorField& x) {
            VectorField fwd = apply_connection(c, DerivationLabel::dbar,
                                               apply_connection(c, DerivationLabel::d, x));
            VectorField bwd = apply_connection(c, DerivationLabel::d,
                                               apply_connection(c, DerivationLabel::dbar, x));
            return fwd - bwd;
        };
        CHECK(reversed(phi_field) == VectorField{} - on_phi);
        CHECK(reversed(phibar_field) == VectorField{} - on_phibar);

        // Lowered components and Ricci
        CHECK(rep.r_1212 == loc_mul(m.T, rep.r2_212));
        CHECK(rep.r_2112 == loc_mul(m.S, rep.r1_112));
        CHECK(rep.ric_12 == rep.r1_112);
        CHECK(rep.ric_21 == LocalElement() - rep.r2_212);
    }
}

TEST_CASE("conformal metrics: gaussian curvature") {
    auto du = [](const LocalElement& f) { return loc_derive(DerivationLabel::du, f); };

    Rng rng(4405);
    std::vector<Metric> metrics = {conformal_catenoid_metric()};
    for (int i = 0; i < 4; ++i)
        metrics.push_back(conformal_metric(testgen::random_certified_metric(rng)));

    for (const Metric& m : metrics) {
        CurvatureReport rep = curvature_report(m);
        REQUIRE(rep.gaussian.has_value());
        // gaussian = scalar / 2 exactly
        CHECK(scalar_mul(Scalar(2), *rep.gaussian) == rep.scalar);
        // gaussian = -(1/4) du(S^-1 du S) S^-1 exactly
        LocalElement k_formula = scalar_mul(
            Scalar::rational(-1, 4),
            loc_mul(du(loc_mul(m.S_inv(), du(m.S))), m.S_inv()));
        CHECK(*rep.gaussian == k_formula);
    }

    // Non-conformal metrics do not get a Gaussian curvature.
    CurvatureReport induced = curvature_report(induced_metric());
    CHECK_FALSE(induced.gaussian.has_value());
}

TEST_CASE("catenoid metric: phi(K) = -sech^4(u)/2") {
    Metric m = conformal_catenoid_metric();
    CurvatureReport rep = curvature_report(m);
    REQUIRE(rep.gaussian.has_value());
    for (double u : {0.0, 0.5, -1.0, 2.0}) {
        double expected = -0.5 * std::pow(1.0 / std::cosh(u), 4);
        auto v = rep.gaussian->component(0).phi(u, 0.3);
        CHECK(std::abs(v.real() - expected) < 1e-12);
        CHECK(std::abs(v.imag()) < 1e-14);
    }
}

TEST_CASE("curvature pipeline agrees with a finite-difference oracle") {
    // On W-degree-zero elements phi intertwines d and dbar with (1/2) d/du,
    // so Ric_12 = -dbar(Gamma^1) must evaluate to -(1/2) d/du phi(Gamma^1).
    const double hbar = 0.3;
    const double step = 1e-5;
    Metric m = induced_metric();
    Connection c = levi_civita(m);
    CurvatureReport rep = curvature_report(m);

    auto g1 = [&](double u) { return c.gamma1.component(0).phi(u, hbar); };
    auto g2 = [&](double u) { return c.gamma2.component(0).phi(u, hbar); };
    auto s = [&](double u) { return m.S.component(0).phi(u, hbar); };

    for (double u : {-2.0, -0.7, 0.0, 0.4, 1.3}) {
        // Gamma^1 = S^-1 dS: phi value is s'(u) / (2 s(u))
        auto fd_s = (s(u + step) - s(u - step)) / (2.0 * step);
        CHECK(std::abs(g1(u) - 0.5 * fd_s / s(u)) < 1e-7);

        auto fd_g1 = (g1(u + step) - g1(u - step)) / (2.0 * step);
        auto ric12 = rep.ric_12.component(0).phi(u, hbar);
        CHECK(std::abs(ric12 - (-0.5) * fd_g1) < 1e-7);

        auto fd_g2 = (g2(u + step) - g2(u - step)) / (2.0 * step);
        auto ric21 = rep.ric_21.component(0).phi(u, hbar);
        CHECK(std::abs(ric21 - (-0.5) * fd_g2) < 1e-7);
    }
}

TEST_CASE("laplacian: closed form and examples") {
    Metric m = induced_metric();
    // Delta(1) = 0
    CHECK(laplacian(m, LocalElement::one()).is_zero());

    // Delta(U^2) = (1/2)(S^-1 + T^-1)
    LocalElement u2 = embed(nf_mul(AlgElement::u_gen(), AlgElement::u_gen()));
    LocalElement expected = scalar_mul(Scalar::rational(1, 2), m.S_inv() + m.T_inv());
    CHECK(laplacian(m, u2) == expected);

    // Delta(X^3) = 0
    CHECK(laplacian(m, embed(AlgElement::u_gen())).is_zero());

    // div(grad f) = (S^-1 + T^-1) d dbar f on random elements
    Rng rng(4406);
    for (int i = 0; i < 15; ++i) {
        LocalElement f = testgen::random_small_local_element(rng);
        LocalElement closed = loc_mul(m.S_inv() + m.T_inv(), d_op(dbar_op(f)));
        CHECK(laplacian(m, f) == closed);
    }
}

TEST_CASE("embedding coordinates: hermitian, primitive of the frame, harmonic") {
    auto xs = embedding_coords_alg();
    auto phis = phi_vector_alg();
    for (int i = 0; i < 3; ++i) CHECK(nf_star(xs[i]) == xs[i]);
    // d X^1 = Phi^1 and d X^2 = Phi^2 hold on the nose; for X^3 = U the
    // derivative table gives d U = 1/2, half of Phi^3 = 1.
    CHECK(nf_derive(DerivationLabel::d, xs[0]) == phis[0]);
    CHECK(nf_derive(DerivationLabel::d, xs[1]) == phis[1]);
    CHECK(nf_derive(DerivationLabel::d, xs[2]) ==
          scalar_mul(Scalar::rational(1, 2), phis[2]));

    EmbeddingTriple coords = embedding_coords();
    std::vector<Metric> metrics = {induced_metric(), conformal_catenoid_metric()};
    Rng rng(4407);
    for (int i = 0; i < 5; ++i)
        metrics.push_back(conformal_metric(testgen::random_certified_metric(rng)));
    for (const Metric& m : metrics)
        for (const LocalElement* x : coords.components())
            CHECK(laplacian(m, *x).is_zero());
}
