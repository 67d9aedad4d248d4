#pragma once

#include <array>
#include <optional>

#include "catenoid/localization.hpp"

namespace catenoid {

/// A vector field X = Phi*a + Phibar*b in components over the basis
/// {Phi, Phibar} of the rank-2 free module of vector fields.
struct VectorField {
    LocalElement a;
    LocalElement b;

    VectorField operator+(const VectorField& o) const { return {a + o.a, b + o.b}; }
    VectorField operator-(const VectorField& o) const { return {a - o.a, b - o.b}; }
    bool operator==(const VectorField& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

/// Three ambient components; used both for the holomorphic frame
/// (Phi^1, Phi^2, Phi^3) and for the embedding coordinates (X^1, X^2, X^3).
struct EmbeddingTriple {
    LocalElement c1, c2, c3;
    std::array<const LocalElement*, 3> components() const { return {&c1, &c2, &c3}; }
};

/// Diagonal hermitian metric h(Phi,Phi) = S, h(Phibar,Phibar) = T,
/// h(Phi,Phibar) = 0, with S and T invertible.
struct Metric {
    LocalElement S;
    LocalElement T;

    LocalElement S_inv() const { return loc_inv(S); }
    LocalElement T_inv() const { return loc_inv(T); }
    bool conformal() const { return S == T; }
};

/// The torsion-free almost complex connection in its reduced form:
/// nabla_d Phi = Phi*gamma1, nabla_dbar Phibar = Phibar*gamma2,
/// nabla_dbar Phi = nabla_d Phibar = 0.
struct Connection {
    LocalElement gamma1;
    LocalElement gamma2;
};

/// All curvature quantities of a metric. The components R^1_212, R^2_112,
/// R_1112, R_2212, Ric_11 and Ric_22 vanish identically and are not stored.
struct CurvatureReport {
    LocalElement r1_112;   // R^1_112 = -dbar(S^-1 d S)
    LocalElement r2_212;   // R^2_212 = d(T^-1 dbar T)
    LocalElement r_1212;   // R_1212 = T d(T^-1 dbar T)
    LocalElement r_2112;   // R_2112 = -S dbar(S^-1 d S)
    LocalElement ric_12;   // Ric_12 = -dbar(S^-1 d S)
    LocalElement ric_21;   // Ric_21 = -d(T^-1 dbar T)
    LocalElement scalar;   // R = -d(T^-1 dbar T) S^-1 - dbar(S^-1 d S) T^-1
    std::optional<LocalElement> gaussian;  // half the scalar, conformal metrics only
};

// The holomorphic frame components: Phi^1 = (q/2)(RW - R^-1 W^-1),
// Phi^2 = -(i q/2)(RW + R^-1 W^-1), Phi^3 = 1. The sum of their squares
// vanishes identically (isotropy).
EmbeddingTriple phi_vector();
std::array<AlgElement, 3> phi_vector_alg();

// Hermitian embedding coordinates: d X^1 = Phi^1, d X^2 = Phi^2 and
// X^3 = U (whose d-derivative is Phi^3/2). All three are harmonic for any
// invertible metric.
EmbeddingTriple embedding_coords();
std::array<AlgElement, 3> embedding_coords_alg();

// Diagonal hermitian form h(X, Y) = sum_i (X^i)* Y^i on ambient triples.
LocalElement ambient_form(const EmbeddingTriple& x, const EmbeddingTriple& y);

// The metric induced from the ambient free module:
// S = 1 + q^-2 (R^2 + R^-2)/2, T = 1 + q^2 (R^2 + R^-2)/2.
Metric induced_metric();

// Conformal metric S = T = (R + R^-1)^2 / 4, the catenoid's round metric.
Metric conformal_catenoid_metric();

// Conformal metric from an arbitrary certified-invertible element.
Metric conformal_metric(const LocalElement& s);

// The unique hermitian torsion-free almost complex connection:
// gamma1 = S^-1 d S, gamma2 = T^-1 dbar T.
Connection levi_civita(const Metric& m);

// Covariant derivative of X = Phi a + Phibar b along d or dbar
// (dl must be DerivationLabel::d or DerivationLabel::dbar).
VectorField apply_connection(const Connection& c, DerivationLabel dl, const VectorField& x);

// Curvature operator R(d, dbar) X = nabla_d nabla_dbar X - nabla_dbar nabla_d X.
VectorField curvature_operator(const Connection& c, const VectorField& x);

// The hermiticity residuals of a candidate connection against a metric:
// { dS - S g1, dbar S - g1* S, dbar T - T g2, dT - g2* T }. All vanish
// exactly for levi_civita(m) and only for it.
std::array<LocalElement, 4> hermitian_residuals(const Metric& m, const Connection& c);

CurvatureReport curvature_report(const Metric& m);

// Gradient, divergence and Laplacian of the Levi-Civita connection.
VectorField gradient(const Metric& m, const LocalElement& f);
LocalElement divergence(const Metric& m, const VectorField& x);
LocalElement laplacian(const Metric& m, const LocalElement& f);

}  // namespace catenoid
