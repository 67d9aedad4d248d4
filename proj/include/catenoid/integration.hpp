#pragma once

#include <complex>
#include <functional>

#include "catenoid/geometry.hpp"
#include "catenoid/localization.hpp"

namespace catenoid {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double initial_halfwidth = 10.0;
    double max_halfwidth = 160.0;
    double tail_threshold = 1e-12;

    void validate() const;
};

struct QuadratureResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    double halfwidth = 0.0;
    bool tail_substituted = false;  // algebraic tails handled via u -> 1/t
};

// Integral of f over the real line: adaptive Simpson on [-L, L] with L
// doubling from the initial halfwidth. Exponentially decaying integrands
// stop once |f(+-L)| falls below the tail threshold; integrands with slower
// (algebraic) decay are finished with the inversion substitution u = 1/t.
// Throws NonIntegrable when neither route converges.
QuadratureResult integrate_line(const std::function<std::complex<double>(double)>& f,
                                const QuadratureConfig& cfg = {});

// tau_0(a) = 2 pi Int phi(a_0) du  (only the W^0 component contributes).
QuadratureResult tau0(const LocalElement& a, double hbar_value,
                      const QuadratureConfig& cfg = {});

// tau_h(a) = 4 pi Int phi(a_0) phi(S) du for a conformal metric component S.
QuadratureResult tau_h(const LocalElement& a, const LocalElement& S, double hbar_value,
                       const QuadratureConfig& cfg = {});

// Total curvature: the Gaussian curvature of the conformal metric S = T,
// integrated by tau_h. Returns the real part; the imaginary part must be
// below abs_tol.
double total_curvature(const LocalElement& S, double hbar_value,
                       const QuadratureConfig& cfg = {});

}  // namespace catenoid
