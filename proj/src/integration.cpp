#include "catenoid/integration.hpp"

#include <cmath>
#include <numbers>

namespace catenoid {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0))
        throw Error(errc::domain_error, "abs_tol must be positive");
    if (!(initial_halfwidth > 0) || !(max_halfwidth >= initial_halfwidth))
        throw Error(errc::domain_error, "halfwidths must be positive and increasing");
    if (!(tail_threshold > 0))
        throw Error(errc::domain_error, "tail_threshold must be positive");
}

namespace {

using Cplx = std::complex<double>;
using Fn = std::function<Cplx(double)>;

bool finite(Cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct SimpsonWorker {
    const Fn& f;
    double tol;
    double err = 0.0;
    int max_depth = 48;

    Cplx eval(double x) const {
        Cplx v = f(x);
        if (!finite(v))
            throw Error(errc::non_integrable,
                        "integrand not finite at u = " + std::to_string(x));
        return v;
    }

    Cplx run(double a, double b) {
        Cplx fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        Cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return step(a, b, fa, fm, fb, whole, tol, max_depth);
    }

    Cplx step(double a, double b, Cplx fa, Cplx fm, Cplx fb, Cplx whole, double eps,
              int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        Cplx flm = eval(lm), frm = eval(rm);
        Cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        Cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        Cplx delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
            if (depth <= 0 && std::abs(delta) > 15.0 * eps)
                throw Error(errc::non_integrable, "quadrature failed to converge");
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return step(a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
               step(m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
    }
};

// Tail Int_L^inf f(u) du via u = 1/t: Int_0^{1/L} f(1/t)/t^2 dt, and the
// mirrored left tail. Requires the transformed integrand to stay finite
// near t = 0 (algebraic decay of f at least like u^-2).
Cplx tail_by_inversion(const Fn& f, double L, double tol, double& err, bool right_side) {
    auto g = [&f, right_side](double t) -> Cplx {
        if (t <= 0.0) t = 1e-30;
        double u = (right_side ? 1.0 : -1.0) / t;
        Cplx v = f(u);
        return v / (t * t);
    };
    Cplx probe = g(1e-30);
    if (!finite(probe) || std::abs(probe) > 1e6)
        throw Error(errc::non_integrable, "integrand decays too slowly for the tail map");
    SimpsonWorker worker{g, tol};
    Cplx v = worker.run(0.0, 1.0 / L);
    err += worker.err;
    return v;
}

}  // namespace

QuadratureResult integrate_line(const Fn& f, const QuadratureConfig& cfg) {
    cfg.validate();
    QuadratureResult res;
    double L = cfg.initial_halfwidth;

    SimpsonWorker worker{f, cfg.abs_tol * 0.25};
    Cplx total = worker.run(-L, L);
    res.error_estimate = worker.err;

    auto tail_small = [&](double at) {
        Cplx v = f(at);
        if (!finite(v))
            throw Error(errc::non_integrable,
                        "integrand not finite at u = " + std::to_string(at));
        return std::abs(v) < cfg.tail_threshold;
    };

    while (!(tail_small(L) && tail_small(-L))) {
        if (2.0 * L > cfg.max_halfwidth) {
            // Exponential decay never materialized; finish the tails with
            // the inversion substitution or give up.
            total += tail_by_inversion(f, L, cfg.abs_tol * 0.25, res.error_estimate, true);
            total += tail_by_inversion(f, L, cfg.abs_tol * 0.25, res.error_estimate, false);
            res.tail_substituted = true;
            res.value = total;
            res.halfwidth = L;
            return res;
        }
        SimpsonWorker shell{f, cfg.abs_tol * 0.25};
        total += shell.run(L, 2.0 * L) + shell.run(-2.0 * L, -L);
        res.error_estimate += shell.err;
        L *= 2.0;
    }

    res.value = total;
    res.halfwidth = L;
    return res;
}

namespace {

QuadratureResult weighted_tau(const LocalElement& a, const LocalElement* S, double prefactor,
                              double hbar_value, const QuadratureConfig& cfg) {
    cfg.validate();
    RationalFn a0 = a.component(0);
    if (a0.is_zero()) return {};  // zero symbolic integrand short-circuits

    if (S) {
        if (S->terms().size() != 1 || S->terms().begin()->first != 0)
            throw Error(errc::domain_error,
                        "conformal metric component must be W-degree zero");
        // Fold the weight into the integrand as a single fraction; separate
        // factors would meet as 0 * inf at the integration tails.
        a0 = a0 * S->terms().begin()->second;
    }

    auto f = [&a0, hbar_value](double u) -> std::complex<double> {
        return a0.phi(u, hbar_value);
    };
    QuadratureResult res = integrate_line(f, cfg);
    res.value *= prefactor;
    res.error_estimate *= std::abs(prefactor);
    return res;
}

}  // namespace

QuadratureResult tau0(const LocalElement& a, double hbar_value, const QuadratureConfig& cfg) {
    return weighted_tau(a, nullptr, 2.0 * std::numbers::pi, hbar_value, cfg);
}

QuadratureResult tau_h(const LocalElement& a, const LocalElement& S, double hbar_value,
                       const QuadratureConfig& cfg) {
    return weighted_tau(a, &S, 4.0 * std::numbers::pi, hbar_value, cfg);
}

double total_curvature(const LocalElement& S, double hbar_value, const QuadratureConfig& cfg) {
    Metric m = conformal_metric(S);
    CurvatureReport rep = curvature_report(m);
    if (!rep.gaussian)
        throw Error(errc::domain_error, "total curvature needs a conformal metric");
    QuadratureResult res = tau_h(*rep.gaussian, S, hbar_value, cfg);
    if (std::abs(res.value.imag()) >= cfg.abs_tol)
        throw Error(errc::non_integrable, "total curvature has a non-real value");
    return res.value.real();
}

}  // namespace catenoid
