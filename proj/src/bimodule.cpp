#include "catenoid/bimodule.hpp"

#include <algorithm>
#include <cmath>

namespace catenoid {

namespace {

constexpr double kParamTol = 1e-12;

using Cplx = std::complex<double>;
using Poly = std::vector<Cplx>;

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Cplx(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_dx(const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<double>(i));
    return r;
}

// P(x - eps) by binomial expansion.
Poly poly_shift(const Poly& a, double eps) {
    Poly r(a.size(), Cplx(0));
    for (std::size_t n = 0; n < a.size(); ++n) {
        double binom = 1.0;
        double power = 1.0;
        for (std::size_t t = 0; t <= n; ++t) {
            r[n - t] += a[n] * binom * power;
            binom = binom * static_cast<double>(n - t) / static_cast<double>(t + 1);
            power *= -eps;
        }
    }
    return r;
}

}  // namespace

LeftParams LeftParams::make(double lambda0, double lambda1, double eps, int r, double hbar) {
    LeftParams p{lambda0, lambda1, eps, r, hbar};
    if (std::abs(p.constraint_residual()) > kParamTol)
        throw Error(errc::degenerate_params,
                    "left parameters violate lambda0*eps + lambda1*r = -hbar");
    return p;
}

RightParams RightParams::make(double mu0, double mu1, double epsp, int rp, double hbarp) {
    RightParams p{mu0, mu1, epsp, rp, hbarp};
    if (std::abs(p.constraint_residual()) > kParamTol)
        throw Error(errc::degenerate_params,
                    "right parameters violate mu0*eps' + mu1*r' = hbar'");
    return p;
}

std::complex<double> TestFunction::Atom::eval(double x) const {
    Cplx p(0);
    for (std::size_t i = poly.size(); i-- > 0;) p = p * x + poly[i];
    double d = x - x0;
    return p * std::exp(-gamma * d * d + expcoef * x);
}

TestFunction::Atom TestFunction::Atom::shifted(double eps) const {
    Atom a = *this;
    a.poly = poly_shift(poly, eps);
    a.x0 = x0 + eps;
    // e^{c(x - eps)} = e^{-c eps} e^{c x}
    double scale = std::exp(-expcoef * eps);
    for (auto& c : a.poly) c *= scale;
    return a;
}

TestFunction TestFunction::gaussian(int k, double gamma, double x0, Cplx amplitude) {
    TestFunction f;
    f.add_atom(k, Atom{{amplitude}, gamma, x0, 0.0});
    return f;
}

void TestFunction::add_atom(int k, Atom a) {
    if (a.poly.empty()) return;
    if (!(a.gamma > 0))
        throw Error(errc::domain_error, "test function atoms need gamma > 0");
    slices_[k].push_back(std::move(a));
}

std::complex<double> TestFunction::eval(double x, int k) const {
    auto it = slices_.find(k);
    if (it == slices_.end()) return 0.0;
    Cplx v(0);
    for (const auto& a : it->second) v += a.eval(x);
    return v;
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
    TestFunction r = *this;
    for (const auto& [k, atoms] : o.slices_)
        for (const auto& a : atoms) r.slices_[k].push_back(a);
    return r;
}

TestFunction TestFunction::operator-(const TestFunction& o) const {
    return *this + o.scaled(-1.0);
}

TestFunction TestFunction::scaled(Cplx c) const {
    TestFunction r = *this;
    for (auto& [k, atoms] : r.slices_)
        for (auto& a : atoms)
            for (auto& p : a.poly) p *= c;
    return r;
}

TestFunction TestFunction::shifted(double eps, int r) const {
    TestFunction out;
    for (const auto& [k, atoms] : slices_)
        for (const auto& a : atoms) out.slices_[k + r].push_back(a.shifted(eps));
    return out;
}

TestFunction TestFunction::mul_exp(double a, Cplx b) const {
    TestFunction out;
    for (const auto& [k, atoms] : slices_) {
        Cplx scale = std::exp(b * static_cast<double>(k));
        for (const auto& atom : atoms) {
            Atom na = atom;
            na.expcoef += a;
            for (auto& c : na.poly) c *= scale;
            out.slices_[k].push_back(std::move(na));
        }
    }
    return out;
}

TestFunction TestFunction::mul_linear(Cplx a, Cplx b, Cplx c) const {
    TestFunction out;
    for (const auto& [k, atoms] : slices_) {
        Poly lin = {b * static_cast<double>(k) + c, a};
        for (const auto& atom : atoms) {
            Atom na = atom;
            na.poly = poly_mul(atom.poly, lin);
            out.slices_[k].push_back(std::move(na));
        }
    }
    return out;
}

TestFunction TestFunction::dx() const {
    TestFunction out;
    for (const auto& [k, atoms] : slices_) {
        for (const auto& atom : atoms) {
            // (P e^{g})' = (P' + P g') e^{g},  g' = -2 gamma (x - x0) + c
            Poly gp = {2.0 * atom.gamma * atom.x0 + atom.expcoef, -2.0 * atom.gamma};
            Poly p = poly_mul(atom.poly, gp);
            Poly d = poly_dx(atom.poly);
            if (p.size() < d.size()) p.resize(d.size(), Cplx(0));
            for (std::size_t i = 0; i < d.size(); ++i) p[i] += d[i];
            Atom na = atom;
            na.poly = std::move(p);
            out.slices_[k].push_back(std::move(na));
        }
    }
    return out;
}

TestFunction TestFunction::conj() const {
    TestFunction out = *this;
    for (auto& [k, atoms] : out.slices_)
        for (auto& a : atoms)
            for (auto& c : a.poly) c = std::conj(c);
    return out;
}

std::vector<int> TestFunction::support() const {
    std::vector<int> ks;
    for (const auto& [k, atoms] : slices_) ks.push_back(k);
    return ks;
}

TestFunction act_left(Letter gen, const LeftParams& p, const TestFunction& xi) {
    switch (gen) {
    case Letter::U: return xi.mul_linear(p.lambda0, p.lambda1);
    case Letter::R: return xi.mul_exp(p.lambda0, p.lambda1);
    case Letter::Rinv: return xi.mul_exp(-p.lambda0, -p.lambda1);
    case Letter::W: return xi.shifted(p.eps, p.r);
    case Letter::Winv: return xi.shifted(-p.eps, -p.r);
    }
    throw Error(errc::domain_error, "unknown generator");
}

TestFunction act_right(Letter gen, const RightParams& p, const TestFunction& xi) {
    switch (gen) {
    case Letter::U: return xi.mul_linear(p.mu0, p.mu1);
    case Letter::R: return xi.mul_exp(p.mu0, p.mu1);
    case Letter::Rinv: return xi.mul_exp(-p.mu0, -p.mu1);
    case Letter::W: return xi.shifted(p.epsp, p.rp);
    case Letter::Winv: return xi.shifted(-p.epsp, -p.rp);
    }
    throw Error(errc::domain_error, "unknown generator");
}

namespace {

double max_abs_difference(const TestFunction& lhs, const TestFunction& rhs,
                          const SampleGrid& grid) {
    TestFunction diff = lhs - rhs;
    double worst = 0.0;
    std::vector<int> ks = diff.support();
    for (int g = grid.k_min; g <= grid.k_max; ++g) ks.push_back(g);
    for (int k : ks) {
        for (int i = 0; i < grid.x_count; ++i) {
            double x = grid.x_min +
                       (grid.x_max - grid.x_min) * i / std::max(1, grid.x_count - 1);
            worst = std::max(worst, std::abs(diff.eval(x, k)));
        }
    }
    return worst;
}

}  // namespace

ResidualReport verify_structure(const BimoduleParams& p, const std::vector<TestFunction>& xis,
                                const SampleGrid& grid) {
    ResidualReport report;
    const double h = p.left.hbar;
    const double hp = p.right.hbarp;

    auto L = [&p](Letter g, const TestFunction& f) { return act_left(g, p.left, f); };
    auto Rt = [&p](Letter g, const TestFunction& f) { return act_right(g, p.right, f); };

    auto add = [&](const std::string& name, auto&& lhs_of, auto&& rhs_of) {
        double worst = 0.0;
        for (const auto& xi : xis)
            worst = std::max(worst, max_abs_difference(lhs_of(xi), rhs_of(xi), grid));
        report.rows.push_back({name, worst});
        report.max_residual = std::max(report.max_residual, worst);
    };

    using enum Letter;

    // Inverse pairs and the R-U commutation, left action: A(B xi).
    add("left: W W^-1 = 1", [&](const TestFunction& x) { return L(W, L(Winv, x)); },
        [&](const TestFunction& x) { return x; });
    add("left: W^-1 W = 1", [&](const TestFunction& x) { return L(Winv, L(W, x)); },
        [&](const TestFunction& x) { return x; });
    add("left: R R^-1 = 1", [&](const TestFunction& x) { return L(R, L(Rinv, x)); },
        [&](const TestFunction& x) { return x; });
    add("left: R^-1 R = 1", [&](const TestFunction& x) { return L(Rinv, L(R, x)); },
        [&](const TestFunction& x) { return x; });
    add("left: R U = U R", [&](const TestFunction& x) { return L(R, L(U, x)); },
        [&](const TestFunction& x) { return L(U, L(R, x)); });
    add("left: R^-1 U = U R^-1", [&](const TestFunction& x) { return L(Rinv, L(U, x)); },
        [&](const TestFunction& x) { return L(U, L(Rinv, x)); });
    add("left: W R = e^h R W", [&](const TestFunction& x) { return L(W, L(R, x)); },
        [&](const TestFunction& x) { return L(R, L(W, x)).scaled(std::exp(h)); });
    add("left: W R^-1 = e^-h R^-1 W",
        [&](const TestFunction& x) { return L(W, L(Rinv, x)); },
        [&](const TestFunction& x) { return L(Rinv, L(W, x)).scaled(std::exp(-h)); });
    add("left: W^-1 R = e^-h R W^-1",
        [&](const TestFunction& x) { return L(Winv, L(R, x)); },
        [&](const TestFunction& x) { return L(R, L(Winv, x)).scaled(std::exp(-h)); });
    add("left: W^-1 R^-1 = e^h R^-1 W^-1",
        [&](const TestFunction& x) { return L(Winv, L(Rinv, x)); },
        [&](const TestFunction& x) { return L(Rinv, L(Winv, x)).scaled(std::exp(h)); });
    add("left: W U = U W + h W", [&](const TestFunction& x) { return L(W, L(U, x)); },
        [&](const TestFunction& x) { return L(U, L(W, x)) + L(W, x).scaled(h); });
    add("left: W^-1 U = U W^-1 - h W^-1",
        [&](const TestFunction& x) { return L(Winv, L(U, x)); },
        [&](const TestFunction& x) { return L(U, L(Winv, x)) - L(Winv, x).scaled(h); });

    // Mirrored relations for the right action: xi(AB) = (xi A) B.
    add("right: W W^-1 = 1", [&](const TestFunction& x) { return Rt(Winv, Rt(W, x)); },
        [&](const TestFunction& x) { return x; });
    add("right: W^-1 W = 1", [&](const TestFunction& x) { return Rt(W, Rt(Winv, x)); },
        [&](const TestFunction& x) { return x; });
    add("right: R R^-1 = 1", [&](const TestFunction& x) { return Rt(Rinv, Rt(R, x)); },
        [&](const TestFunction& x) { return x; });
    add("right: R^-1 R = 1", [&](const TestFunction& x) { return Rt(R, Rt(Rinv, x)); },
        [&](const TestFunction& x) { return x; });
    add("right: R U = U R", [&](const TestFunction& x) { return Rt(U, Rt(R, x)); },
        [&](const TestFunction& x) { return Rt(R, Rt(U, x)); });
    add("right: R^-1 U = U R^-1", [&](const TestFunction& x) { return Rt(U, Rt(Rinv, x)); },
        [&](const TestFunction& x) { return Rt(Rinv, Rt(U, x)); });
    add("right: W R = e^h' R W", [&](const TestFunction& x) { return Rt(R, Rt(W, x)); },
        [&](const TestFunction& x) { return Rt(W, Rt(R, x)).scaled(std::exp(hp)); });
    add("right: W R^-1 = e^-h' R^-1 W",
        [&](const TestFunction& x) { return Rt(Rinv, Rt(W, x)); },
        [&](const TestFunction& x) { return Rt(W, Rt(Rinv, x)).scaled(std::exp(-hp)); });
    add("right: W^-1 R = e^-h' R W^-1",
        [&](const TestFunction& x) { return Rt(R, Rt(Winv, x)); },
        [&](const TestFunction& x) { return Rt(Winv, Rt(R, x)).scaled(std::exp(-hp)); });
    add("right: W^-1 R^-1 = e^h' R^-1 W^-1",
        [&](const TestFunction& x) { return Rt(Rinv, Rt(Winv, x)); },
        [&](const TestFunction& x) { return Rt(Winv, Rt(Rinv, x)).scaled(std::exp(hp)); });
    add("right: W U = U W + h' W", [&](const TestFunction& x) { return Rt(U, Rt(W, x)); },
        [&](const TestFunction& x) { return Rt(W, Rt(U, x)) + Rt(W, x).scaled(hp); });
    add("right: W^-1 U = U W^-1 - h' W^-1",
        [&](const TestFunction& x) { return Rt(U, Rt(Winv, x)); },
        [&](const TestFunction& x) { return Rt(Winv, Rt(U, x)) - Rt(Winv, x).scaled(hp); });

    // Bimodule compatibility (A xi) B = A (xi B) for every generator pair.
    const Letter gens[] = {U, R, Rinv, W, Winv};
    for (Letter a : gens) {
        for (Letter b : gens) {
            std::string name = std::string("compat: (") + letter_name(a) + " xi) " +
                               letter_name(b) + " = " + letter_name(a) + " (xi " +
                               letter_name(b) + ")";
            add(name, [&, a, b](const TestFunction& x) { return Rt(b, L(a, x)); },
                [&, a, b](const TestFunction& x) { return L(a, Rt(b, x)); });
        }
    }
    return report;
}

std::complex<double> inner_product(const TestFunction& xi, const TestFunction& eta,
                                   const QuadratureConfig& cfg) {
    std::complex<double> acc(0);
    TestFunction etabar = eta.conj();
    std::vector<int> ks = xi.support();
    for (int k : eta.support()) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks) {
        auto f = [&xi, &etabar, k](double x) { return xi.eval(x, k) * etabar.eval(x, k); };
        acc += integrate_line(f, cfg).value;
    }
    return acc;
}

std::pair<TestFunction, TestFunction> connection(const BimoduleParams& p,
                                                 const TestFunction& xi) {
    if (p.left.lambda0 == 0.0 || p.left.eps == 0.0)
        throw Error(errc::degenerate_params,
                    "connection needs lambda0 != 0 and eps != 0");
    TestFunction nu = xi.dx().scaled(1.0 / p.left.lambda0);
    TestFunction nv = xi.mul_linear(1.0, 0.0).scaled(Cplx(0, 1) / p.left.eps);
    return {nu, nv};
}

std::complex<double> connection_curvature(const BimoduleParams& p) {
    if (p.left.lambda0 == 0.0 || p.left.eps == 0.0)
        throw Error(errc::degenerate_params,
                    "connection needs lambda0 != 0 and eps != 0");
    return Cplx(0, 1) / (p.left.lambda0 * p.left.eps);
}

MeasuredCurvature measure_curvature(const BimoduleParams& p, const TestFunction& xi,
                                    const SampleGrid& grid) {
    auto [nu, nv] = connection(p, xi);
    TestFunction commutator = connection(p, nv).first - connection(p, nu).second;

    MeasuredCurvature out;
    double best = 0.0;
    struct Sample { double x; int k; Cplx ratio; };
    std::vector<Sample> samples;
    for (int k : xi.support()) {
        for (int i = 0; i < grid.x_count; ++i) {
            double x = grid.x_min +
                       (grid.x_max - grid.x_min) * i / std::max(1, grid.x_count - 1);
            Cplx base = xi.eval(x, k);
            if (std::abs(base) <= 1e-6) continue;
            Cplx ratio = commutator.eval(x, k) / base;
            samples.push_back({x, k, ratio});
            if (std::abs(base) > best) {
                best = std::abs(base);
                out.value = ratio;
            }
        }
    }
    if (best == 0.0)
        throw Error(errc::domain_error,
                    "test function is below threshold everywhere on the sample grid");
    for (const auto& s : samples)
        out.max_deviation = std::max(out.max_deviation, std::abs(s.ratio - out.value));
    return out;
}

std::vector<TestFunction> standard_test_functions() {
    std::vector<TestFunction> fns;

    fns.push_back(TestFunction::gaussian(0, 1.0, 0.0));

    TestFunction two_slice = TestFunction::gaussian(1, 0.7, 0.5, Cplx(1.0, 0.5));
    two_slice = two_slice + TestFunction::gaussian(-2, 1.3, -0.4);
    fns.push_back(two_slice);

    TestFunction poly;
    poly.add_atom(2, TestFunction::Atom{{Cplx(1.0), Cplx(0.0, 0.3), Cplx(0.2)}, 0.9, 0.2, 0.0});
    poly.add_atom(0, TestFunction::Atom{{Cplx(0.5, -0.25), Cplx(1.0)}, 1.1, -0.3, 0.0});
    fns.push_back(poly);

    return fns;
}

BimoduleParams solve_connection_params(double hbar, double hbarp, double eps, int r, int rp,
                                       bool alt_right_sign) {
    if (eps == 0.0 || r == 0 || rp == 0)
        throw Error(errc::degenerate_params, "need eps != 0 and r, r' nonzero");
    double scale = std::max({1.0, std::abs(hbar), std::abs(hbarp)});
    if (std::abs(hbar - hbarp) <= kParamTol * scale)
        throw Error(errc::equal_planck,
                    "a bimodule connection forces hbar = hbar' = 0, where it degenerates");
    double lhs = r * hbarp, rhs = rp * hbar;
    if (std::abs(lhs - rhs) > kParamTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
        throw Error(errc::incompatible_ratio, "r/r' must equal hbar/hbar'");
    if (r == rp)
        throw Error(errc::degenerate_params, "need r != r'");

    double lambda0 = hbar * rp / (eps * (r - rp));
    double lambda1 = -hbar / (r - rp);
    double mu1 = -hbarp / (r - rp);

    BimoduleParams p;
    p.left = LeftParams::make(lambda0, lambda1, eps, r, hbar);
    if (alt_right_sign) {
        // Deliberately solves mu0 eps' + mu1 r' = -hbar'; the right module
        // relations then fail, demonstrating the sign is forced.
        p.right = RightParams{lambda0, (-hbarp - lambda0 * eps) / rp, eps, rp, hbarp};
    } else {
        p.right = RightParams::make(lambda0, mu1, eps, rp, hbarp);
    }
    return p;
}

}  // namespace catenoid
