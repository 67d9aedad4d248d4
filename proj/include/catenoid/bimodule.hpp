#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "catenoid/freealg.hpp"  // Letter
#include "catenoid/integration.hpp"

namespace catenoid {

/// Parameters of a left module structure; admissible when
/// lambda0*eps + lambda1*r = -hbar.
struct LeftParams {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double eps = 0.0;
    int r = 0;
    double hbar = 0.0;

    double constraint_residual() const { return lambda0 * eps + lambda1 * r + hbar; }
    static LeftParams make(double lambda0, double lambda1, double eps, int r, double hbar);
};

/// Parameters of a right module structure; admissible when
/// mu0*epsp + mu1*rp = +hbarp (the sign forced by the right relations).
struct RightParams {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double epsp = 0.0;
    int rp = 0;
    double hbarp = 0.0;

    double constraint_residual() const { return mu0 * epsp + mu1 * rp - hbarp; }
    static RightParams make(double mu0, double mu1, double epsp, int rp, double hbarp);
};

/// A bimodule needs the two one-sided structures plus the mixed conditions
/// lambda0*epsp + lambda1*rp = 0 and mu0*eps + mu1*r = 0.
struct BimoduleParams {
    LeftParams left;
    RightParams right;

    double mixed_left_residual() const {
        return left.lambda0 * right.epsp + left.lambda1 * right.rp;
    }
    double mixed_right_residual() const {
        return right.mu0 * left.eps + right.mu1 * left.r;
    }
};

/**
 * TestFunction: a function on R x Z with finite k-support, each slice a sum
 * of closed-form atoms P(x) * exp(-gamma (x - x0)^2 + c x). The family is
 * closed under every generator action and under d/dx, so all module
 * identities can be checked without any grid interpolation error beyond
 * ordinary floating-point arithmetic.
 */
class TestFunction {
public:
    struct Atom {
        std::vector<std::complex<double>> poly;  // poly[n] x^n
        double gamma = 1.0;                      // > 0
        double x0 = 0.0;
        double expcoef = 0.0;                    // real coefficient in e^{c x}

        std::complex<double> eval(double x) const;
        Atom shifted(double eps) const;  // x -> x - eps
        Atom derivative_factor() const;  // unused helper slot
    };

    TestFunction() = default;

    static TestFunction gaussian(int k, double gamma, double x0,
                                 std::complex<double> amplitude = 1.0);

    const std::map<int, std::vector<Atom>>& slices() const { return slices_; }
    bool empty() const { return slices_.empty(); }

    void add_atom(int k, Atom a);

    std::complex<double> eval(double x, int k) const;

    TestFunction operator+(const TestFunction& o) const;
    TestFunction operator-(const TestFunction& o) const;
    TestFunction scaled(std::complex<double> c) const;

    // x -> x - eps together with k -> k - r (the W-type shift).
    TestFunction shifted(double eps, int r) const;
    // multiply by e^{a x + b k} (a real; e^{b k} folded per slice, b complex).
    TestFunction mul_exp(double a, std::complex<double> b) const;
    // multiply by (a x + b k + c).
    TestFunction mul_linear(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c = 0.0) const;
    TestFunction dx() const;  // exact d/dx
    TestFunction conj() const;

    std::vector<int> support() const;

private:
    std::map<int, std::vector<Atom>> slices_;
};

// Generator actions of Proposition-style left and right module structures.
TestFunction act_left(Letter gen, const LeftParams& p, const TestFunction& xi);
TestFunction act_right(Letter gen, const RightParams& p, const TestFunction& xi);

struct IdentityResidual {
    std::string identity;
    double residual = 0.0;
};

struct ResidualReport {
    std::vector<IdentityResidual> rows;
    double max_residual = 0.0;
};

struct SampleGrid {
    double x_min = -5.0;
    double x_max = 5.0;
    int x_count = 20;
    int k_min = -5;
    int k_max = 5;
};

// Checks every defining relation for the left action, mirrored for the
// right action, and all 25 mixed compatibilities (A xi) B = A (xi B),
// reporting the max pointwise residual per identity over the grid.
ResidualReport verify_structure(const BimoduleParams& p,
                                const std::vector<TestFunction>& xis,
                                const SampleGrid& grid = {});

// <xi, eta> = sum_k Int xi(x,k) conj(eta(x,k)) dx.
std::complex<double> inner_product(const TestFunction& xi, const TestFunction& eta,
                                   const QuadratureConfig& cfg = {});

// The connection nabla_u xi = (1/lambda0) dxi/dx, nabla_v xi = (i/eps) x xi.
// Throws DegenerateParams when lambda0 = 0 or eps = 0.
std::pair<TestFunction, TestFunction> connection(const BimoduleParams& p,
                                                 const TestFunction& xi);

// Constant curvature of the one-sided connection: alpha*beta = i/(lambda0*eps).
std::complex<double> connection_curvature(const BimoduleParams& p);

/// Pointwise curvature measurement: the ratio (nabla_u nabla_v -
/// nabla_v nabla_u) xi / xi, reported at the sample point where |xi| is
/// largest, together with its worst deviation over all points with
/// |xi| > 1e-6.
struct MeasuredCurvature {
    std::complex<double> value;
    double max_deviation = 0.0;
};

MeasuredCurvature measure_curvature(const BimoduleParams& p, const TestFunction& xi,
                                    const SampleGrid& grid = {});

// A small deterministic family of test functions: plain Gaussians plus
// polynomial-weighted ones spread over several k slices.
std::vector<TestFunction> standard_test_functions();

// Solves the bimodule-connection constraints for given (hbar, hbar', eps, r, r'):
// lambda0 = mu0 = hbar r'/(eps(r - r')), lambda1 = -hbar/(r - r'),
// mu1 = -hbar'/(r - r'), eps' = eps. Requires r/r' = hbar/hbar' (else
// IncompatibleRatio) and hbar != hbar' (else EqualPlanck). Setting
// alt_right_sign solves the right constraint with -hbar' instead, which
// breaks the right module relations; it exists to demonstrate that the
// +hbar' convention is forced.
BimoduleParams solve_connection_params(double hbar, double hbarp, double eps, int r, int rp,
                                       bool alt_right_sign = false);

}  // namespace catenoid
