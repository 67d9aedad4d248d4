#pragma once

#include <memory>
#include <string>
#include <vector>

#include "catenoid/freealg.hpp"
#include "catenoid/localization.hpp"

namespace catenoid {

/**
 * Surface syntax tree for algebra expressions. Grammar:
 *
 *   expr   := ['-'] term (('+' | '-') term)*
 *   term   := factor (('*' | '/')? factor)*     (juxtaposition multiplies)
 *   factor := atom ('^' ['-'] integer)?
 *   atom   := integer | 'i' | 'hbar' | 'q' | 'U' | 'R' | 'W'
 *           | '(' expr ')' | 'inv(' expr ')'
 *
 * '^' binds tighter than multiplication, which binds tighter than '+'/'-';
 * juxtaposition and '*' are the same (noncommutative, left to right), and
 * 'a / b' means a * inv(b).
 */
struct Expr {
    enum class Kind {
        integer, imag_unit, hbar, q, gen_u, gen_r, gen_w,
        neg, add, sub, mul, div, pow, inv,
    };

    Kind kind;
    mpz_class int_value;             // integer
    int exponent = 0;                // pow
    std::vector<std::unique_ptr<Expr>> args;
    std::size_t offset = 0;          // source position

    static std::unique_ptr<Expr> leaf(Kind k, std::size_t off);
};

using ExprPtr = std::unique_ptr<Expr>;

// Parses the full input; throws ParseError (SyntaxError/UnknownSymbol codes)
// with the byte offset of the offending token.
ExprPtr parse_expr(const std::string& text);

// Evaluates in the localized algebra: inv() and '/' produce certified
// inverses (NotCertifiedPositive when no certificate exists).
LocalElement eval_local(const Expr& e);

// Evaluates in the free algebra on the letters U, R, R^-1, W, W^-1;
// rejects inv() and division by non-scalars.
FreeElement eval_free(const Expr& e);

// True when every W-coefficient is a polynomial (denominator one), i.e. the
// element lies in the image of the polynomial algebra.
bool is_polynomial(const LocalElement& a);

// Converts a polynomial LocalElement back into the normal-form basis.
AlgElement to_alg(const LocalElement& a);

}  // namespace catenoid
