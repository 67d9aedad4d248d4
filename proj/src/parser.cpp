#include "catenoid/parser.hpp"

#include <cctype>

namespace catenoid {

std::unique_ptr<Expr> Expr::leaf(Kind k, std::size_t off) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->offset = off;
    return e;
}

namespace {

struct Token {
    enum class Type { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Type type;
    std::string text;
    std::size_t offset;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i < text.size() && text[i] == '.')
                throw ParseError(errc::syntax_error,
                                 "decimal literals are not part of the exact grammar", i);
            out.push_back({Token::Type::integer, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Token::Type::ident, text.substr(start, i - start), start});
            continue;
        }
        Token::Type t;
        switch (c) {
        case '+': t = Token::Type::plus; break;
        case '-': t = Token::Type::minus; break;
        case '*': t = Token::Type::star; break;
        case '/': t = Token::Type::slash; break;
        case '^': t = Token::Type::caret; break;
        case '(': t = Token::Type::lparen; break;
        case ')': t = Token::Type::rparen; break;
        default:
            throw ParseError(errc::syntax_error,
                             std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({t, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::Type::end, "", text.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    ExprPtr run() {
        ExprPtr e = expr();
        if (peek().type != Token::Type::end)
            throw ParseError(errc::syntax_error, "trailing input", peek().offset);
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    bool starts_atom(const Token& t) const {
        return t.type == Token::Type::integer || t.type == Token::Type::ident ||
               t.type == Token::Type::lparen;
    }

    ExprPtr expr() {
        ExprPtr lhs;
        if (peek().type == Token::Type::minus) {
            std::size_t off = take().offset;
            auto e = Expr::leaf(Expr::Kind::neg, off);
            e->args.push_back(term());
            lhs = std::move(e);
        } else {
            lhs = term();
        }
        while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            Token op = take();
            auto e = Expr::leaf(op.type == Token::Type::plus ? Expr::Kind::add
                                                             : Expr::Kind::sub,
                                op.offset);
            e->args.push_back(std::move(lhs));
            e->args.push_back(term());
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (peek().type == Token::Type::star || peek().type == Token::Type::slash) {
                Token op = take();
                auto e = Expr::leaf(op.type == Token::Type::star ? Expr::Kind::mul
                                                                 : Expr::Kind::div,
                                    op.offset);
                e->args.push_back(std::move(lhs));
                e->args.push_back(factor());
                lhs = std::move(e);
            } else if (starts_atom(peek())) {
                auto e = Expr::leaf(Expr::Kind::mul, peek().offset);
                e->args.push_back(std::move(lhs));
                e->args.push_back(factor());
                lhs = std::move(e);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        if (peek().type != Token::Type::caret) return base;
        std::size_t off = take().offset;
        bool negative = false;
        if (peek().type == Token::Type::minus) {
            take();
            negative = true;
        } else if (peek().type == Token::Type::plus) {
            take();
        }
        if (peek().type != Token::Type::integer)
            throw ParseError(errc::syntax_error, "expected integer exponent", peek().offset);
        Token t = take();
        int e = 0;
        try {
            e = std::stoi(t.text);
        } catch (const std::exception&) {
            throw ParseError(errc::syntax_error, "exponent out of range", t.offset);
        }
        if (e > 64)
            throw ParseError(errc::syntax_error, "exponent out of range", t.offset);
        auto node = Expr::leaf(Expr::Kind::pow, off);
        node->exponent = negative ? -e : e;
        node->args.push_back(std::move(base));
        return node;
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.type) {
        case Token::Type::integer: {
            Token tok = take();
            auto e = Expr::leaf(Expr::Kind::integer, tok.offset);
            e->int_value = mpz_class(tok.text, 10);  // base fixed: "069" is decimal
            return e;
        }
        case Token::Type::ident: {
            Token tok = take();
            if (tok.text == "i") return Expr::leaf(Expr::Kind::imag_unit, tok.offset);
            if (tok.text == "hbar") return Expr::leaf(Expr::Kind::hbar, tok.offset);
            if (tok.text == "q") return Expr::leaf(Expr::Kind::q, tok.offset);
            if (tok.text == "U") return Expr::leaf(Expr::Kind::gen_u, tok.offset);
            if (tok.text == "R") return Expr::leaf(Expr::Kind::gen_r, tok.offset);
            if (tok.text == "W") return Expr::leaf(Expr::Kind::gen_w, tok.offset);
            if (tok.text == "inv") {
                if (peek().type != Token::Type::lparen)
                    throw ParseError(errc::syntax_error, "expected '(' after inv",
                                     peek().offset);
                take();
                auto e = Expr::leaf(Expr::Kind::inv, tok.offset);
                e->args.push_back(expr());
                expect_rparen();
                return e;
            }
            throw ParseError(errc::unknown_symbol, "unknown symbol '" + tok.text + "'",
                             tok.offset);
        }
        case Token::Type::lparen: {
            take();
            ExprPtr e = expr();
            expect_rparen();
            return e;
        }
        default:
            throw ParseError(errc::syntax_error, "expected an atom", t.offset);
        }
    }

    void expect_rparen() {
        if (peek().type != Token::Type::rparen)
            throw ParseError(errc::syntax_error, "expected ')'", peek().offset);
        take();
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

LocalElement local_pow(const LocalElement& base, int e) {
    if (e < 0) return local_pow(loc_inv(base), -e);
    LocalElement r = LocalElement::one();
    for (int i = 0; i < e; ++i) r = loc_mul(r, base);
    return r;
}

FreeElement free_pow_gen(Letter pos, Letter neg, int e) {
    Word w(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? neg : pos);
    return FreeElement(w, Scalar::one());
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).run(); }

LocalElement eval_local(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::integer: {
        mpq_class v(e.int_value);
        return LocalElement::from_scalar(Scalar(GaussianRational(v)));
    }
    case Expr::Kind::imag_unit: return LocalElement::from_scalar(Scalar::imaginary_unit());
    case Expr::Kind::hbar: return LocalElement::from_scalar(Scalar::hbar());
    case Expr::Kind::q: return LocalElement::from_scalar(Scalar::q_power(1));
    case Expr::Kind::gen_u: return embed(AlgElement::u_gen());
    case Expr::Kind::gen_r: return embed(AlgElement::r_gen());
    case Expr::Kind::gen_w: return embed(AlgElement::w_gen());
    case Expr::Kind::neg: return -eval_local(*e.args[0]);
    case Expr::Kind::add: return eval_local(*e.args[0]) + eval_local(*e.args[1]);
    case Expr::Kind::sub: return eval_local(*e.args[0]) - eval_local(*e.args[1]);
    case Expr::Kind::mul: return loc_mul(eval_local(*e.args[0]), eval_local(*e.args[1]));
    case Expr::Kind::div:
        return loc_mul(eval_local(*e.args[0]), loc_inv(eval_local(*e.args[1])));
    case Expr::Kind::pow: return local_pow(eval_local(*e.args[0]), e.exponent);
    case Expr::Kind::inv: return loc_inv(eval_local(*e.args[0]));
    }
    throw Error(errc::domain_error, "unreachable expression kind");
}

FreeElement eval_free(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::integer: {
        mpq_class v(e.int_value);
        return FreeElement(Scalar(GaussianRational(v)));
    }
    case Expr::Kind::imag_unit: return FreeElement(Scalar::imaginary_unit());
    case Expr::Kind::hbar: return FreeElement(Scalar::hbar());
    case Expr::Kind::q: return FreeElement(Scalar::q_power(1));
    case Expr::Kind::gen_u: return FreeElement::generator(Letter::U);
    case Expr::Kind::gen_r: return FreeElement::generator(Letter::R);
    case Expr::Kind::gen_w: return FreeElement::generator(Letter::W);
    case Expr::Kind::neg: return -eval_free(*e.args[0]);
    case Expr::Kind::add: return eval_free(*e.args[0]) + eval_free(*e.args[1]);
    case Expr::Kind::sub: return eval_free(*e.args[0]) - eval_free(*e.args[1]);
    case Expr::Kind::mul: return free_mul(eval_free(*e.args[0]), eval_free(*e.args[1]));
    case Expr::Kind::div: {
        FreeElement den = eval_free(*e.args[1]);
        if (den.terms().size() == 1 && den.terms().begin()->first.empty()) {
            auto inv = den.terms().begin()->second.inverse();
            if (inv) return scalar_mul(*inv, eval_free(*e.args[0]));
        }
        throw Error(errc::domain_error,
                    "division by a non-scalar is not defined in the polynomial algebra");
    }
    case Expr::Kind::pow: {
        const Expr& base = *e.args[0];
        int exp = e.exponent;
        if (base.kind == Expr::Kind::gen_r) return free_pow_gen(Letter::R, Letter::Rinv, exp);
        if (base.kind == Expr::Kind::gen_w) return free_pow_gen(Letter::W, Letter::Winv, exp);
        FreeElement b = eval_free(base);
        if (exp < 0) {
            if (b.terms().size() == 1 && b.terms().begin()->first.empty()) {
                auto inv = b.terms().begin()->second.inverse();
                if (inv) {
                    FreeElement r(inv->pow(static_cast<unsigned>(-exp)));
                    return r;
                }
            }
            throw Error(errc::domain_error,
                        "negative powers are only defined for R, W and scalars here");
        }
        FreeElement r = FreeElement::one();
        for (int i = 0; i < exp; ++i) r = free_mul(r, b);
        return r;
    }
    case Expr::Kind::inv:
        throw Error(errc::domain_error,
                    "inv() is not defined in the polynomial algebra; use the localized commands");
    }
    throw Error(errc::domain_error, "unreachable expression kind");
}

bool is_polynomial(const LocalElement& a) {
    for (const auto& [k, f] : a.terms())
        if (!f.den_is_one()) return false;
    return true;
}

AlgElement to_alg(const LocalElement& a) {
    AlgElement out;
    for (const auto& [k, f] : a.terms()) {
        if (!f.den_is_one())
            throw Error(errc::domain_error, "element is not polynomial");
        for (const auto& [key, c] : f.num().terms())
            out.insert({key.upow, key.rpow, k}, c);
    }
    return out;
}

}  // namespace catenoid
