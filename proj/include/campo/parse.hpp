#ifndef CAMPO_PARSE_HPP
#define CAMPO_PARSE_HPP

#include "campo/exppoly.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace campo {

/// Syntax or semantic error in an expression, with the byte offset where it was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, const Vars& vars) : text_(text), vars_(vars) {}

    ExpPoly run()
    {
        skip();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        ExpPoly e = expr();
        skip();
        if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    ExpPoly expr()
    {
        ExpPoly acc = term();
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    ExpPoly term()
    {
        ExpPoly acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                ExpPoly d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                auto inv = d.inverse();
                if (!inv) throw ParseError("division by a sum of exponential terms", at);
                acc *= *inv;
            } else {
                return acc;
            }
        }
    }

    ExpPoly unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    ExpPoly power()
    {
        ExpPoly base = atom();
        if (!accept('^')) return base;
        skip();
        std::size_t at = pos_;
        bool paren = accept('(');
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        skip();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("exponent must be an integer", pos_);
        long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + (text_[pos_++] - '0');
            if (e > 100000) throw ParseError("exponent too large", at);
        }
        if (paren) expect(')');
        if (neg && base.is_zero()) throw ParseError("negative power of zero", at);
        try {
            return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
        } catch (const std::invalid_argument& ex) {
            throw ParseError(ex.what(), at);
        }
    }

    ExpPoly atom()
    {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == '(') {
            ++pos_;
            ExpPoly e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string id(text_.substr(start, pos_ - start));
            if (id == "exp") {
                expect('(');
                std::size_t at = pos_;
                ExpPoly arg = expr();
                expect(')');
                if (!arg.is_rational()) throw ParseError("nested exponentials are not supported", at);
                auto r = arg.as_rational();
                if (!r.is_laurent()) throw ParseError("exp argument must be a (Laurent) polynomial", at);
                return ExpPoly::exp(arg.as_laurent());
            }
            if (id == "i") return ExpPoly(CNum::i());
            if (!vars_.first.empty() && id == vars_.first) return ExpPoly(LaurentPoly2::var(0));
            if (!vars_.second.empty() && id == vars_.second) return ExpPoly(LaurentPoly2::var(1));
            throw ParseError("unknown identifier '" + id + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    ExpPoly number()
    {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
        Rat value(digits);
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::string frac;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) frac += text_[pos_++];
            if (!frac.empty()) {
                mpz_class scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
                value += Rat(mpz_class(frac), scale);
                value.canonicalize();
            }
        }
        return ExpPoly(CNum(value));
    }

    std::string_view text_;
    Vars vars_;
    std::size_t pos_ = 0;
};

inline std::string mono_str(Mono m, const Vars& vars)
{
    std::string out;
    auto one = [&](const std::string& name, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e != 1) out += "^" + std::to_string(e);
    };
    one(vars.first, m.i);
    one(vars.second, m.j);
    return out;
}

}  // namespace detail

/// Parse the expression grammar: integers, decimals, rationals via '/', the unit i,
/// the two declared variables, + - * / ^ (integer exponents), parentheses and exp(<poly>).
inline ExpPoly parse(std::string_view text, const Vars& vars = {})
{
    return detail::Parser(text, vars).run();
}

inline LaurentPoly2 parse_laurent(std::string_view text, const Vars& vars = {})
{
    ExpPoly e = parse(text, vars);
    if (!e.is_laurent()) throw ParseError("expected a Laurent polynomial", 0);
    return e.as_laurent();
}

inline CNum parse_scalar(std::string_view text)
{
    ExpPoly e = parse(text, Vars{"", ""});
    if (!e.is_laurent()) throw ParseError("expected a constant", 0);
    return e.as_laurent().constant_value();
}

/// Univariate Laurent polynomial in the named variable.
inline UniPoly parse_unipoly(std::string_view text, const std::string& var)
{
    ExpPoly e = parse(text, Vars{var, ""});
    if (!e.is_laurent()) throw ParseError("expected a Laurent polynomial in " + var, 0);
    std::map<int, CNum> coeffs;
    LaurentPoly2 poly = e.as_laurent();
    for (const auto& [m, c] : poly.terms()) coeffs.emplace(m.i, c);
    return UniPoly(var, coeffs);
}

/// Canonical text: terms in descending graded-lex order.
inline std::string to_string(const LaurentPoly2& p, const Vars& vars = {})
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = detail::mono_str(m, vars);
        bool negative_real = c.is_real() && sgn(c.re()) < 0;
        CNum mag = negative_real ? -c : c;
        std::string coeff = mag.str();
        std::string body;
        if (mono.empty()) body = coeff;
        else if (mag.is_one()) body = mono;
        else body = coeff + "*" + mono;
        if (first) out += negative_real ? "-" + body : body;
        else out += negative_real ? " - " + body : " + " + body;
        first = false;
    }
    return out;
}

inline std::string to_string(const RationalFn2& r, const Vars& vars = {})
{
    if (r.den().is_constant()) return to_string(r.num(), vars);
    return "(" + to_string(r.num(), vars) + ")/(" + to_string(r.den(), vars) + ")";
}

inline std::string to_string(const ExpPoly& e, const Vars& vars = {})
{
    if (e.is_zero()) return "0";
    if (e.is_rational()) return to_string(e.as_rational(), vars);
    std::string out;
    for (const auto& t : e.terms()) {
        if (!out.empty()) out += " + ";
        if (t.exponent.is_zero()) {
            out += "(" + to_string(t.coeff, vars) + ")";
            continue;
        }
        std::string ex = "exp(" + to_string(t.exponent, vars) + ")";
        if (t.coeff == RationalFn2(1)) out += ex;
        else out += "(" + to_string(t.coeff, vars) + ")*" + ex;
    }
    return out;
}

inline std::string to_string(const UniPoly& p)
{
    return to_string(p.as_laurent(0), Vars{p.var(), ""});
}

}  // namespace campo

#endif  // CAMPO_PARSE_HPP
