#ifndef CAMPO_TESTS_ORACLES_HPP
#define CAMPO_TESTS_ORACLES_HPP

#include "campo/campo.hpp"

#include <sstream>
#include <string>

namespace campo::test {

// Text of a univariate polynomial with `arg` substituted for its variable.
inline std::string poly_text(const UniPoly& p, const std::string& arg)
{
    std::ostringstream os;
    os << "0";
    for (const auto& [e, c] : p.coeffs()) os << " + (" << c.str() << ")*(" << arg << ")^(" << e << ")";
    return os.str();
}

inline std::string derivative_text(const UniPoly& p)
{
    std::ostringstream os;
    os << "0";
    for (const auto& [e, c] : p.coeffs())
        if (e != 0) os << " + " << e << "*(" << c.str() << ")*x^(" << e - 1 << ")";
    return os.str();
}

// Condition (*) by direct expansion through the parser: every monomial of
// lambda(R) (m p + n x p') - a p must carry x^l.
inline bool star_holds(const fam::BIII& s)
{
    std::string R = "x^" + std::to_string(s.m) + "*(x^" + std::to_string(s.l) + "*y + " + poly_text(s.p, "x") + ")^" +
                    std::to_string(s.n);
    std::string expr = "(" + poly_text(s.lambda, R) + ")*(" + std::to_string(s.m) + "*(" + poly_text(s.p, "x") +
                       ") + " + std::to_string(s.n) + "*x*(" + derivative_text(s.p) + ")) - (" + s.a.str() + ")*(" +
                       poly_text(s.p, "x") + ")";
    LaurentPoly2 e = parse_laurent(expr);
    for (const auto& [m, c] : e.terms())
        if (m.i < s.l) return false;
    return true;
}

}  // namespace campo::test

#endif  // CAMPO_TESTS_ORACLES_HPP
