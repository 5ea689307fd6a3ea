#ifndef CAMPO_RATIONAL_HPP
#define CAMPO_RATIONAL_HPP

#include "campo/gcd.hpp"

#include <stdexcept>

namespace campo {

/// Quotient num/den of Laurent polynomials in canonical form: den is a polynomial with no
/// monomial content (monomials are units and live in num), coprime to num, and monic
/// under graded lex. Pure Laurent polynomials therefore have den == 1.
class RationalFn2 {
public:
    RationalFn2() : den_(1) {}
    RationalFn2(LaurentPoly2 num)  // NOLINT(google-explicit-constructor)
        : num_(std::move(num)), den_(1)
    {
    }
    RationalFn2(const CNum& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFn2(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFn2(LaurentPoly2 num, LaurentPoly2 den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const LaurentPoly2& num() const { return num_; }
    const LaurentPoly2& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_constant(); }
    bool is_polynomial() const { return is_laurent() && num_.is_polynomial(); }
    bool is_constant() const { return is_laurent() && num_.is_constant(); }
    CNum constant_value() const { return num_.constant_value(); }

    RationalFn2 operator-() const
    {
        RationalFn2 r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFn2 operator+(const RationalFn2& a, const RationalFn2& b)
    {
        if (a.den_ == b.den_) {
            if (a.den_.is_constant()) return RationalFn2(a.num_ + b.num_);
            return RationalFn2(a.num_ + b.num_, a.den_);
        }
        return RationalFn2(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn2 operator-(const RationalFn2& a, const RationalFn2& b) { return a + (-b); }
    friend RationalFn2 operator*(const RationalFn2& a, const RationalFn2& b)
    {
        if (a.den_.is_constant() && b.den_.is_constant()) return RationalFn2(a.num_ * b.num_);
        return RationalFn2(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn2 operator/(const RationalFn2& a, const RationalFn2& b)
    {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RationalFn2(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFn2& operator+=(const RationalFn2& o) { return *this = *this + o; }
    RationalFn2& operator-=(const RationalFn2& o) { return *this = *this - o; }
    RationalFn2& operator*=(const RationalFn2& o) { return *this = *this * o; }

    RationalFn2 inverse() const { return RationalFn2(1) / *this; }

    RationalFn2 pow(int e) const
    {
        if (e < 0) return inverse().pow(-e);
        if (den_.is_constant()) return RationalFn2(num_.pow(static_cast<unsigned>(e)));
        return RationalFn2(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
    }

    RationalFn2 diff(int k) const
    {
        if (den_.is_constant()) return RationalFn2(num_.diff(k));
        return RationalFn2(num_.diff(k) * den_ - num_ * den_.diff(k), den_ * den_);
    }

    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const
    {
        return num_.eval(x, y) / den_.eval(x, y);
    }

    friend bool operator==(const RationalFn2& a, const RationalFn2& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RationalFn2& a, const RationalFn2& b) { return !(a == b); }

private:
    void normalize()
    {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        Mono shift;
        LaurentPoly2 d = strip_monomial(den_, &shift);
        LaurentPoly2 n = num_.shifted(Mono{-shift.i, -shift.j});
        if (n.is_zero()) {
            num_ = LaurentPoly2{};
            den_ = LaurentPoly2(1);
            return;
        }
        if (!d.is_constant()) {
            auto g = gcd2(n, d);
            if (!g.is_constant()) {
                n = *divide_exact(n, g);
                d = *divide_exact(d, g);
            }
        }
        CNum lc = d.leading_coeff();
        num_ = n * (CNum(1) / lc);
        den_ = d * (CNum(1) / lc);
    }

    LaurentPoly2 num_;
    LaurentPoly2 den_;
};

}  // namespace campo

#endif  // CAMPO_RATIONAL_HPP
