#ifndef CAMPO_NUMBER_HPP
#define CAMPO_NUMBER_HPP

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace campo {

/// Arbitrary-precision rational; mpq_class keeps numerator/denominator reduced
/// with a positive denominator after every arithmetic operation.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r)
{
    return r.get_str();
}

/// Exact Gaussian rational re + im*i.
class CNum {
public:
    CNum() = default;
    CNum(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    CNum(Rat re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
    CNum(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static CNum i() { return CNum(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    CNum conj() const { return CNum(re_, -im_); }
    Rat norm() const { return re_ * re_ + im_ * im_; }

    CNum operator-() const { return CNum(-re_, -im_); }

    CNum& operator+=(const CNum& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    CNum& operator-=(const CNum& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    CNum& operator*=(const CNum& o)
    {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    CNum& operator/=(const CNum& o)
    {
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ /= o.re_;
            return *this;
        }
        Rat n = o.norm();
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend CNum operator+(CNum a, const CNum& b) { return a += b; }
    friend CNum operator-(CNum a, const CNum& b) { return a -= b; }
    friend CNum operator*(CNum a, const CNum& b) { return a *= b; }
    friend CNum operator/(CNum a, const CNum& b) { return a /= b; }

    friend bool operator==(const CNum& a, const CNum& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const CNum& a, const CNum& b) { return !(a == b); }

    /// Total order (re first, then im); only used to canonicalize containers.
    friend int compare(const CNum& a, const CNum& b)
    {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0 ? -1 : 1;
        c = cmp(a.im_, b.im_);
        return c == 0 ? 0 : (c < 0 ? -1 : 1);
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    CNum pow(long e) const
    {
        if (e < 0) return CNum(1) / pow(-e);
        CNum result(1), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Text form accepted by the expression parser: "3/2", "-i", "(1/2+3*i)".
    std::string str() const
    {
        if (sgn(im_) == 0) return re_.get_str();
        std::string imag;
        if (im_ == 1) imag = "i";
        else if (im_ == -1) imag = "-i";
        else imag = im_.get_str() + "*i";
        if (sgn(re_) == 0) return imag;
        std::string out = "(" + re_.get_str();
        if (sgn(im_) > 0) out += "+";
        return out + imag + ")";
    }

private:
    Rat re_{0};
    Rat im_{0};
};

/// z^e by repeated squaring (std::pow on complex goes through log and fails at 0).
inline std::complex<double> ipow(std::complex<double> z, int e)
{
    if (e < 0) return 1.0 / ipow(z, -e);
    std::complex<double> r = 1;
    while (e > 0) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const CNum& c)
{
    return os << c.str();
}

}  // namespace campo

#endif  // CAMPO_NUMBER_HPP
