#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <complex>
#include <iosfwd>
#include <sstream>

namespace su21 {

// Exact rational number on 64-bit numerator/denominator.  All intermediate
// products go through 128-bit integers; overflow past 64 bits after
// normalization throws, it is never silently wrapped.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return double(num_) / double(den_); }

    Rational operator-() const { return Rational(-num_, den_, nocheck{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        std::ostringstream os;
        os << num_;
        if (den_ != 1) os << '/' << den_;
        return os.str();
    }

private:
    using i128 = __int128;
    struct nocheck {};
    Rational(long long n, long long d, nocheck) : num_(n), den_(d) {}

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        return Rational((long long)n, (long long)d, nocheck{});
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    void normalize() { *this = make(num_, den_); }

    long long num_, den_;
};

// Gaussian rational a + b i, the coefficient field for all exact
// Lie-algebra computations.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long long n) : re_(n) {}
    GaussianRational(const Rational& re) : re_(re) {}
    GaussianRational(const Rational& re, const Rational& im) : re_(re), im_(im) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    std::complex<double> to_complex() const {
        return {re_.to_double(), im_.to_double()};
    }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational c = a * b.conj();
        return GaussianRational(c.re_ / n, c.im_ / n);
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::ostringstream os;
        os << '(' << re_.str() << (im_ >= Rational(0) ? "+" : "") << im_.str() << "i)";
        return os.str();
    }

private:
    Rational re_, im_;
};

inline GaussianRational operator*(const Rational& a, const GaussianRational& b) {
    return GaussianRational(a) * b;
}

} // namespace su21
