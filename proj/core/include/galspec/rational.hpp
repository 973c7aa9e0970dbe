#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace galspec {

// Exact rational arithmetic on 64-bit integers with 128-bit intermediates.
// Coefficients in this project stay small (lattice index polynomials), so
// an overflow indicates a usage error and throws rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize_small(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

    static std::int64_t checked_cast(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("Rational: 64-bit overflow after reduction");
        return static_cast<std::int64_t>(v);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) return Rational();
        __int128 g = gcd128(n, d);
        Rational r;
        r.num_ = checked_cast(n / g);
        r.den_ = checked_cast(d / g);
        return r;
    }

    void normalize_small() {
        Rational r = from_i128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }
};

} // namespace galspec
