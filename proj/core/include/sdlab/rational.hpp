#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>

#include "sdlab/errors.hpp"

namespace sdlab {

// Exact rational on int64 numerator/denominator, always in lowest terms
// with positive denominator.  All arithmetic runs through __int128
// intermediates and throws OverflowError if a reduced result leaves the
// int64 range: results are exact or absent, never wrapped.
class Rational {
public:
    constexpr Rational() noexcept : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) noexcept : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) { *this = normalize(n, d); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const {
        if (num_ == INT64_MIN) throw OverflowError("rational negate overflow");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return normalize(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return normalize(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return normalize(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return normalize(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        // cross products stay within 126 bits
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // "n/d" for non-integers, "n" otherwise
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // accepts "n" or "n/d" with optional leading '-'
    static Rational parse(std::string_view s);

    // reduced rational from 128-bit intermediates; OverflowError if the
    // reduced form leaves int64
    static Rational make128(__int128 n, __int128 d) { return normalize(n, d); }

private:
    using i128 = __int128;

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational normalize(i128 n, i128 d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return Rational();
        i128 g = gcd128(n < 0 ? -n : n, d);
        n /= g;
        d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw OverflowError("rational out of int64 range");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational Rational::parse(std::string_view s) {
    auto bad = [&] { throw ParseError("bad rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::size_t slash = s.find('/');
    auto parse_int = [&](std::string_view t) -> std::int64_t {
        if (t.empty()) bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) bad();
        i128 v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') bad();
            v = v * 10 + (t[i] - '0');
            if (v > i128(INT64_MAX) + 1) throw OverflowError("integer literal too large");
        }
        if (t[0] == '-') v = -v;
        if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer literal too large");
        return static_cast<std::int64_t>(v);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

}  // namespace sdlab
