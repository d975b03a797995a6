#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "sdlab/errors.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

inline constexpr double kDefaultTolerance = 1e-9;

// Characteristic-function value: either exact (rational modulus, rational
// angle in turns, i.e. z = m·e^{2πi·a}) or an approximate complex double.
// Products of exact values stay exact; anything touching an approximate
// value becomes approximate.  Exact zero has angle 0; angles live in [0,1).
class Value {
public:
    Value() : exact_(true), modulus_(0), angle_(0), z_(0.0, 0.0) {}

    static Value zero() { return Value(); }
    static Value one() { return from_rational(Rational(1)); }

    static Value from_rational(const Rational& r) {
        Value v;
        v.exact_ = true;
        v.modulus_ = r.abs();
        v.angle_ = r.sign() < 0 ? Rational(1, 2) : Rational(0);
        return v;
    }

    static Value exact_polar(const Rational& modulus, const Rational& angle_turns) {
        if (modulus.sign() < 0) throw InvalidParams("value modulus must be >= 0");
        Value v;
        v.exact_ = true;
        v.modulus_ = modulus;
        v.angle_ = modulus.is_zero() ? Rational(0) : angle_mod1(angle_turns);
        return v;
    }

    static Value approx(std::complex<double> z) {
        Value v;
        v.exact_ = false;
        v.z_ = z;
        return v;
    }

    bool exact() const noexcept { return exact_; }

    bool is_zero(double tol = 0.0) const {
        return exact_ ? modulus_.is_zero() : std::abs(z_) <= tol;
    }

    Rational exact_modulus() const {
        if (!exact_) throw DomainError("value is not exact");
        return modulus_;
    }

    Rational exact_angle() const {
        if (!exact_) throw DomainError("value is not exact");
        return angle_;
    }

    // real rational values only (angle 0 or 1/2)
    std::optional<Rational> as_exact_real() const {
        if (!exact_) return std::nullopt;
        if (angle_.is_zero()) return modulus_;
        if (angle_ == Rational(1, 2)) return -modulus_;
        return std::nullopt;
    }

    double abs() const { return exact_ ? modulus_.to_double() : std::abs(z_); }

    std::complex<double> to_complex() const {
        if (!exact_) return z_;
        double a = 2.0 * pi() * angle_.to_double();
        return modulus_.to_double() * std::complex<double>(std::cos(a), std::sin(a));
    }

    Value conj() const {
        if (!exact_) return approx(std::conj(z_));
        return exact_polar(modulus_, -angle_);
    }

    Value modulus_squared() const {
        if (!exact_) {
            double m = std::abs(z_);
            return approx({m * m, 0.0});
        }
        return from_rational(modulus_ * modulus_);
    }

    friend Value operator*(const Value& a, const Value& b) {
        if (a.exact_ && b.exact_)
            return exact_polar(a.modulus_ * b.modulus_, a.angle_ + b.angle_);
        return approx(a.to_complex() * b.to_complex());
    }

    // exact pairs compare exactly; otherwise |a-b| <= tol
    static bool equal(const Value& a, const Value& b, double tol) {
        if (a.exact_ && b.exact_) return a.modulus_ == b.modulus_ && a.angle_ == b.angle_;
        return distance(a, b) <= tol;
    }

    static double distance(const Value& a, const Value& b) {
        return std::abs(a.to_complex() - b.to_complex());
    }

    std::string to_string() const {
        if (exact_) {
            if (angle_.is_zero()) return modulus_.to_string();
            if (angle_ == Rational(1, 2)) return (-modulus_).to_string();
            return modulus_.to_string() + "*e(" + angle_.to_string() + ")";
        }
        return "(" + std::to_string(z_.real()) + "," + std::to_string(z_.imag()) + ")";
    }

    static constexpr double pi() { return 3.14159265358979323846; }

private:
    static Rational angle_mod1(const Rational& a) {
        // a - floor(a): den stays, num reduced into [0, den)
        std::int64_t n = a.num() % a.den();
        if (n < 0) n += a.den();
        return Rational(n, a.den());
    }

    bool exact_;
    Rational modulus_;  // exact repr
    Rational angle_;    // turns in [0,1)
    std::complex<double> z_;
};

}  // namespace sdlab
