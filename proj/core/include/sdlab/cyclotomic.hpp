#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sdlab/rational.hpp"

namespace sdlab {

// L-th cyclotomic polynomial, integer coefficients ascending.  Computed by
// repeatedly dividing x^L - 1 by the cyclotomic polynomials of the proper
// divisors; exact integer long division throughout.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t order);

// Element of Q[x]/(x^L - 1) representing a rational combination of L-th
// roots of unity.  Addition and convolution are free; equality as complex
// numbers (i.e. in Q(ζ_L)) is decided exactly modulo the cyclotomic
// polynomial Φ_L.
class CycValue {
public:
    explicit CycValue(std::int64_t order) : order_(order), c_(static_cast<std::size_t>(order)) {
        if (order < 1) throw InvalidParams("cyclotomic order must be >= 1");
    }

    static CycValue from_rational(std::int64_t order, const Rational& r) {
        CycValue v(order);
        v.c_[0] = r;
        return v;
    }

    // r * ζ_L^k
    static CycValue root_power(std::int64_t order, std::int64_t k, const Rational& r = 1) {
        CycValue v(order);
        k %= order;
        if (k < 0) k += order;
        v.c_[static_cast<std::size_t>(k)] = r;
        return v;
    }

    std::int64_t order() const noexcept { return order_; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    CycValue& operator+=(const CycValue& o) {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    CycValue operator-(const CycValue& o) const {
        check_order(o);
        CycValue r(order_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }

    CycValue operator*(const CycValue& o) const {
        check_order(o);
        CycValue r(order_);
        const std::size_t l = c_.size();
        for (std::size_t i = 0; i < l; ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < l; ++j) {
                if (o.c_[j].is_zero()) continue;
                std::size_t k = i + j;
                if (k >= l) k -= l;
                r.c_[k] += c_[i] * o.c_[j];
            }
        }
        return r;
    }

    CycValue scaled(const Rational& r) const {
        CycValue v(order_);
        for (std::size_t i = 0; i < c_.size(); ++i) v.c_[i] = c_[i] * r;
        return v;
    }

    std::complex<double> to_complex() const;

    // zero in Q(ζ_L): remainder modulo Φ_L vanishes
    bool is_zero_in_field() const;

    bool equals_in_field(const CycValue& o) const { return (*this - o).is_zero_in_field(); }

private:
    void check_order(const CycValue& o) const {
        if (o.order_ != order_) throw InvalidParams("cyclotomic order mismatch");
    }

    std::int64_t order_;
    std::vector<Rational> c_;
};

}  // namespace sdlab
