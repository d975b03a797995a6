#include "sdlab/cyclotomic.hpp"

#include <cmath>
#include <map>

#include "sdlab/errors.hpp"

namespace sdlab {

namespace {

// quotient of integer polynomials, exact (remainder must vanish);
// coefficients ascending, divisor monic up to sign of leading coefficient
std::vector<std::int64_t> exact_divide(std::vector<std::int64_t> num,
                                       const std::vector<std::int64_t>& den) {
    const std::size_t dn = num.size() - 1;
    const std::size_t dd = den.size() - 1;
    if (den.back() != 1 && den.back() != -1) throw Error("divisor is not monic");
    std::vector<std::int64_t> q(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
        std::int64_t c = num[i] / den.back();
        q[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (std::int64_t c : num)
        if (c != 0) throw Error("cyclotomic division left a remainder");
    return q;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t order) {
    if (order < 1) throw InvalidParams("cyclotomic order must be >= 1");
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    auto hit = cache.find(order);
    if (hit != cache.end()) return hit->second;

    // x^order - 1 = ∏_{d | order} Φ_d
    std::vector<std::int64_t> poly(static_cast<std::size_t>(order + 1), 0);
    poly.front() = -1;
    poly.back() = 1;
    for (std::int64_t d = 1; d < order; ++d)
        if (order % d == 0) poly = exact_divide(std::move(poly), cyclotomic_polynomial(d));
    cache[order] = poly;
    return poly;
}

std::complex<double> CycValue::to_complex() const {
    std::complex<double> z(0.0, 0.0);
    const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(order_);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        double a = step * static_cast<double>(k);
        z += c_[k].to_double() * std::complex<double>(std::cos(a), std::sin(a));
    }
    return z;
}

bool CycValue::is_zero_in_field() const {
    std::vector<Rational> r = c_;
    const std::vector<std::int64_t> phi = cyclotomic_polynomial(order_);
    const std::size_t dd = phi.size() - 1;
    // long division by the monic Φ_L; only the remainder matters
    for (std::size_t i = r.size(); i-- > dd;) {
        if (r[i].is_zero()) continue;
        Rational c = r[i];
        for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= c * Rational(phi[j]);
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace sdlab
