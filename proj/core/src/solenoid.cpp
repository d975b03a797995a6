#include "sdlab/solenoid.hpp"

#include <numeric>

#include "sdlab/primes.hpp"

namespace sdlab {

SupernaturalSpec::SupernaturalSpec(Height default_exponent,
                                   std::map<std::int64_t, Height> exceptions)
    : default_exponent_(default_exponent) {
    for (auto& [p, h] : exceptions) {
        if (!is_prime(p))
            throw InvalidParams("exception key " + std::to_string(p) + " is not prime");
        if (h != default_exponent_) exceptions_.emplace(p, h);  // canonical form
    }
}

Height SupernaturalSpec::height(std::int64_t p) const {
    auto it = exceptions_.find(p);
    return it == exceptions_.end() ? default_exponent_ : it->second;
}

SupernaturalSpec SupernaturalSpec::all_ones() { return SupernaturalSpec(Height(1), {}); }

SupernaturalSpec SupernaturalSpec::all_infinite() {
    return SupernaturalSpec(Height::infinity(), {});
}

SupernaturalSpec SupernaturalSpec::prime_tower(std::int64_t p) {
    if (!is_prime(p)) throw InvalidParams("prime_tower needs a prime");
    return SupernaturalSpec(Height(0), {{p, Height::infinity()}});
}

bool contains(const SupernaturalSpec& spec, const Rational& y) {
    if (y.is_integer()) return true;
    for (auto [p, e] : factorize(y.den())) {
        Height h = spec.height(p);
        if (h.is_infinite()) continue;
        if (static_cast<std::uint32_t>(e) > h.finite_value()) return false;
    }
    return true;
}

bool divisible_by(const SupernaturalSpec& spec, const Rational& y, std::int64_t k) {
    if (k == 0) throw InvalidParams("division by zero multiplier");
    return contains(spec, y / Rational(k));
}

Rational halve(const SupernaturalSpec& spec, const Rational& y) {
    if (!contains(spec, y))
        throw NotMember("halve: " + y.to_string() + " is not in the group");
    Rational h = y / Rational(2);
    if (!contains(spec, h))
        throw NotDivisible("halve: " + y.to_string() + " is not divisible by 2 in the group");
    return h;
}

CosetClass coset_mod_2k(const SupernaturalSpec& spec, const Rational& y, int k) {
    if (k != 1 && k != 2) throw InvalidParams("coset_mod_2k: k must be 1 or 2");
    if (!contains(spec, y))
        throw NotMember("coset_mod_2k: " + y.to_string() + " is not in the group");
    CosetClass c;
    c.in_y2 = divisible_by(spec, y, 2);
    if (k == 2) c.in_y4 = divisible_by(spec, y, 4);
    return c;
}

bool is_automorphism(const SupernaturalSpec& spec, const Multiplier& r) {
    auto all_infinite = [&](std::int64_t n) {
        for (auto [p, e] : factorize(n)) {
            (void)e;
            if (!spec.height(p).is_infinite()) return false;
        }
        return true;
    };
    return all_infinite(r.ratio.num()) && all_infinite(r.ratio.den());
}

SolenoidClass classify_solenoid(const SupernaturalSpec& spec) {
    SolenoidClass out;

    // smallest prime with infinite height
    std::optional<std::int64_t> witness;
    if (spec.default_exponent().is_infinite()) {
        // every prime outside the exception set has h_p = ∞; the smallest
        // such candidate competes with infinite-valued exceptions (none by
        // canonical form) — scan primes until one is not a finite exception
        std::int64_t p = 2;
        while (spec.height(p) != Height::infinity()) p = next_prime(p);
        witness = p;
    } else {
        for (const auto& [p, h] : spec.exceptions()) {
            if (h.is_infinite()) {
                witness = p;
                break;  // map is ordered: first hit is smallest
            }
        }
    }

    // smallest prime with finite height
    std::optional<std::int64_t> non_aut;
    if (!spec.default_exponent().is_infinite()) {
        std::int64_t p = 2;
        while (spec.height(p).is_infinite()) p = next_prime(p);
        non_aut = p;
    } else {
        for (const auto& [p, h] : spec.exceptions()) {
            if (!h.is_infinite()) {
                non_aut = p;
                break;
            }
        }
    }

    out.witness_prime = witness;
    out.smallest_non_aut_prime = non_aut;
    out.case_number = witness ? 2 : 1;
    return out;
}

FgSubgroup fg_generator(const std::vector<Rational>& ys) {
    // pairwise: gcd(n1/d1, n2/d2) = gcd(n1 d2, n2 d1) / (d1 d2)
    auto rational_gcd = [](const Rational& a, const Rational& b) {
        __int128 x = static_cast<__int128>(a.num()) * b.den();
        __int128 y = static_cast<__int128>(b.num()) * a.den();
        if (x < 0) x = -x;
        if (y < 0) y = -y;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        return Rational::make128(x, static_cast<__int128>(a.den()) * b.den());
    };
    Rational g = 0;
    for (const auto& y : ys) {
        if (y.is_zero()) continue;
        g = g.is_zero() ? y.abs() : rational_gcd(g, y);
    }
    return FgSubgroup{g};
}

}  // namespace sdlab
