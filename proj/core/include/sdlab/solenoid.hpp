#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdlab/errors.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

// Exponent in N ∪ {∞}; ∞ means multiplication by the prime is invertible
// in the group.
class Height {
public:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

    constexpr Height() noexcept : v_(0) {}
    constexpr Height(std::uint32_t v) noexcept : v_(v) {}  // NOLINT: implicit by design
    static constexpr Height infinity() noexcept { return Height(kInf); }

    bool is_infinite() const noexcept { return v_ == kInf; }
    std::uint32_t finite_value() const {
        if (is_infinite()) throw DomainError("height is infinite");
        return v_;
    }

    friend bool operator==(Height a, Height b) noexcept { return a.v_ == b.v_; }
    // ∞ compares above every finite value because kInf is the max encoding
    friend auto operator<=>(Height a, Height b) noexcept { return a.v_ <=> b.v_; }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    std::uint32_t v_;
};

// Height function p -> h_p of the character group
//   H_a = { m / (a_0 a_1 ... a_n) : m ∈ Z, n >= 0 } ⊆ Q,
// where h_p = sup of p-adic valuations of the partial products.  Stored as
// a default exponent plus finitely many exceptions; canonical form keeps
// only exceptions that differ from the default.
class SupernaturalSpec {
public:
    SupernaturalSpec() : default_exponent_(Height::infinity()) {}
    SupernaturalSpec(Height default_exponent, std::map<std::int64_t, Height> exceptions);

    Height height(std::int64_t p) const;
    Height default_exponent() const noexcept { return default_exponent_; }
    const std::map<std::int64_t, Height>& exceptions() const noexcept { return exceptions_; }

    // a = (2, 3, 5, 7, ...): every prime exactly once
    static SupernaturalSpec all_ones();
    // a = (2, 3, 4, 5, ...): h_p = ∞ for all p, H_a = Q
    static SupernaturalSpec all_infinite();
    // a = (p, p, p, ...): H_a = { m / p^k }
    static SupernaturalSpec prime_tower(std::int64_t p);

    friend bool operator==(const SupernaturalSpec&, const SupernaturalSpec&) = default;

private:
    Height default_exponent_;
    std::map<std::int64_t, Height> exceptions_;
};

// --- membership and divisibility in H_a ---------------------------------

// y ∈ H_a  ⟺  v_p(den y) <= h_p for every prime p | den y
bool contains(const SupernaturalSpec& spec, const Rational& y);

// y ∈ k·H_a, i.e. y/k ∈ H_a (k != 0)
bool divisible_by(const SupernaturalSpec& spec, const Rational& y, std::int64_t k);

// y/2 if it stays in H_a; NotMember if y itself is outside, NotDivisible
// if the half escapes.
Rational halve(const SupernaturalSpec& spec, const Rational& y);

struct CosetClass {
    bool in_y2 = false;                 // y ∈ 2·H_a
    std::optional<bool> in_y4;          // y ∈ 4·H_a (present when k = 2)
};

// Coset data of y modulo 2^k·H_a for k ∈ {1,2}.  NotMember if y ∉ H_a.
CosetClass coset_mod_2k(const SupernaturalSpec& spec, const Rational& y, int k);

// --- topological automorphisms of the solenoid ---------------------------

// Multiplication by a nonzero rational, acting on H_a (self-adjoint under
// the duality pairing).
struct Multiplier {
    Rational ratio;

    Multiplier() : ratio(1) {}
    explicit Multiplier(Rational r) : ratio(std::move(r)) {
        if (ratio.is_zero()) throw InvalidParams("multiplier must be nonzero");
    }

    friend bool operator==(const Multiplier&, const Multiplier&) = default;
};

// r·H_a = H_a  ⟺  every prime dividing num(r) or den(r) has h_p = ∞
bool is_automorphism(const SupernaturalSpec& spec, const Multiplier& r);

// --- dichotomy classification --------------------------------------------

// case 1: every prime has finite height (multiplication by any integer > 1
//         fails to be onto after finitely many steps never — i.e. no prime
//         acts invertibly); independence of three forms with automorphism
//         coefficients forces a shifted-idempotent component.
// case 2: some prime acts invertibly; three-form counterexamples exist.
struct SolenoidClass {
    int case_number = 1;                               // 1 or 2
    std::optional<std::int64_t> witness_prime;         // smallest p with h_p = ∞ (case 2)
    std::optional<std::int64_t> smallest_non_aut_prime;  // smallest p with h_p < ∞, if any
};

SolenoidClass classify_solenoid(const SupernaturalSpec& spec);

// --- finitely generated subgroups of Q ----------------------------------

// Every finitely generated subgroup of Q is cyclic; generator >= 0,
// generator 0 encodes the trivial subgroup.
struct FgSubgroup {
    Rational generator;
};

// gcd-style generator: positive g with Z·g = Z·y1 + ... + Z·yk
FgSubgroup fg_generator(const std::vector<Rational>& ys);

}  // namespace sdlab
