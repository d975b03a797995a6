#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdlab/box.hpp"
#include "sdlab/charfn.hpp"
#include "sdlab/solenoid.hpp"
#include "sdlab/verifier.hpp"

namespace sdlab {

// A fully described verification instance: functions, forms, ambient
// group, a box that exercises every branch of the functions, and the
// expectations the verifier is supposed to confirm.
struct ConstructionManifest {
    std::string name;
    SupernaturalSpec spec;
    std::optional<Rational> cyclic_generator;
    std::vector<CharFn> fs;
    FormsMatrix matrix;
    TestBox recommended_box;
    bool expect_equation_holds = true;
    bool expect_not_idempotent = false;
    bool expect_not_gauss_idem = false;
    std::optional<bool> obstruction;
    std::vector<std::pair<std::string, std::string>> params;
};

// n identical copies of the two-level function (1 on the p-divisible part
// of H = {m/q^k}, c in between, 0 off H) on the full rational character
// group, with the forms
//   L_1 = ξ_1 + p(ξ_2 + ... + ξ_n),
//   L_j = p ξ_1 + p²(Σ_{i≥2} ξ_i) + q ξ_j   (s = p² + q on the diagonal).
// The independence equation holds exactly on all of Y^n although no factor
// is a shifted idempotent or a Gaussian-idempotent modulus.
ConstructionManifest build_two_level_family(std::int64_t p, std::int64_t q, const Rational& c,
                                            int n);

// Three identical copies of the finite-support function (1 at 0, 1/2 at
// ±y0, 0 elsewhere) on a group where doubling is not invertible but an odd
// prime p acts invertibly; forms [[1,1,1],[1,±p,1],[1,1,±p]] with the sign
// picked by p mod 4.  Requires y0 outside the doubled group.
ConstructionManifest build_finite_support_family(const SupernaturalSpec& spec, std::int64_t p,
                                                 const Rational& y0);

// same, on the canonical group where only p acts invertibly
ConstructionManifest build_finite_support_family(std::int64_t p, const Rational& y0);

// The divisibility fact that makes the finite-support family work: with
// m = p-1 (p ≡ 1 mod 4) or m = p+1 (p ≡ 3 mod 4), neither y0 nor 2y0 is
// m-divisible, so m·v ∈ {±y0, ±2y0} has no solution.
bool obstruction_check(const SupernaturalSpec& spec, std::int64_t p, const Rational& y0);

// Conditions under which multiplication by `a` together with the shift
// element y_tilde produces an independent non-trivial family on the dual
// side (with b = 1 - a playing the divisor role):
//   kernel_trivial:    1 - a ≠ 0
//   coset_avoidance:   y_tilde ∉ (1-a)·Y and 2·y_tilde ∉ (1-a)·Y
//   reflection_free:   (1 + a)·y_tilde ≠ 0
struct CounterexampleConditions {
    bool kernel_trivial = false;
    bool coset_avoidance = false;
    bool reflection_free = false;

    bool all() const { return kernel_trivial && coset_avoidance && reflection_free; }
};

CounterexampleConditions counterexample_conditions(const SupernaturalSpec& spec,
                                                   const Multiplier& a,
                                                   const Rational& y_tilde);

// --- reference triples that satisfy the symmetric three-form equation -----

// transforms of the Haar measure: indicator of {0}
ConstructionManifest build_haar_triple(const SupernaturalSpec& spec, TestBox box);

// transforms of point masses: rational-angle characters on Z·generator
ConstructionManifest build_character_triple(const SupernaturalSpec& spec,
                                            const Rational& generator,
                                            const std::array<Rational, 3>& angles, int bound);

// transforms of Haar measures of one open subgroup scale·H of odd index
// (scale must be a positive integer, odd unless doubling already fails)
ConstructionManifest build_idempotent_triple(const SupernaturalSpec& spec, std::int64_t scale,
                                             TestBox box);

}  // namespace sdlab
