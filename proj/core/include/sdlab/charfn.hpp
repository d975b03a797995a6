#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sdlab/box.hpp"
#include "sdlab/errors.hpp"
#include "sdlab/rational.hpp"
#include "sdlab/solenoid.hpp"
#include "sdlab/value.hpp"

namespace sdlab {

// Description of a subgroup of Q usable as the support of an idempotent
// characteristic function: either scale·H_spec (the image of a height-style
// group under a positive rational multiplier) or a cyclic group Z·g
// (g = 0 encodes the trivial subgroup).
struct SubgroupDesc {
    enum class Kind { ScaledHeight, Cyclic };

    Kind kind = Kind::Cyclic;
    Rational scale = 1;           // ScaledHeight, > 0
    SupernaturalSpec spec;        // ScaledHeight
    Rational generator = 0;       // Cyclic, >= 0

    static SubgroupDesc scaled_height(Rational scale, SupernaturalSpec spec);
    static SubgroupDesc cyclic(Rational generator);
    static SubgroupDesc trivial() { return cyclic(0); }

    bool contains(const Rational& y) const;

    friend bool operator==(const SubgroupDesc&, const SubgroupDesc&) = default;
};

// Ambient group for evaluation plus the designated generator that gives
// rational phase angles a meaning (phase angle is per unit of the
// generator).
struct EvalContext {
    SupernaturalSpec spec;
    std::optional<Rational> cyclic_generator;
};

// Finitely described characteristic function on the character group.
// Immutable value type; composite kinds share their children.
//
//   Idempotent     1 on a subgroup (optionally twisted by a rational-angle
//                  character), 0 elsewhere — transform of a shifted Haar
//                  measure of a compact subgroup
//   TwoLevel       1 on the p-divisible part of a subgroup H, level c in
//                  (0,1) on the rest of H, 0 off H
//   FiniteSupport  1 at 0, finitely many prescribed values, 0 elsewhere
//   Gaussian       exp(-sigma·y²), optionally twisted
//   ModulusSquare  |f|² of another function (symmetrization)
//   Product        pointwise product (convolution of measures)
class CharFn {
public:
    enum class Kind { Idempotent, TwoLevel, FiniteSupport, Gaussian, ModulusSquare, Product };

    static CharFn idempotent(SubgroupDesc support, Rational phase_angle = 0);
    // validates: prime inner_prime, level strictly between 0 and 1
    static CharFn two_level(SubgroupDesc outer, std::int64_t inner_prime, Rational level);
    static CharFn two_level_unchecked(SubgroupDesc outer, std::int64_t inner_prime,
                                      Rational level);
    // validates: no key 0, Hermitian (entries come in conjugate pairs),
    // every modulus <= 1
    static CharFn finite_support(std::map<Rational, Value> entries);
    static CharFn finite_support_unchecked(std::map<Rational, Value> entries);
    static CharFn gaussian(double sigma, Rational phase_angle = 0);
    static CharFn modulus_square_of(CharFn base);
    static CharFn product_of(std::vector<CharFn> factors);

    Kind kind() const;

    Value eval(const Rational& y, const EvalContext& ctx) const;

    // every value this function can produce is an exact Value
    bool exact_valued() const;
    // ... and real (fast-path eligibility)
    bool exact_real_valued() const;

    // structural accessors (DomainError on kind mismatch)
    const SubgroupDesc& support() const;                 // Idempotent
    const Rational& phase_angle() const;                 // Idempotent, Gaussian
    const SubgroupDesc& outer() const;                   // TwoLevel
    std::int64_t inner_prime() const;                    // TwoLevel
    const Rational& level() const;                       // TwoLevel
    const std::map<Rational, Value>& entries() const;    // FiniteSupport
    double sigma() const;                                // Gaussian
    const std::vector<CharFn>& children() const;         // ModulusSquare, Product

    friend bool operator==(const CharFn& a, const CharFn& b) { return a.equals(b); }

private:
    struct Node;
    explicit CharFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    bool equals(const CharFn& o) const;
    std::shared_ptr<const Node> node_;
};

// --- algebra --------------------------------------------------------------

// pointwise product; singleton lists collapse to the factor itself
CharFn product(const std::vector<CharFn>& fs);

CharFn modulus_square(const CharFn& f);

// FiniteSupport only: override/insert a single table value bypassing all
// invariants (fault injection for the verifier's validity prepass)
CharFn with_value_at(const CharFn& f, const Rational& y, const Value& v);

// --- analysis on a box ------------------------------------------------------

// F = {y in box : f(y) = 1}; asserts F is symmetric and box-closed and that
// f(y + h) = f(y) for all h in F, y in box (ClosureViolation otherwise)
std::vector<Rational> invariance_subgroup(const CharFn& f, const TestBox& box,
                                          const EvalContext& ctx, double tolerance);

// Bochner test of the restriction to Z·generator assuming the stated
// period: checks f((k+period)·g) = f(k·g) on a 3-period window
// (NotPeriodic otherwise), then requires all DFT components of one period
// to satisfy Re >= -tolerance with negligible imaginary part.
bool pd_check_cyclic(const CharFn& f, const Rational& generator, int period, double tolerance,
                     const EvalContext& ctx);

// true iff on the box |f| takes only values {0,1}, the modulus-1 set is a
// subgroup pattern, and the phase is additive on it — the transform shape
// of a shifted idempotent
bool is_idempotent_on_box(const CharFn& f, const TestBox& box, const EvalContext& ctx,
                          double tolerance);

// true iff on the box f looks like (Gaussian)·(idempotent) in modulus:
// support is a subgroup pattern carrying |f(y)| = exp(-sigma·y²) for the
// sigma fitted from the smallest positive support point.  false is a
// box-relative exclusion certificate.
bool is_gauss_idem_modulus_on_box(const CharFn& f, const TestBox& box, double tolerance,
                                  const EvalContext& ctx);

}  // namespace sdlab
