#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdlab/box.hpp"
#include "sdlab/charfn.hpp"
#include "sdlab/solenoid.hpp"
#include "sdlab/value.hpp"

namespace sdlab {

// Square matrix of multipliers; row j holds the coefficients of the j-th
// linear form in the variables, so column i collects everything applied to
// the i-th function.  Multiplication by a rational is self-adjoint under
// the duality pairing, which is why the same entries drive both sides of
// the independence equation.
struct FormsMatrix {
    std::vector<std::vector<Multiplier>> rows;

    std::size_t size() const { return rows.size(); }

    friend bool operator==(const FormsMatrix&, const FormsMatrix&) = default;

    static FormsMatrix from_integers(const std::vector<std::vector<std::int64_t>>& m);
    static FormsMatrix from_rationals(const std::vector<std::vector<Rational>>& m);

    // [[1,1,1],[1,-1,1],[1,-1,-1]] — the symmetric three-form pattern all
    // derived identities below assume
    static FormsMatrix canonical_three_forms();

    // first row and first column all 1
    bool normalized() const;
    bool integer_entries() const;

    // InvalidParams unless square with every entry acting invertibly
    void validate(const SupernaturalSpec& spec) const;
};

// One failed comparison of the independence equation.
struct Residual {
    std::vector<Rational> point;  // (u_1, ..., u_n)
    Value lhs;
    Value rhs;
    double magnitude = 0.0;  // |lhs - rhs|
};

// A function offered to the verifier failed to look like a characteristic
// function in the first place (value at 0, Hermitian symmetry, modulus
// bound).  Reported alongside equation residuals: a doctored input must
// not slip through just because the equation happens to survive it.
struct CharFnViolation {
    std::size_t fn_index = 0;
    Rational point;
    std::string kind;  // "normalization" | "hermitian" | "modulus_bound"
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t budget = 1'000'000;  // max tuples to enumerate
    double tolerance = kDefaultTolerance;
    bool check_charfn_invariants = true;
    std::size_t max_recorded_violations = 32;
};

struct VerifyReport {
    std::uint64_t total_points = 0;  // |box|^n
    std::uint64_t violation_count = 0;
    std::vector<Residual> violations;  // first few, enumeration order
    std::vector<CharFnViolation> charfn_violations;
    bool exact = false;          // every comparison was exact
    double worst_residual = 0.0; // max |lhs-rhs| seen (0 for exact clean runs)

    bool equation_holds() const { return violation_count == 0; }
    bool clean() const { return violation_count == 0 && charfn_violations.empty(); }
};

// lhs ∏_i f_i(Σ_j M[j][i]·u_j) vs rhs ∏_i ∏_j f_i(M[j][i]·u_j) at one tuple
Residual residual_at(const std::vector<CharFn>& fs, const FormsMatrix& m,
                     const std::vector<Rational>& point, const EvalContext& ctx,
                     double tolerance);

// Exhaustive check over all |box|^n dual tuples.  Runs entirely in exact
// rational arithmetic when the functions and matrix allow it; throws
// BudgetExceeded before enumerating more than opts.budget tuples.
VerifyReport verify_on_box(const std::vector<CharFn>& fs, const FormsMatrix& m,
                           const TestBox& box, const EvalContext& ctx,
                           const VerifyOptions& opts = {});

struct SupportGroupReport {
    std::vector<Rational> points;  // N ∩ box, sorted
    bool is_subgroup_on_box = false;
    bool proph_holds = false;  // 2y ∈ N ⇒ y ∈ N whenever both sit in the box
};

// N = {y : no f_i vanishes at y}, the common support of the transforms
SupportGroupReport support_group_N(const std::vector<CharFn>& fs, const TestBox& box,
                                   const EvalContext& ctx, double tolerance);

// Consequences of the independence equation under canonical_three_forms():
//   f_i(2y) = f_i(y)² · ∏_{k≠i} |f_k(y)|²          for 2y in the box
//   |f_i(t1)|·∏_{k≠i}|f_k(t2)| = |f_i(t2)|·∏_{k≠i}|f_k(t1)|
//                                  for t1, t2 in a common coset of 2Y
// PreconditionViolated unless the triple actually satisfies the equation
// (including the validity prepass) on the box.
bool derived_identities_check(const std::vector<CharFn>& fs, const TestBox& box,
                              const EvalContext& ctx, double tolerance);

// (u1, u2, u3) = ((y1+y2)/2, (y3-y2)/2, (y1-y3)/2): the unique solution of
//   u1+u2+u3 = y1,  u1-u2-u3 = y2,  u1+u2-u3 = y3.
// NotDivisible when the y_i straddle different cosets of 2Y.
std::array<Rational, 3> halving_solve(const SupernaturalSpec& spec, const Rational& y1,
                                      const Rational& y2, const Rational& y3);

// For triples with no zeros on the box that satisfy the equation under
// canonical_three_forms(): true iff every f_i is multiplicative on the box
// (the transform of a point mass).  PreconditionViolated if a zero is
// found or the equation fails.
bool nonvanishing_solution_is_character(const std::vector<CharFn>& fs, const TestBox& box,
                                        const EvalContext& ctx, double tolerance);

}  // namespace sdlab
