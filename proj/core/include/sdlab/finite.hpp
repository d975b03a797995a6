#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "sdlab/cyclotomic.hpp"
#include "sdlab/errors.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

// G = Z(m_1) × ... × Z(m_r), elements addressed by a mixed-radix index
// (first coordinate most significant).  The dual group is identified with
// G itself through the pairing <x, y> = Σ x_i y_i / m_i (mod 1).  Order is
// capped so that exhaustive enumeration is always honest.
class FiniteGroupSpec {
public:
    static constexpr std::int64_t kMaxOrder = 2000;

    explicit FiniteGroupSpec(std::vector<std::int64_t> moduli);

    const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
    std::size_t rank() const noexcept { return moduli_.size(); }
    std::int64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return exponent_; }  // lcm of moduli

    std::vector<std::int64_t> element(std::int64_t index) const;
    std::int64_t index(const std::vector<std::int64_t>& coords) const;  // coords are reduced

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t neg(std::int64_t a) const;
    std::int64_t scale(std::int64_t k, std::int64_t a) const;  // k·a for integer k

    // numerator of <x,y> over the common denominator exponent()
    std::int64_t pairing_num(std::int64_t x, std::int64_t y) const;

    friend bool operator==(const FiniteGroupSpec&, const FiniteGroupSpec&) = default;

private:
    std::vector<std::int64_t> moduli_;
    std::int64_t order_ = 1;
    std::int64_t exponent_ = 1;
};

// Exact probability distribution on G, indexed like the group.
struct Dist {
    std::vector<Rational> p;

    static Dist point_mass(const FiniteGroupSpec& g, std::int64_t at);
    static Dist uniform(const FiniteGroupSpec& g);
    static Dist uniform_on(const FiniteGroupSpec& g, const std::vector<std::int64_t>& support);

    // InvalidParams unless entries are >= 0 and sum to 1 exactly
    void validate(const FiniteGroupSpec& g) const;

    std::vector<std::int64_t> support() const;
};

// Integer matrix acting on G coordinate-wise: (Ax)_j = Σ_i a[j][i]·x_i mod m_j.
struct AutMatrix {
    std::vector<std::vector<std::int64_t>> a;
};

// a[j][i]·m_i ≡ 0 (mod m_j) for all i, j — the condition for the formula
// above to define a homomorphism on the product group
bool is_homomorphism(const FiniteGroupSpec& g, const AutMatrix& a);

// NotHomomorphism if the matrix is not even a homomorphism; otherwise true
// iff the induced map is bijective
bool is_automorphism(const FiniteGroupSpec& g, const AutMatrix& a);

std::int64_t apply(const FiniteGroupSpec& g, const AutMatrix& a, std::int64_t x);

// Adjoint on the dual (same coordinates): <Ax, y> = <x, adjoint(A)y> for
// all x, y.  NotHomomorphism if A is not a homomorphism.
AutMatrix adjoint(const FiniteGroupSpec& g, const AutMatrix& a);

std::vector<std::int64_t> subgroup_closure(const FiniteGroupSpec& g,
                                           const std::vector<std::int64_t>& gens);

// A(G, K) = {y : <x, y> = 0 for all x in K}; asserts |K|·|A(G,K)| = |G|
std::vector<std::int64_t> annihilator(const FiniteGroupSpec& g,
                                      const std::vector<std::int64_t>& k_gens);

// --- characteristic functions on the dual --------------------------------

// μ̂(y) = Σ_x p(x)·e^{2πi <x,y>}, for every character index y
std::vector<std::complex<double>> char_fn_values(const FiniteGroupSpec& g, const Dist& d);

// same, exactly, as elements of Q(ζ_exponent)
std::vector<CycValue> char_fn_values_exact(const FiniteGroupSpec& g, const Dist& d);

// --- the two sides of the comparison --------------------------------------

// Joint law of the forms L_j = Σ_i m[j][i]·ξ_i (rows are forms, entries act
// by integer multiplication) against the product of their marginals, in
// exact rational arithmetic.  BudgetExceeded if the support enumeration
// would exceed max_tuples.
bool joint_independence_check(const FiniteGroupSpec& g, const std::vector<Dist>& dists,
                              const std::vector<std::vector<std::int64_t>>& m,
                              std::uint64_t max_tuples = 10'000'000);

enum class EquationMode { Exact, Float };

struct EquationCheckResult {
    bool holds = true;
    double worst_residual = 0.0;      // float mode only
    std::uint64_t tuples_checked = 0;
};

// ∏_i μ̂_i(Σ_j m[j][i]·u_j) = ∏_i ∏_j μ̂_i(m[j][i]·u_j) over every tuple of
// characters; exact mode decides equality in Q(ζ), float mode compares with
// the tolerance
EquationCheckResult sd_equation_check(const FiniteGroupSpec& g, const std::vector<Dist>& dists,
                                      const std::vector<std::vector<std::int64_t>>& m,
                                      EquationMode mode, double tolerance = 1e-9);

// --- classification and random instances ----------------------------------

struct IdempotentClass {
    bool is_shifted_idempotent = false;
    std::vector<std::int64_t> subgroup;  // K, when classified
    std::int64_t shift = 0;              // lex-min support element, when classified
};

// uniform-on-a-coset test: support = shift + K with equal weights 1/|K|
IdempotentClass idempotent_classify(const FiniteGroupSpec& g, const Dist& d);

enum class RandomProfile { Sparse, DirichletLike };

// Deterministic pseudo-random distribution: Sparse picks 1..4 distinct
// atoms with weights 1..4; DirichletLike gives every element an integer
// weight 0..8 (first atom forced when all vanish).  Weights are
// normalized exactly.
Dist random_dist(const FiniteGroupSpec& g, std::uint64_t seed, RandomProfile profile);

}  // namespace sdlab
