#include "sdlab/constructions.hpp"

#include "sdlab/primes.hpp"

namespace sdlab {

ConstructionManifest build_two_level_family(std::int64_t p, std::int64_t q, const Rational& c,
                                            int n) {
    if (!is_prime(p) || !is_prime(q) || p == q)
        throw InvalidParams("two-level family needs two distinct primes");
    if (c.sign() <= 0 || c >= Rational(1))
        throw InvalidParams("two-level family needs 0 < c < 1");
    if (n < 2) throw InvalidParams("two-level family needs at least two forms");

    ConstructionManifest man;
    man.name = "two-level";
    man.spec = SupernaturalSpec::all_infinite();  // Y = Q: every multiplier acts invertibly

    SubgroupDesc h = SubgroupDesc::scaled_height(1, SupernaturalSpec::prime_tower(q));
    CharFn g = CharFn::two_level(h, p, c);
    man.fs.assign(static_cast<std::size_t>(n), g);

    const std::int64_t s = p * p + q;
    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) rows[0][static_cast<std::size_t>(i)] = i == 0 ? 1 : p;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                i == 0 ? p : (i == j ? s : p * p);
    man.matrix = FormsMatrix::from_integers(rows);

    man.recommended_box.generators = {Rational(1, q), Rational(1, q * q), Rational(1, p),
                                      Rational(1, s)};
    man.recommended_box.bound = 2;

    man.expect_equation_holds = true;
    man.expect_not_idempotent = true;
    man.expect_not_gauss_idem = true;
    man.params = {{"p", std::to_string(p)},
                  {"q", std::to_string(q)},
                  {"c", c.to_string()},
                  {"n", std::to_string(n)}};
    return man;
}

ConstructionManifest build_finite_support_family(const SupernaturalSpec& spec, std::int64_t p,
                                                 const Rational& y0) {
    if (!is_prime(p) || p == 2) throw InvalidParams("finite-support family needs an odd prime");
    if (!spec.height(p).is_infinite())
        throw InvalidParams("finite-support family: p must act invertibly on the group");
    if (spec.height(2).is_infinite())
        throw InvalidParams("finite-support family: doubling must not act invertibly");
    if (y0.is_zero()) throw InvalidParams("finite-support family: y0 must be nonzero");
    if (!contains(spec, y0))
        throw NotMember("finite-support family: y0 is not in the character group");
    if (divisible_by(spec, y0, 2))
        throw InvalidParams("finite-support family: y0 must lie outside the doubled group");

    ConstructionManifest man;
    man.name = "finite-support";
    man.spec = spec;

    std::map<Rational, Value> entries{{y0, Value::from_rational(Rational(1, 2))},
                                      {-y0, Value::from_rational(Rational(1, 2))}};
    CharFn mu = CharFn::finite_support(std::move(entries));
    man.fs.assign(3, mu);

    const std::int64_t d = p % 4 == 1 ? p : -p;
    man.matrix = FormsMatrix::from_integers({{1, 1, 1}, {1, d, 1}, {1, 1, d}});

    man.recommended_box.generators = {y0, y0 / Rational(p)};
    man.recommended_box.bound = 3;

    man.expect_equation_holds = true;
    man.expect_not_idempotent = true;
    man.expect_not_gauss_idem = true;
    man.obstruction = obstruction_check(spec, p, y0);
    man.params = {{"p", std::to_string(p)}, {"y0", y0.to_string()}};
    return man;
}

ConstructionManifest build_finite_support_family(std::int64_t p, const Rational& y0) {
    if (!is_prime(p) || p == 2) throw InvalidParams("finite-support family needs an odd prime");
    return build_finite_support_family(SupernaturalSpec::prime_tower(p), p, y0);
}

bool obstruction_check(const SupernaturalSpec& spec, std::int64_t p, const Rational& y0) {
    if (!is_prime(p) || p == 2) throw InvalidParams("obstruction_check needs an odd prime");
    const std::int64_t m = p % 4 == 1 ? p - 1 : p + 1;
    return !divisible_by(spec, y0, m) && !divisible_by(spec, Rational(2) * y0, m);
}

CounterexampleConditions counterexample_conditions(const SupernaturalSpec& spec,
                                                   const Multiplier& a,
                                                   const Rational& y_tilde) {
    CounterexampleConditions out;
    const Rational b = Rational(1) - a.ratio;  // I - ã acts as multiplication by b
    out.kernel_trivial = !b.is_zero();
    if (!b.is_zero()) {
        auto divisible = [&](const Rational& y) { return contains(spec, y / b); };
        out.coset_avoidance = !divisible(y_tilde) && !divisible(Rational(2) * y_tilde);
    }
    out.reflection_free = !((Rational(1) + a.ratio) * y_tilde).is_zero();
    return out;
}

ConstructionManifest build_haar_triple(const SupernaturalSpec& spec, TestBox box) {
    ConstructionManifest man;
    man.name = "haar-triple";
    man.spec = spec;
    man.fs.assign(3, CharFn::idempotent(SubgroupDesc::trivial()));
    man.matrix = FormsMatrix::canonical_three_forms();
    man.recommended_box = std::move(box);
    return man;
}

ConstructionManifest build_character_triple(const SupernaturalSpec& spec,
                                            const Rational& generator,
                                            const std::array<Rational, 3>& angles, int bound) {
    if (generator.sign() <= 0)
        throw InvalidParams("character triple needs a positive generator");
    ConstructionManifest man;
    man.name = "character-triple";
    man.spec = spec;
    man.cyclic_generator = generator;
    for (const auto& a : angles)
        man.fs.push_back(CharFn::idempotent(SubgroupDesc::scaled_height(1, spec), a));
    man.matrix = FormsMatrix::canonical_three_forms();
    man.recommended_box.generators = {generator};
    man.recommended_box.bound = bound;
    return man;
}

ConstructionManifest build_idempotent_triple(const SupernaturalSpec& spec, std::int64_t scale,
                                             TestBox box) {
    if (scale <= 0) throw InvalidParams("idempotent triple needs a positive integer scale");
    if (scale % 2 == 0 && spec.height(2) != Height(0))
        throw InvalidParams(
            "idempotent triple: even-index subgroups do not satisfy the symmetric equation");
    ConstructionManifest man;
    man.name = "idempotent-triple";
    man.spec = spec;
    man.fs.assign(3, CharFn::idempotent(SubgroupDesc::scaled_height(Rational(scale), spec)));
    man.matrix = FormsMatrix::canonical_three_forms();
    man.recommended_box = std::move(box);
    man.params = {{"scale", std::to_string(scale)}};
    return man;
}

}  // namespace sdlab
