// End-to-end acceptance gate.  Each criterion prints exactly one
//   [PASS|FAIL] criterion N: <what> (<elapsed> s)
// line; the process exits nonzero if any criterion fails.  Time limits,
// budgets and tolerances are pinned here on purpose — if one of these
// regresses, this binary is supposed to go red, not be retuned.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdlab/constructions.hpp"
#include "sdlab/cyclotomic.hpp"
#include "sdlab/finite.hpp"
#include "sdlab/json_io.hpp"
#include "sdlab/runner.hpp"
#include "sdlab/verifier.hpp"

using namespace sdlab;

namespace {

int g_failures = 0;

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            if (!ok) why << "; ";
            ok = false;
            why << msg;
        }
    }
};

// limit_s <= 0 means "no pinned time limit"
void criterion(int n, const std::string& label, double limit_s,
               const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        std::ostringstream over;
        over << "took " << secs << " s, limit " << limit_s << " s";
        c.require(false, over.str());
    }
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", n, label.c_str(),
                secs, c.ok ? "" : " — ", c.ok ? "" : c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++g_failures;
}

std::vector<std::vector<std::int64_t>> forms_for(int n) {
    if (n == 2) return {{1, 1}, {1, -1}};
    return {{1, 1, 1}, {1, -1, 1}, {1, -1, -1}};
}

}  // namespace

int main() {
    criterion(1, "canonical group classifications", 1.0, [](Check& c) {
        const auto a = classify_solenoid(SupernaturalSpec::all_ones());
        c.require(a.case_number == 1, "default-1 spec should be case 1");
        c.require(!a.witness_prime.has_value(), "case 1 has no witness prime");
        c.require(a.smallest_non_aut_prime == std::optional<std::int64_t>(2),
                  "default-1 spec: smallest non-invertible prime is 2");

        const auto b = classify_solenoid(SupernaturalSpec(Height(0), {{2, Height::infinity()}}));
        c.require(b.case_number == 2, "2-adic spec should be case 2");
        c.require(b.witness_prime == std::optional<std::int64_t>(2), "witness prime 2");
        c.require(b.smallest_non_aut_prime == std::optional<std::int64_t>(3),
                  "smallest non-invertible prime is 3");

        const auto d = classify_solenoid(SupernaturalSpec::all_infinite());
        c.require(d.case_number == 2, "full rational group should be case 2");
        c.require(d.witness_prime == std::optional<std::int64_t>(2), "witness prime 2");
        c.require(!d.smallest_non_aut_prime.has_value(), "every prime acts invertibly");
    });

    criterion(2, "two-level family verifies exactly on the big box", 60.0, [](Check& c) {
        const auto man = build_two_level_family(2, 3, Rational(1, 2), 3);
        RunOptions opts;
        opts.verify.budget = 30'000'000;  // 305 box points -> 305^3 tuples
        const auto out = run_manifest(man, opts);
        c.require(out.report.exact, "arithmetic must stay exact");
        c.require(out.report.violation_count == 0, "zero violations required");
        c.require(out.report.clean(), "prepass must be clean");
        c.require(out.report.total_points >= 10'000, "needs at least 10^4 evaluation points");
        c.require(out.idempotent_class.has_value() && !*out.idempotent_class,
                  "factors must not look like shifted idempotents");
        c.require(out.gauss_idem_class.has_value() && !*out.gauss_idem_class,
                  "factors must not look like a Gaussian-idempotent modulus");
        c.require(out.expectations_met, "runner expectations");
    });

    criterion(3, "finite-support family, both branches, with mutation kill", 60.0, [](Check& c) {
        for (std::int64_t p : {5, 3}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto man = build_finite_support_family(p, Rational(1));
            const auto out = run_manifest(man);
            std::ostringstream tag;
            tag << "p=" << p << ": ";
            c.require(out.report.exact && out.report.clean(), tag.str() + "clean exact run");
            c.require(out.obstruction.has_value() && *out.obstruction,
                      tag.str() + "divisibility obstruction must hold");
            c.require(out.expectations_met, tag.str() + "runner expectations");

            // mutation test: poisoning any single table value must be caught
            const EvalContext ctx{man.spec, std::nullopt};
            for (std::size_t fn = 0; fn < man.fs.size(); ++fn) {
                for (const auto& at : {Rational(0), Rational(1), Rational(-1)}) {
                    auto fs = man.fs;
                    fs[fn] = with_value_at(fs[fn], at, Value::from_rational(Rational(3, 7)));
                    const auto rep = verify_on_box(fs, man.matrix, man.recommended_box, ctx);
                    std::ostringstream m;
                    m << tag.str() << "tamper fn " << fn << " at " << at.to_string()
                      << " went unnoticed";
                    c.require(!rep.clean(), m.str());
                }
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            c.require(secs < 30.0, tag.str() + "branch exceeded 30 s");
        }
    });

    criterion(4, "equation check == joint independence on 200 random instances", 120.0,
              [](Check& c) {
        const std::vector<std::vector<std::int64_t>> groups{{5}, {4}, {2, 3}, {9}};
        int agree_exact = 0, agree_float = 0, total = 0;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const FiniteGroupSpec g(groups[gi]);
            for (int n : {2, 3}) {
                const auto m = forms_for(n);
                for (int trial = 0; trial < 25; ++trial) {
                    const auto profile =
                        trial % 2 ? RandomProfile::Sparse : RandomProfile::DirichletLike;
                    std::vector<Dist> dists;
                    for (int v = 0; v < n; ++v)
                        dists.push_back(random_dist(
                            g, 1000003u * static_cast<std::uint64_t>(trial) +
                                   7919u * static_cast<std::uint64_t>(8 * gi + (n == 3 ? 4 : 0)) +
                                   static_cast<std::uint64_t>(v),
                            profile));
                    const bool indep = joint_independence_check(g, dists, m);
                    ++total;
                    if (sd_equation_check(g, dists, m, EquationMode::Exact).holds == indep)
                        ++agree_exact;
                    if (sd_equation_check(g, dists, m, EquationMode::Float, 1e-9).holds == indep)
                        ++agree_float;
                }
            }
        }
        std::ostringstream se, sf;
        se << "exact path agreed " << agree_exact << "/" << total;
        sf << "floating path agreed " << agree_float << "/" << total;
        c.require(total == 200, "should run exactly 200 instances");
        c.require(agree_exact == total, se.str());
        c.require(agree_float == total, sf.str());
    });

    criterion(5, "no independent non-idempotent triple exists on Z4 x Z3", 60.0, [](Check& c) {
        const FiniteGroupSpec g({4, 3});
        const auto m = forms_for(3);
        int collected = 0, dependent = 0;
        for (std::uint64_t s = 0; collected < 100 && s < 4000; ++s) {
            const auto profile = s % 2 ? RandomProfile::Sparse : RandomProfile::DirichletLike;
            std::vector<Dist> dists;
            bool all_idem = true;
            for (int v = 0; v < 3; ++v) {
                dists.push_back(random_dist(g, 3 * s + static_cast<std::uint64_t>(v), profile));
                if (!idempotent_classify(g, dists.back()).is_shifted_idempotent) all_idem = false;
            }
            if (all_idem) continue;  // not a non-idempotent triple, resample
            ++collected;
            if (!joint_independence_check(g, dists, m)) {
                ++dependent;
            } else {
                // a genuinely independent instance must be shifted idempotents
                // with a common subgroup; anything else refutes the theory
                std::ostringstream m2;
                m2 << "independent non-idempotent triple at seed " << s;
                c.require(false, m2.str());
            }
        }
        std::ostringstream stat;
        stat << "dependent " << dependent << "/" << collected;
        c.require(collected == 100, "needs 100 sampled triples");
        c.require(dependent == collected, stat.str());
    });

    criterion(6, "positive definiteness and agreement with the finite oracle", 0, [](Check& c) {
        const EvalContext ambient{SupernaturalSpec::all_infinite(), std::nullopt};
        for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
            const std::int64_t q = (p == 3) ? 2 : 3;
            const auto outer = SubgroupDesc::scaled_height(1, SupernaturalSpec::prime_tower(q));
            for (const auto& cc : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                const auto f = CharFn::two_level(outer, p, cc);
                std::ostringstream tag;
                tag << "p=" << p << " c=" << cc.to_string() << ": ";
                c.require(pd_check_cyclic(f, Rational(1), static_cast<int>(p), 1e-12, ambient),
                          tag.str() + "cyclic restriction must be positive definite");

                // restriction to Z/p equals the transform of c*delta_0 + (1-c)*Haar
                const FiniteGroupSpec zp({p});
                Dist mu;
                mu.p.assign(static_cast<std::size_t>(p), (Rational(1) - cc) / Rational(p));
                mu.p[0] = mu.p[0] + cc;
                const auto oracle = char_fn_values_exact(zp, mu);
                for (std::int64_t k = 0; k < p; ++k) {
                    const auto v = f.eval(Rational(k), ambient).as_exact_real();
                    c.require(v.has_value(), tag.str() + "restriction must be exact rational");
                    if (!v) continue;
                    c.require(oracle[static_cast<std::size_t>(k)].equals_in_field(
                                  CycValue::from_rational(p, *v)),
                              tag.str() + "oracle mismatch at k=" + std::to_string(k));
                }
            }
        }

        // quotient with a proper subgroup in the middle: Z4 over K = {0, 2}
        for (const auto& cc : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            const auto f = CharFn::two_level(SubgroupDesc::cyclic(Rational(1, 4)), 2, cc);
            const FiniteGroupSpec z4({4});
            Dist mu;
            mu.p.assign(4, Rational(0));
            mu.p[0] = cc + (Rational(1) - cc) / Rational(2);
            mu.p[2] = (Rational(1) - cc) / Rational(2);
            const auto oracle = char_fn_values_exact(z4, mu);
            for (std::int64_t k = 0; k < 4; ++k) {
                const auto v = f.eval(Rational(k, 4), ambient).as_exact_real();
                std::ostringstream tag;
                tag << "Z4/K c=" << cc.to_string() << " k=" << k;
                c.require(v.has_value() && oracle[static_cast<std::size_t>(k)].equals_in_field(
                                               CycValue::from_rational(4, *v)),
                          tag.str());
            }
        }
    });

    criterion(7, "derived identities hold exactly for every reference solution", 0, [](Check& c) {
        const auto ones = SupernaturalSpec::all_ones();
        const TestBox small{{Rational(1, 3), Rational(1, 2)}, 2};

        const auto haar = build_haar_triple(ones, small);
        c.require(derived_identities_check(haar.fs, haar.recommended_box,
                                           EvalContext{haar.spec, std::nullopt}, 1e-9),
                  "haar triple");

        const SupernaturalSpec dyadic(Height(1), {{2, Height::infinity()}});
        const auto chars = build_character_triple(
            dyadic, Rational(1, 4), {Rational(1, 3), Rational(1, 5), Rational(0)}, 3);
        c.require(derived_identities_check(chars.fs, chars.recommended_box,
                                           EvalContext{chars.spec, chars.cyclic_generator}, 1e-9),
                  "character triple");

        const auto idem = build_idempotent_triple(ones, 3, small);
        c.require(derived_identities_check(idem.fs, idem.recommended_box,
                                           EvalContext{idem.spec, std::nullopt}, 1e-9),
                  "odd idempotent triple");

        const auto prod = product({CharFn::idempotent(SubgroupDesc::scaled_height(3, ones)),
                                   CharFn::idempotent(SubgroupDesc::scaled_height(5, ones))});
        const TestBox pbox{{Rational(1, 3), Rational(1, 5)}, 2};
        c.require(derived_identities_check({prod, prod, prod}, pbox,
                                           EvalContext{ones, std::nullopt}, 1e-9),
                  "product-of-idempotents triple");
    });

    criterion(8, "halving solver reconstructs 500 random coset triples", 0, [](Check& c) {
        const auto ones = SupernaturalSpec::all_ones();
        std::mt19937_64 rng(20260814);
        const std::int64_t dens[] = {1, 2, 3, 5, 6, 7, 10, 14, 15, 21, 30, 35, 42, 70, 105, 210};
        int round_trips = 0, raises = 0;
        for (int trial = 0; trial < 500; ++trial) {
            Rational u[3];
            for (auto& x : u) {
                std::int64_t num = static_cast<std::int64_t>(rng() % 199) - 99;
                x = Rational(num, dens[rng() % 16]);
            }
            const Rational y1 = u[0] + u[1] + u[2];
            const Rational y2 = u[0] - u[1] - u[2];
            const Rational y3 = u[0] + u[1] - u[2];
            const auto got = halving_solve(ones, y1, y2, y3);
            if (got[0] == u[0] && got[1] == u[1] && got[2] == u[2]) ++round_trips;

            // shifting one output into the other coset of the doubled group
            Rational z1 = y1, z2 = y2, z3 = y3;
            (trial % 3 == 0 ? z1 : trial % 3 == 1 ? z2 : z3) += Rational(1, 2);
            try {
                halving_solve(ones, z1, z2, z3);
            } catch (const NotDivisible&) {
                ++raises;
            }
        }
        std::ostringstream s1, s2;
        s1 << "round trips " << round_trips << "/500";
        s2 << "mixed-coset rejections " << raises << "/500";
        c.require(round_trips == 500, s1.str());
        c.require(raises == 500, s2.str());
    });

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
