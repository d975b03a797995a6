#include "sdlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace sdlab {

FormsMatrix FormsMatrix::from_integers(const std::vector<std::vector<std::int64_t>>& m) {
    FormsMatrix f;
    for (const auto& row : m) {
        std::vector<Multiplier> r;
        r.reserve(row.size());
        for (std::int64_t e : row) r.emplace_back(Rational(e));
        f.rows.push_back(std::move(r));
    }
    return f;
}

FormsMatrix FormsMatrix::from_rationals(const std::vector<std::vector<Rational>>& m) {
    FormsMatrix f;
    for (const auto& row : m) {
        std::vector<Multiplier> r;
        r.reserve(row.size());
        for (const Rational& e : row) r.emplace_back(e);
        f.rows.push_back(std::move(r));
    }
    return f;
}

FormsMatrix FormsMatrix::canonical_three_forms() {
    return from_integers({{1, 1, 1}, {1, -1, 1}, {1, -1, -1}});
}

bool FormsMatrix::normalized() const {
    if (rows.empty()) return false;
    const Rational one(1);
    for (const auto& e : rows[0])
        if (e.ratio != one) return false;
    for (const auto& row : rows)
        if (row.empty() || row[0].ratio != one) return false;
    return true;
}

bool FormsMatrix::integer_entries() const {
    for (const auto& row : rows)
        for (const auto& e : row)
            if (!e.ratio.is_integer()) return false;
    return true;
}

void FormsMatrix::validate(const SupernaturalSpec& spec) const {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidParams("forms matrix is empty");
    for (const auto& row : rows)
        if (row.size() != n) throw InvalidParams("forms matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_automorphism(spec, rows[j][i]))
                throw InvalidParams("matrix entry " + rows[j][i].ratio.to_string() + " at (" +
                                    std::to_string(j) + "," + std::to_string(i) +
                                    ") does not act invertibly on the group");
        }
    }
}

Residual residual_at(const std::vector<CharFn>& fs, const FormsMatrix& m,
                     const std::vector<Rational>& point, const EvalContext& ctx,
                     double tolerance) {
    const std::size_t n = fs.size();
    if (m.size() != n || point.size() != n)
        throw InvalidParams("residual_at: dimension mismatch");
    Value lhs = Value::one();
    for (std::size_t i = 0; i < n; ++i) {
        Rational arg = 0;
        for (std::size_t j = 0; j < n; ++j) arg += m.rows[j][i].ratio * point[j];
        lhs = lhs * fs[i].eval(arg, ctx);
    }
    Value rhs = Value::one();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rhs = rhs * fs[i].eval(m.rows[j][i].ratio * point[j], ctx);
    (void)tolerance;
    return Residual{point, lhs, rhs, Value::distance(lhs, rhs)};
}

namespace {

void record_charfn_issue(VerifyReport& rep, const VerifyOptions& opts, std::size_t fn,
                         const Rational& y, const char* kind, std::string detail) {
    if (rep.charfn_violations.size() < opts.max_recorded_violations)
        rep.charfn_violations.push_back(CharFnViolation{fn, y, kind, std::move(detail)});
}

// eval(0) = 1, |f| <= 1, f(-y) = conj f(y): a function failing these is not
// the transform of any probability distribution and is flagged regardless
// of what the equation says about it
void charfn_prepass(const std::vector<CharFn>& fs, const std::vector<Rational>& pts,
                    const EvalContext& ctx, const VerifyOptions& opts, VerifyReport& rep) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Value v0 = fs[i].eval(Rational(0), ctx);
        if (!Value::equal(v0, Value::one(), opts.tolerance))
            record_charfn_issue(rep, opts, i, Rational(0), "normalization",
                                "value at 0 is " + v0.to_string());
        for (const auto& y : pts) {
            Value v = fs[i].eval(y, ctx);
            if (v.abs() > 1.0 + opts.tolerance)
                record_charfn_issue(rep, opts, i, y, "modulus_bound",
                                    "|value| = " + std::to_string(v.abs()));
            if (y.sign() > 0) {
                Value w = fs[i].eval(-y, ctx);
                if (!Value::equal(w, v.conj(), opts.tolerance))
                    record_charfn_issue(rep, opts, i, y, "hermitian",
                                        "f(-y) = " + w.to_string() + ", conj f(y) = " +
                                            v.conj().to_string());
            }
        }
    }
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
    __int128 total = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        total *= base;
        if (total > static_cast<__int128>(budget))
            throw BudgetExceeded("box enumeration needs " +
                                 (total <= static_cast<__int128>(UINT64_MAX)
                                      ? std::to_string(static_cast<std::uint64_t>(total)) +
                                            "+ tuples"
                                      : std::string("more than 2^64 tuples")) +
                                 ", budget is " + std::to_string(budget));
    }
    return static_cast<std::uint64_t>(total);
}

void record_violation(VerifyReport& rep, const VerifyOptions& opts, std::vector<Rational> point,
                      const Value& lhs, const Value& rhs) {
    ++rep.violation_count;
    double d = Value::distance(lhs, rhs);
    rep.worst_residual = std::max(rep.worst_residual, d);
    if (rep.violations.size() < opts.max_recorded_violations)
        rep.violations.push_back(Residual{std::move(point), lhs, rhs, d});
}

// --- exact integer fast path ---------------------------------------------
//
// All functions exact and real, all matrix entries integers: bring every
// box point to a common denominator D, tabulate each f_i over the reachable
// numerator range as interned rational ids (id 0 = value 0), precompute the
// per-form right-hand factors, and walk the tuple odometer on int64 adds
// and table loads.  Both sides of almost every tuple are zero for the
// counterexample families, so the rational products are only formed when a
// side is provably nonzero.

struct FastPlan {
    bool usable = false;
    std::vector<std::int64_t> nums;                  // box points over D
    std::vector<std::vector<std::int64_t>> m;        // integer matrix [form][var]
    std::vector<std::int64_t> offset;                // per variable
    std::vector<std::vector<std::int32_t>> tab;      // per variable: numerator -> value id
    std::vector<Rational> vals;                      // interned values, vals[0] = 0
    std::vector<std::vector<char>> rhs_zero;         // [form][point]
    std::vector<std::vector<Rational>> rhs_val;      // [form][point], 1 when zero
};

FastPlan build_fast_plan(const std::vector<CharFn>& fs, const FormsMatrix& mat,
                         const std::vector<Rational>& pts, const EvalContext& ctx) {
    FastPlan plan;
    const std::size_t n = fs.size();
    if (!mat.integer_entries()) return plan;
    for (const auto& f : fs)
        if (!f.exact_real_valued()) return plan;

    std::int64_t d = 1;
    for (const auto& p : pts) d = std::lcm(d, p.den());
    std::int64_t max_num = 0;
    plan.nums.reserve(pts.size());
    for (const auto& p : pts) {
        std::int64_t v = p.num() * (d / p.den());
        plan.nums.push_back(v);
        max_num = std::max(max_num, std::abs(v));
    }

    plan.m.assign(n, std::vector<std::int64_t>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) plan.m[j][i] = mat.rows[j][i].ratio.num();

    plan.offset.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        __int128 reach = 0;
        for (std::size_t j = 0; j < n; ++j)
            reach += static_cast<__int128>(std::abs(plan.m[j][i])) * max_num;
        if (reach > 50'000'000) return plan;  // table would not fit; use generic path
        plan.offset[i] = static_cast<std::int64_t>(reach);
    }

    plan.vals.push_back(Rational(0));
    std::map<Rational, std::int32_t> intern{{Rational(0), 0}};
    plan.tab.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = plan.offset[i];
        plan.tab[i].assign(static_cast<std::size_t>(2 * a + 1), -1);
        for (std::int64_t v = -a; v <= a; ++v) {
            Rational y(v, d);
            if (!contains(ctx.spec, y)) continue;  // unreachable: sums of members stay members
            auto real = fs[i].eval(y, ctx).as_exact_real();
            if (!real) return FastPlan{};
            auto [it, fresh] = intern.try_emplace(*real,
                                                  static_cast<std::int32_t>(plan.vals.size()));
            if (fresh) plan.vals.push_back(*real);
            plan.tab[i][static_cast<std::size_t>(v + a)] = it->second;
        }
    }

    plan.rhs_zero.assign(n, std::vector<char>(pts.size(), 0));
    plan.rhs_val.assign(n, std::vector<Rational>(pts.size(), Rational(1)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < pts.size(); ++k) {
            Rational prod(1);
            bool zero = false;
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t num = plan.m[j][i] * plan.nums[k];
                std::int32_t id = plan.tab[i][static_cast<std::size_t>(num + plan.offset[i])];
                if (id == 0) {
                    zero = true;
                    break;
                }
                prod *= plan.vals[static_cast<std::size_t>(id)];
            }
            plan.rhs_zero[j][k] = zero;
            if (!zero) plan.rhs_val[j][k] = prod;
        }
    }
    plan.usable = true;
    return plan;
}

void run_fast_triple(const FastPlan& plan, const std::vector<Rational>& pts,
                     const VerifyOptions& opts, VerifyReport& rep) {
    const std::size_t b = pts.size();
    const auto& m = plan.m;
    const auto& nums = plan.nums;
    const std::int32_t* t0 = plan.tab[0].data();
    const std::int32_t* t1 = plan.tab[1].data();
    const std::int32_t* t2 = plan.tab[2].data();
    const std::int64_t o0 = plan.offset[0], o1 = plan.offset[1], o2 = plan.offset[2];

    auto violate = [&](std::size_t k1, std::size_t k2, std::size_t k3, std::int32_t i0,
                       std::int32_t i1, std::int32_t i2, bool rz, const Rational& rv) {
        Value lhs = (i0 == 0 || i1 == 0 || i2 == 0)
                        ? Value::zero()
                        : Value::from_rational(plan.vals[i0] * plan.vals[i1] * plan.vals[i2]);
        Value rhs = rz ? Value::zero() : Value::from_rational(rv);
        record_violation(rep, opts, {pts[k1], pts[k2], pts[k3]}, lhs, rhs);
    };

    for (std::size_t k1 = 0; k1 < b; ++k1) {
        const std::int64_t p10 = m[0][0] * nums[k1] + o0;
        const std::int64_t p11 = m[0][1] * nums[k1] + o1;
        const std::int64_t p12 = m[0][2] * nums[k1] + o2;
        const bool z1 = plan.rhs_zero[0][k1];
        const Rational& r1 = plan.rhs_val[0][k1];
        for (std::size_t k2 = 0; k2 < b; ++k2) {
            const std::int64_t p20 = p10 + m[1][0] * nums[k2];
            const std::int64_t p21 = p11 + m[1][1] * nums[k2];
            const std::int64_t p22 = p12 + m[1][2] * nums[k2];
            const bool z2 = z1 || plan.rhs_zero[1][k2];
            Rational r2(1);
            if (!z2) r2 = r1 * plan.rhs_val[1][k2];
            const char* zr3 = plan.rhs_zero[2].data();
            for (std::size_t k3 = 0; k3 < b; ++k3) {
                const std::int32_t i0 = t0[p20 + m[2][0] * nums[k3]];
                const std::int32_t i1 = t1[p21 + m[2][1] * nums[k3]];
                const std::int32_t i2 = t2[p22 + m[2][2] * nums[k3]];
                if ((i0 | i1 | i2) < 0)
                    throw Error("internal: argument escaped the tabulated group range");
                const bool lz = (i0 == 0) | (i1 == 0) | (i2 == 0);
                const bool rz = z2 || zr3[k3];
                if (lz && rz) continue;
                if (lz != rz) {
                    violate(k1, k2, k3, i0, i1, i2, rz,
                            rz ? Rational(0) : r2 * plan.rhs_val[2][k3]);
                    continue;
                }
                Rational lhs = plan.vals[i0] * plan.vals[i1] * plan.vals[i2];
                Rational rhs = r2 * plan.rhs_val[2][k3];
                if (lhs != rhs) violate(k1, k2, k3, i0, i1, i2, false, rhs);
            }
        }
    }
}

void run_fast_generic(const FastPlan& plan, const std::vector<Rational>& pts,
                      const VerifyOptions& opts, VerifyReport& rep) {
    const std::size_t n = plan.m.size();
    const std::size_t b = pts.size();
    std::vector<std::size_t> k(n, 0);
    std::vector<std::vector<std::int64_t>> partial(n + 1, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) partial[0][i] = plan.offset[i];
    std::vector<char> zcount(n + 1, 0);
    std::vector<Rational> rprod(n + 1, Rational(1));

    std::function<void(std::size_t)> rec = [&](std::size_t d) {
        if (d == n) {
            bool lz = false;
            Rational lhs(1);
            for (std::size_t i = 0; i < n; ++i) {
                std::int32_t id = plan.tab[i][static_cast<std::size_t>(partial[n][i])];
                if (id < 0) throw Error("internal: argument escaped the tabulated group range");
                if (id == 0) {
                    lz = true;
                    break;
                }
                lhs *= plan.vals[static_cast<std::size_t>(id)];
            }
            const bool rz = zcount[n] != 0;
            if (lz && rz) return;
            Value lv = lz ? Value::zero() : Value::from_rational(lhs);
            Value rv = rz ? Value::zero() : Value::from_rational(rprod[n]);
            if (lz != rz || (!lz && lhs != rprod[n])) {
                std::vector<Rational> point(n);
                for (std::size_t j = 0; j < n; ++j) point[j] = pts[k[j]];
                record_violation(rep, opts, std::move(point), lv, rv);
            }
            return;
        }
        for (k[d] = 0; k[d] < b; ++k[d]) {
            for (std::size_t i = 0; i < n; ++i)
                partial[d + 1][i] = partial[d][i] + plan.m[d][i] * plan.nums[k[d]];
            zcount[d + 1] = zcount[d] || plan.rhs_zero[d][k[d]];
            rprod[d + 1] = zcount[d + 1] ? Rational(1) : rprod[d] * plan.rhs_val[d][k[d]];
            rec(d + 1);
        }
    };
    rec(0);
}

void run_generic(const std::vector<CharFn>& fs, const FormsMatrix& mat,
                 const std::vector<Rational>& pts, const EvalContext& ctx,
                 const VerifyOptions& opts, VerifyReport& rep) {
    const std::size_t n = fs.size();
    const std::size_t b = pts.size();
    const bool exact_mode = rep.exact;

    // right-hand factors ∏_i f_i(M[j][i]·u) per form j and box point
    std::vector<std::vector<Value>> rhs_jk(n, std::vector<Value>(b, Value::one()));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t kk = 0; kk < b; ++kk) {
            Value v = Value::one();
            for (std::size_t i = 0; i < n; ++i)
                v = v * fs[i].eval(mat.rows[j][i].ratio * pts[kk], ctx);
            rhs_jk[j][kk] = v;
        }
    }

    std::vector<std::size_t> k(n, 0);
    std::vector<std::vector<Rational>> partial(n + 1, std::vector<Rational>(n, Rational(0)));
    std::vector<Value> rprod(n + 1, Value::one());

    std::function<void(std::size_t)> rec = [&](std::size_t d) {
        if (d == n) {
            Value lhs = Value::one();
            for (std::size_t i = 0; i < n; ++i) lhs = lhs * fs[i].eval(partial[n][i], ctx);
            const Value& rhs = rprod[n];
            bool bad;
            if (exact_mode) {
                bad = !Value::equal(lhs, rhs, 0.0);
            } else {
                double dist = Value::distance(lhs, rhs);
                rep.worst_residual = std::max(rep.worst_residual, dist);
                bad = dist > opts.tolerance;
            }
            if (bad) {
                std::vector<Rational> point(n);
                for (std::size_t j = 0; j < n; ++j) point[j] = pts[k[j]];
                record_violation(rep, opts, std::move(point), lhs, rhs);
            }
            return;
        }
        for (k[d] = 0; k[d] < b; ++k[d]) {
            for (std::size_t i = 0; i < n; ++i)
                partial[d + 1][i] = partial[d][i] + mat.rows[d][i].ratio * pts[k[d]];
            rprod[d + 1] = rprod[d] * rhs_jk[d][k[d]];
            rec(d + 1);
        }
    };
    rec(0);
}

}  // namespace

VerifyReport verify_on_box(const std::vector<CharFn>& fs, const FormsMatrix& m,
                           const TestBox& box, const EvalContext& ctx,
                           const VerifyOptions& opts) {
    const std::size_t n = fs.size();
    if (n == 0) throw InvalidParams("verify_on_box: no functions");
    if (m.size() != n) throw InvalidParams("verify_on_box: matrix size does not match functions");
    m.validate(ctx.spec);

    const std::vector<Rational> pts = box.points();
    VerifyReport rep;
    rep.total_points = checked_pow(pts.size(), n, opts.budget);
    rep.exact = std::all_of(fs.begin(), fs.end(),
                            [](const CharFn& f) { return f.exact_valued(); });

    if (opts.check_charfn_invariants) charfn_prepass(fs, pts, ctx, opts, rep);

    FastPlan plan = build_fast_plan(fs, m, pts, ctx);
    if (plan.usable) {
        if (n == 3)
            run_fast_triple(plan, pts, opts, rep);
        else
            run_fast_generic(plan, pts, opts, rep);
    } else {
        run_generic(fs, m, pts, ctx, opts, rep);
    }
    return rep;
}

SupportGroupReport support_group_N(const std::vector<CharFn>& fs, const TestBox& box,
                                   const EvalContext& ctx, double tolerance) {
    const std::vector<Rational> pts = box.points();
    SupportGroupReport rep;
    std::vector<char> in_n(pts.size(), 1);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        for (const auto& f : fs) {
            if (f.eval(pts[k], ctx).is_zero(tolerance)) {
                in_n[k] = 0;
                break;
            }
        }
        if (in_n[k]) rep.points.push_back(pts[k]);
    }
    auto member = [&](const Rational& y) {
        return std::binary_search(rep.points.begin(), rep.points.end(), y);
    };
    auto boxed = [&](const Rational& y) {
        return std::binary_search(pts.begin(), pts.end(), y);
    };

    rep.is_subgroup_on_box = member(Rational(0));
    for (const auto& y : rep.points)
        if (!member(-y)) rep.is_subgroup_on_box = false;
    for (const auto& u : rep.points) {
        if (!rep.is_subgroup_on_box) break;
        for (const auto& w : rep.points) {
            Rational s = u + w;
            if (boxed(s) && !member(s)) {
                rep.is_subgroup_on_box = false;
                break;
            }
        }
    }

    rep.proph_holds = true;
    for (const auto& y : pts) {
        Rational two_y = Rational(2) * y;
        if (boxed(two_y) && member(two_y) && !member(y)) {
            rep.proph_holds = false;
            break;
        }
    }
    return rep;
}

bool derived_identities_check(const std::vector<CharFn>& fs, const TestBox& box,
                              const EvalContext& ctx, double tolerance) {
    if (fs.size() != 3)
        throw InvalidParams("derived_identities_check expects exactly three functions");
    const std::vector<Rational> pts = box.points();

    VerifyOptions vo;
    vo.tolerance = tolerance;
    vo.budget = UINT64_MAX;
    VerifyReport rep = verify_on_box(fs, FormsMatrix::canonical_three_forms(), box, ctx, vo);
    if (!rep.clean())
        throw PreconditionViolated(
            "triple does not satisfy the independence equation on this box");

    std::vector<std::vector<Value>> ev(3, std::vector<Value>(pts.size()));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < pts.size(); ++k) ev[i][k] = fs[i].eval(pts[k], ctx);

    auto index_of = [&](const Rational& y) -> std::ptrdiff_t {
        auto it = std::lower_bound(pts.begin(), pts.end(), y);
        if (it == pts.end() || !(*it == y)) return -1;
        return it - pts.begin();
    };

    // doubling identities f_i(2y) = f_i(y)^2 ∏_{k≠i} |f_k(y)|^2
    for (std::size_t k = 0; k < pts.size(); ++k) {
        std::ptrdiff_t k2 = index_of(Rational(2) * pts[k]);
        if (k2 < 0) continue;
        for (std::size_t i = 0; i < 3; ++i) {
            Value rhs = ev[i][k] * ev[i][k];
            for (std::size_t l = 0; l < 3; ++l)
                if (l != i) rhs = rhs * ev[l][k].modulus_squared();
            if (!Value::equal(ev[i][static_cast<std::size_t>(k2)], rhs, tolerance))
                return false;
        }
    }

    // argument-swap identities on common cosets of 2Y
    std::vector<std::vector<Value>> mod(3, std::vector<Value>(pts.size()));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < pts.size(); ++k)
            mod[i][k] = ev[i][k].exact()
                            ? Value::from_rational(ev[i][k].exact_modulus())
                            : Value::approx({ev[i][k].abs(), 0.0});
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t c = a + 1; c < pts.size(); ++c) {
            if (!divisible_by(ctx.spec, pts[a] - pts[c], 2)) continue;
            for (std::size_t i = 0; i < 3; ++i) {
                Value lhs = mod[i][a];
                Value rhs = mod[i][c];
                for (std::size_t l = 0; l < 3; ++l) {
                    if (l == i) continue;
                    lhs = lhs * mod[l][c];
                    rhs = rhs * mod[l][a];
                }
                if (!Value::equal(lhs, rhs, tolerance)) return false;
            }
        }
    }
    return true;
}

std::array<Rational, 3> halving_solve(const SupernaturalSpec& spec, const Rational& y1,
                                      const Rational& y2, const Rational& y3) {
    for (const Rational& y : {y1, y2, y3})
        if (!contains(spec, y))
            throw NotMember("halving_solve: " + y.to_string() + " is not in the group");
    return {halve(spec, y1 + y2), halve(spec, y3 - y2), halve(spec, y1 - y3)};
}

bool nonvanishing_solution_is_character(const std::vector<CharFn>& fs, const TestBox& box,
                                        const EvalContext& ctx, double tolerance) {
    if (fs.size() != 3)
        throw InvalidParams("nonvanishing_solution_is_character expects three functions");
    const std::vector<Rational> pts = box.points();
    for (const auto& f : fs)
        for (const auto& y : pts)
            if (f.eval(y, ctx).is_zero(tolerance))
                throw PreconditionViolated("a function vanishes at " + y.to_string());

    VerifyOptions vo;
    vo.tolerance = tolerance;
    vo.budget = UINT64_MAX;
    VerifyReport rep = verify_on_box(fs, FormsMatrix::canonical_three_forms(), box, ctx, vo);
    if (!rep.clean())
        throw PreconditionViolated(
            "triple does not satisfy the independence equation on this box");

    for (const auto& f : fs) {
        for (const auto& u : pts) {
            for (const auto& w : pts) {
                Rational s = u + w;
                if (!std::binary_search(pts.begin(), pts.end(), s)) continue;
                if (!Value::equal(f.eval(s, ctx), f.eval(u, ctx) * f.eval(w, ctx), tolerance))
                    return false;
            }
        }
    }
    return true;
}

}  // namespace sdlab
