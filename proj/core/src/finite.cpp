#include "sdlab/finite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sdlab {

FiniteGroupSpec::FiniteGroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw InvalidParams("finite group needs at least one modulus");
    for (std::int64_t m : moduli_) {
        if (m < 1) throw InvalidParams("finite group moduli must be >= 1");
        order_ *= m;
        exponent_ = std::lcm(exponent_, m);
        if (order_ > kMaxOrder)
            throw InvalidParams("finite group order exceeds the enumeration cap " +
                                std::to_string(kMaxOrder));
    }
}

std::vector<std::int64_t> FiniteGroupSpec::element(std::int64_t index) const {
    std::vector<std::int64_t> x(rank());
    for (std::size_t i = rank(); i-- > 0;) {
        x[i] = index % moduli_[i];
        index /= moduli_[i];
    }
    return x;
}

std::int64_t FiniteGroupSpec::index(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != rank()) throw InvalidParams("element rank mismatch");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        std::int64_t c = coords[i] % moduli_[i];
        if (c < 0) c += moduli_[i];
        idx = idx * moduli_[i] + c;
    }
    return idx;
}

std::int64_t FiniteGroupSpec::add(std::int64_t a, std::int64_t b) const {
    auto x = element(a);
    auto y = element(b);
    for (std::size_t i = 0; i < rank(); ++i) x[i] += y[i];
    return index(x);
}

std::int64_t FiniteGroupSpec::neg(std::int64_t a) const {
    auto x = element(a);
    for (auto& c : x) c = -c;
    return index(x);
}

std::int64_t FiniteGroupSpec::scale(std::int64_t k, std::int64_t a) const {
    auto x = element(a);
    for (std::size_t i = 0; i < rank(); ++i) {
        __int128 v = static_cast<__int128>(k) * x[i];
        x[i] = static_cast<std::int64_t>(v % moduli_[i]);
    }
    return index(x);
}

std::int64_t FiniteGroupSpec::pairing_num(std::int64_t xi, std::int64_t yi) const {
    auto x = element(xi);
    auto y = element(yi);
    std::int64_t num = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        num = (num + x[i] * y[i] % exponent_ * (exponent_ / moduli_[i])) % exponent_;
    return num;
}

Dist Dist::point_mass(const FiniteGroupSpec& g, std::int64_t at) {
    Dist d;
    d.p.assign(static_cast<std::size_t>(g.order()), Rational(0));
    d.p.at(static_cast<std::size_t>(at)) = 1;
    return d;
}

Dist Dist::uniform(const FiniteGroupSpec& g) {
    Dist d;
    d.p.assign(static_cast<std::size_t>(g.order()), Rational(1, g.order()));
    return d;
}

Dist Dist::uniform_on(const FiniteGroupSpec& g, const std::vector<std::int64_t>& support) {
    if (support.empty()) throw InvalidParams("uniform_on: empty support");
    Dist d;
    d.p.assign(static_cast<std::size_t>(g.order()), Rational(0));
    for (std::int64_t s : support)
        d.p.at(static_cast<std::size_t>(s)) = Rational(1, static_cast<std::int64_t>(support.size()));
    return d;
}

void Dist::validate(const FiniteGroupSpec& g) const {
    if (p.size() != static_cast<std::size_t>(g.order()))
        throw InvalidParams("distribution size does not match the group order");
    Rational sum(0);
    for (const auto& x : p) {
        if (x.sign() < 0) throw InvalidParams("distribution has a negative weight");
        sum += x;
    }
    if (!(sum == Rational(1))) throw InvalidParams("distribution weights sum to " + sum.to_string());
}

std::vector<std::int64_t> Dist::support() const {
    std::vector<std::int64_t> s;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) s.push_back(static_cast<std::int64_t>(i));
    return s;
}

bool is_homomorphism(const FiniteGroupSpec& g, const AutMatrix& a) {
    const std::size_t r = g.rank();
    if (a.a.size() != r) return false;
    for (const auto& row : a.a)
        if (row.size() != r) return false;
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i)
            if ((a.a[j][i] % g.moduli()[j]) * g.moduli()[i] % g.moduli()[j] != 0) return false;
    return true;
}

std::int64_t apply(const FiniteGroupSpec& g, const AutMatrix& a, std::int64_t x) {
    auto coords = g.element(x);
    std::vector<std::int64_t> out(g.rank(), 0);
    for (std::size_t j = 0; j < g.rank(); ++j) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < g.rank(); ++i)
            acc += static_cast<__int128>(a.a[j][i]) * coords[i];
        out[j] = static_cast<std::int64_t>(acc % g.moduli()[j]);
    }
    return g.index(out);
}

bool is_automorphism(const FiniteGroupSpec& g, const AutMatrix& a) {
    if (!is_homomorphism(g, a))
        throw NotHomomorphism("matrix entries do not satisfy a[j][i]·m_i ≡ 0 (mod m_j)");
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (std::int64_t x = 0; x < g.order(); ++x) {
        std::int64_t y = apply(g, a, x);
        if (seen[static_cast<std::size_t>(y)]) return false;
        seen[static_cast<std::size_t>(y)] = 1;
    }
    return true;
}

AutMatrix adjoint(const FiniteGroupSpec& g, const AutMatrix& a) {
    if (!is_homomorphism(g, a))
        throw NotHomomorphism("adjoint needs a homomorphism matrix");
    const std::size_t r = g.rank();
    AutMatrix t;
    t.a.assign(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            // <Ax, y> = <x, Ãy> forces (Ãy)_i = Σ_j a[j][i]·(m_i/m_j)·y_j
            __int128 v = static_cast<__int128>(a.a[j][i]) * g.moduli()[i] / g.moduli()[j];
            std::int64_t e = static_cast<std::int64_t>(v % g.moduli()[i]);
            if (e < 0) e += g.moduli()[i];
            t.a[i][j] = e;
        }
    }
    return t;
}

std::vector<std::int64_t> subgroup_closure(const FiniteGroupSpec& g,
                                           const std::vector<std::int64_t>& gens) {
    std::set<std::int64_t> k{0};
    std::vector<std::int64_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::int64_t> next;
        for (std::int64_t x : frontier) {
            for (std::int64_t gen : gens) {
                std::int64_t s = g.add(x, gen);
                if (k.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    return {k.begin(), k.end()};
}

std::vector<std::int64_t> annihilator(const FiniteGroupSpec& g,
                                      const std::vector<std::int64_t>& k_gens) {
    std::vector<std::int64_t> ann;
    for (std::int64_t y = 0; y < g.order(); ++y) {
        bool ok = true;
        for (std::int64_t x : k_gens) {
            if (g.pairing_num(x, y) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) ann.push_back(y);
    }
    const std::size_t k_size = subgroup_closure(g, k_gens).size();
    if (k_size * ann.size() != static_cast<std::size_t>(g.order()))
        throw Error("internal: annihilator duality |K|·|A(G,K)| = |G| failed");
    return ann;
}

std::vector<std::complex<double>> char_fn_values(const FiniteGroupSpec& g, const Dist& d) {
    d.validate(g);
    const double tau = 2.0 * 3.14159265358979323846;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(g.order()));
    const auto supp = d.support();
    for (std::int64_t y = 0; y < g.order(); ++y) {
        std::complex<double> acc(0.0, 0.0);
        for (std::int64_t x : supp) {
            double a = tau * static_cast<double>(g.pairing_num(x, y)) /
                       static_cast<double>(g.exponent());
            acc += d.p[static_cast<std::size_t>(x)].to_double() *
                   std::complex<double>(std::cos(a), std::sin(a));
        }
        out[static_cast<std::size_t>(y)] = acc;
    }
    return out;
}

std::vector<CycValue> char_fn_values_exact(const FiniteGroupSpec& g, const Dist& d) {
    d.validate(g);
    const std::int64_t l = g.exponent();
    std::vector<CycValue> out(static_cast<std::size_t>(g.order()), CycValue(l));
    const auto supp = d.support();
    for (std::int64_t y = 0; y < g.order(); ++y) {
        CycValue acc(l);
        for (std::int64_t x : supp)
            acc += CycValue::root_power(l, g.pairing_num(x, y), d.p[static_cast<std::size_t>(x)]);
        out[static_cast<std::size_t>(y)] = acc;
    }
    return out;
}

bool joint_independence_check(const FiniteGroupSpec& g, const std::vector<Dist>& dists,
                              const std::vector<std::vector<std::int64_t>>& m,
                              std::uint64_t max_tuples) {
    const std::size_t n = dists.size();
    if (m.size() != n) throw InvalidParams("forms matrix size does not match distributions");
    for (const auto& row : m)
        if (row.size() != n) throw InvalidParams("forms matrix is not square");
    for (const auto& d : dists) d.validate(g);

    std::vector<std::vector<std::int64_t>> supports;
    __int128 tuples = 1;
    for (const auto& d : dists) {
        supports.push_back(d.support());
        tuples *= static_cast<std::int64_t>(supports.back().size());
    }
    if (tuples > static_cast<__int128>(max_tuples))
        throw BudgetExceeded("joint law enumeration exceeds the tuple budget");

    // joint law of (L_1, ..., L_n) and its marginals, exactly
    std::map<std::vector<std::int64_t>, Rational> joint;
    std::vector<std::vector<Rational>> marginal(
        n, std::vector<Rational>(static_cast<std::size_t>(g.order()), Rational(0)));

    std::vector<std::size_t> pick(n, 0);
    while (true) {
        Rational prob(1);
        std::vector<std::int64_t> xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = supports[i][pick[i]];
            prob *= dists[i].p[static_cast<std::size_t>(xs[i])];
        }
        std::vector<std::int64_t> ls(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc = g.add(acc, g.scale(m[j][i], xs[i]));
            ls[j] = acc;
        }
        joint[ls] += prob;
        for (std::size_t j = 0; j < n; ++j)
            marginal[j][static_cast<std::size_t>(ls[j])] += prob;

        std::size_t d = 0;
        for (; d < n; ++d) {
            if (++pick[d] < supports[d].size()) break;
            pick[d] = 0;
        }
        if (d == n) break;
    }

    // compare over the product of marginal supports (covers vanishing joint cells)
    std::vector<std::vector<std::int64_t>> msupp(n);
    __int128 cells = 1;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::int64_t v = 0; v < g.order(); ++v)
            if (!marginal[j][static_cast<std::size_t>(v)].is_zero()) msupp[j].push_back(v);
        cells *= static_cast<std::int64_t>(msupp[j].size());
    }
    if (cells > static_cast<__int128>(max_tuples))
        throw BudgetExceeded("marginal product enumeration exceeds the tuple budget");

    std::vector<std::size_t> cell(n, 0);
    while (true) {
        Rational prod(1);
        std::vector<std::int64_t> ls(n);
        for (std::size_t j = 0; j < n; ++j) {
            ls[j] = msupp[j][cell[j]];
            prod *= marginal[j][static_cast<std::size_t>(ls[j])];
        }
        auto it = joint.find(ls);
        Rational have = it == joint.end() ? Rational(0) : it->second;
        if (!(have == prod)) return false;

        std::size_t d = 0;
        for (; d < n; ++d) {
            if (++cell[d] < msupp[d].size()) break;
            cell[d] = 0;
        }
        if (d == n) break;
    }
    return true;
}

EquationCheckResult sd_equation_check(const FiniteGroupSpec& g, const std::vector<Dist>& dists,
                                      const std::vector<std::vector<std::int64_t>>& m,
                                      EquationMode mode, double tolerance) {
    const std::size_t n = dists.size();
    if (m.size() != n) throw InvalidParams("forms matrix size does not match distributions");
    for (const auto& row : m)
        if (row.size() != n) throw InvalidParams("forms matrix is not square");

    EquationCheckResult res;
    const std::int64_t order = g.order();

    // adjoint of integer multiplication is the same multiplication on the
    // self-dual coordinates, so both sides reuse g.scale on character indices
    std::vector<std::size_t> u(n, 0);
    if (mode == EquationMode::Float) {
        std::vector<std::vector<std::complex<double>>> tab;
        tab.reserve(n);
        for (const auto& d : dists) tab.push_back(char_fn_values(g, d));
        while (true) {
            std::complex<double> lhs(1.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t arg = 0;
                for (std::size_t j = 0; j < n; ++j)
                    arg = g.add(arg, g.scale(m[j][i], static_cast<std::int64_t>(u[j])));
                lhs *= tab[i][static_cast<std::size_t>(arg)];
            }
            std::complex<double> rhs(1.0, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rhs *= tab[i][static_cast<std::size_t>(
                        g.scale(m[j][i], static_cast<std::int64_t>(u[j])))];
            double diff = std::abs(lhs - rhs);
            res.worst_residual = std::max(res.worst_residual, diff);
            if (diff > tolerance) res.holds = false;
            ++res.tuples_checked;

            std::size_t d = 0;
            for (; d < n; ++d) {
                if (static_cast<std::int64_t>(++u[d]) < order) break;
                u[d] = 0;
            }
            if (d == n) break;
        }
    } else {
        std::vector<std::vector<CycValue>> tab;
        tab.reserve(n);
        for (const auto& d : dists) tab.push_back(char_fn_values_exact(g, d));
        while (true) {
            CycValue lhs = CycValue::from_rational(g.exponent(), 1);
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t arg = 0;
                for (std::size_t j = 0; j < n; ++j)
                    arg = g.add(arg, g.scale(m[j][i], static_cast<std::int64_t>(u[j])));
                lhs = lhs * tab[i][static_cast<std::size_t>(arg)];
            }
            CycValue rhs = CycValue::from_rational(g.exponent(), 1);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rhs = rhs * tab[i][static_cast<std::size_t>(
                              g.scale(m[j][i], static_cast<std::int64_t>(u[j])))];
            if (!lhs.equals_in_field(rhs)) res.holds = false;
            ++res.tuples_checked;

            std::size_t d = 0;
            for (; d < n; ++d) {
                if (static_cast<std::int64_t>(++u[d]) < order) break;
                u[d] = 0;
            }
            if (d == n) break;
        }
    }
    return res;
}

IdempotentClass idempotent_classify(const FiniteGroupSpec& g, const Dist& d) {
    d.validate(g);
    IdempotentClass out;
    const auto supp = d.support();
    const Rational want(1, static_cast<std::int64_t>(supp.size()));
    for (std::int64_t s : supp)
        if (!(d.p[static_cast<std::size_t>(s)] == want)) return out;

    const std::int64_t shift = supp.front();  // lex-min by index order
    std::set<std::int64_t> k;
    for (std::int64_t s : supp) k.insert(g.add(s, g.neg(shift)));
    if (!k.count(0)) return out;
    for (std::int64_t x : k)
        for (std::int64_t y : k)
            if (!k.count(g.add(x, y))) return out;

    out.is_shifted_idempotent = true;
    out.subgroup.assign(k.begin(), k.end());
    out.shift = shift;
    return out;
}

Dist random_dist(const FiniteGroupSpec& g, std::uint64_t seed, RandomProfile profile) {
    std::mt19937_64 rng(seed);
    const std::size_t order = static_cast<std::size_t>(g.order());
    std::vector<std::int64_t> w(order, 0);
    if (profile == RandomProfile::Sparse) {
        const std::size_t atoms = 1 + static_cast<std::size_t>(rng() % 4);
        std::set<std::size_t> chosen;
        while (chosen.size() < std::min(atoms, order))
            chosen.insert(static_cast<std::size_t>(rng() % order));
        for (std::size_t at : chosen) w[at] = 1 + static_cast<std::int64_t>(rng() % 4);
    } else {
        for (auto& x : w) x = static_cast<std::int64_t>(rng() % 9);
        bool all_zero = std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; });
        if (all_zero) w[0] = 1;
    }
    std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
    Dist d;
    d.p.resize(order);
    for (std::size_t i = 0; i < order; ++i) d.p[i] = Rational(w[i], total);
    return d;
}

}  // namespace sdlab
