#include "sdlab/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sdlab/primes.hpp"

namespace sdlab {

SubgroupDesc SubgroupDesc::scaled_height(Rational scale, SupernaturalSpec spec) {
    if (scale.sign() <= 0) throw InvalidParams("subgroup scale must be positive");
    SubgroupDesc d;
    d.kind = Kind::ScaledHeight;
    d.scale = std::move(scale);
    d.spec = std::move(spec);
    return d;
}

SubgroupDesc SubgroupDesc::cyclic(Rational generator) {
    if (generator.sign() < 0) throw InvalidParams("cyclic generator must be >= 0");
    SubgroupDesc d;
    d.kind = Kind::Cyclic;
    d.generator = std::move(generator);
    return d;
}

bool SubgroupDesc::contains(const Rational& y) const {
    if (kind == Kind::ScaledHeight) return sdlab::contains(spec, y / scale);
    if (generator.is_zero()) return y.is_zero();
    return (y / generator).is_integer();
}

struct CharFn::Node {
    Kind kind;
    SubgroupDesc support;               // Idempotent
    Rational phase_angle;               // Idempotent, Gaussian
    SubgroupDesc outer;                 // TwoLevel
    std::int64_t inner_prime = 0;       // TwoLevel
    Rational level;                     // TwoLevel
    std::map<Rational, Value> entries;  // FiniteSupport
    double sigma = 0.0;                 // Gaussian
    std::vector<CharFn> children;       // ModulusSquare, Product
};

CharFn CharFn::idempotent(SubgroupDesc support, Rational phase_angle) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Idempotent;
    n->support = std::move(support);
    n->phase_angle = std::move(phase_angle);
    return CharFn(std::move(n));
}

CharFn CharFn::two_level_unchecked(SubgroupDesc outer, std::int64_t inner_prime, Rational level) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::TwoLevel;
    n->outer = std::move(outer);
    n->inner_prime = inner_prime;
    n->level = std::move(level);
    return CharFn(std::move(n));
}

CharFn CharFn::two_level(SubgroupDesc outer, std::int64_t inner_prime, Rational level) {
    if (!is_prime(inner_prime)) throw InvalidParams("two_level: inner prime must be prime");
    if (level.sign() <= 0 || level >= Rational(1))
        throw InvalidParams("two_level: level must lie strictly between 0 and 1");
    return two_level_unchecked(std::move(outer), inner_prime, std::move(level));
}

CharFn CharFn::finite_support_unchecked(std::map<Rational, Value> entries) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::FiniteSupport;
    n->entries = std::move(entries);
    return CharFn(std::move(n));
}

CharFn CharFn::finite_support(std::map<Rational, Value> entries) {
    for (const auto& [y, v] : entries) {
        if (y.is_zero())
            throw InvalidParams("finite_support: the value at 0 is fixed at 1");
        if (v.abs() > 1.0 + 1e-12)
            throw InvalidParams("finite_support: modulus exceeds 1 at " + y.to_string());
        auto it = entries.find(-y);
        if (it == entries.end() || !Value::equal(it->second, v.conj(), 1e-12))
            throw InvalidParams("finite_support: entries are not Hermitian at " + y.to_string());
    }
    return finite_support_unchecked(std::move(entries));
}

CharFn CharFn::gaussian(double sigma, Rational phase_angle) {
    if (!(sigma >= 0.0)) throw InvalidParams("gaussian: sigma must be >= 0");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Gaussian;
    n->sigma = sigma;
    n->phase_angle = std::move(phase_angle);
    return CharFn(std::move(n));
}

CharFn CharFn::modulus_square_of(CharFn base) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ModulusSquare;
    n->children.push_back(std::move(base));
    return CharFn(std::move(n));
}

CharFn CharFn::product_of(std::vector<CharFn> factors) {
    if (factors.empty()) throw InvalidParams("product of zero functions");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(factors);
    return CharFn(std::move(n));
}

CharFn::Kind CharFn::kind() const { return node_->kind; }

namespace {

Value phase_value(const Rational& phase_angle, const Rational& y, const EvalContext& ctx) {
    if (phase_angle.is_zero() || y.is_zero()) return Value::one();
    if (!ctx.cyclic_generator || ctx.cyclic_generator->is_zero())
        throw DomainError("phase evaluation requires a designated cyclic generator");
    Rational k = y / *ctx.cyclic_generator;
    if (!k.is_integer())
        throw DomainError("point " + y.to_string() +
                          " is not an integer multiple of the designated generator");
    return Value::exact_polar(1, k * phase_angle);
}

}  // namespace

Value CharFn::eval(const Rational& y, const EvalContext& ctx) const {
    if (!contains(ctx.spec, y))
        throw DomainError("eval: " + y.to_string() + " lies outside the character group");
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Idempotent:
            if (!n.support.contains(y)) return Value::zero();
            return phase_value(n.phase_angle, y, ctx);
        case Kind::TwoLevel: {
            if (!n.outer.contains(y)) return Value::zero();
            if (n.outer.contains(y / Rational(n.inner_prime))) return Value::one();
            return Value::from_rational(n.level);
        }
        case Kind::FiniteSupport: {
            auto it = n.entries.find(y);
            if (it != n.entries.end()) return it->second;
            return y.is_zero() ? Value::one() : Value::zero();
        }
        case Kind::Gaussian: {
            Value ph = phase_value(n.phase_angle, y, ctx);
            if (n.sigma == 0.0) return ph;
            double yy = y.to_double();
            double mod = std::exp(-n.sigma * yy * yy);
            return Value::approx(mod * ph.to_complex());
        }
        case Kind::ModulusSquare:
            return n.children[0].eval(y, ctx).modulus_squared();
        case Kind::Product: {
            Value v = Value::one();
            for (const auto& f : n.children) v = v * f.eval(y, ctx);
            return v;
        }
    }
    throw Error("unreachable charfn kind");
}

bool CharFn::exact_valued() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Idempotent:
            return true;
        case Kind::TwoLevel:
            return true;
        case Kind::FiniteSupport:
            return std::all_of(n.entries.begin(), n.entries.end(),
                               [](const auto& kv) { return kv.second.exact(); });
        case Kind::Gaussian:
            return n.sigma == 0.0;
        case Kind::ModulusSquare:
        case Kind::Product:
            return std::all_of(n.children.begin(), n.children.end(),
                               [](const CharFn& f) { return f.exact_valued(); });
    }
    return false;
}

bool CharFn::exact_real_valued() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Idempotent:
            return n.phase_angle.is_zero() || n.phase_angle == Rational(1, 2);
        case Kind::TwoLevel:
            return true;
        case Kind::FiniteSupport:
            return std::all_of(n.entries.begin(), n.entries.end(), [](const auto& kv) {
                return kv.second.as_exact_real().has_value();
            });
        case Kind::Gaussian:
            return n.sigma == 0.0 &&
                   (n.phase_angle.is_zero() || n.phase_angle == Rational(1, 2));
        case Kind::ModulusSquare:
            return n.children[0].exact_valued();
        case Kind::Product:
            return std::all_of(n.children.begin(), n.children.end(),
                               [](const CharFn& f) { return f.exact_real_valued(); });
    }
    return false;
}

#define SDLAB_REQUIRE_KIND(k)                                              \
    do {                                                                   \
        if (node_->kind != Kind::k) throw DomainError("charfn is not " #k); \
    } while (0)

const SubgroupDesc& CharFn::support() const {
    SDLAB_REQUIRE_KIND(Idempotent);
    return node_->support;
}
const Rational& CharFn::phase_angle() const {
    if (node_->kind != Kind::Idempotent && node_->kind != Kind::Gaussian)
        throw DomainError("charfn has no phase");
    return node_->phase_angle;
}
const SubgroupDesc& CharFn::outer() const {
    SDLAB_REQUIRE_KIND(TwoLevel);
    return node_->outer;
}
std::int64_t CharFn::inner_prime() const {
    SDLAB_REQUIRE_KIND(TwoLevel);
    return node_->inner_prime;
}
const Rational& CharFn::level() const {
    SDLAB_REQUIRE_KIND(TwoLevel);
    return node_->level;
}
const std::map<Rational, Value>& CharFn::entries() const {
    SDLAB_REQUIRE_KIND(FiniteSupport);
    return node_->entries;
}
double CharFn::sigma() const {
    SDLAB_REQUIRE_KIND(Gaussian);
    return node_->sigma;
}
const std::vector<CharFn>& CharFn::children() const {
    if (node_->kind != Kind::ModulusSquare && node_->kind != Kind::Product)
        throw DomainError("charfn has no children");
    return node_->children;
}

#undef SDLAB_REQUIRE_KIND

bool CharFn::equals(const CharFn& o) const {
    if (node_ == o.node_) return true;
    const Node& a = *node_;
    const Node& b = *o.node_;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::Idempotent:
            return a.support == b.support && a.phase_angle == b.phase_angle;
        case Kind::TwoLevel:
            return a.outer == b.outer && a.inner_prime == b.inner_prime && a.level == b.level;
        case Kind::FiniteSupport:
            if (a.entries.size() != b.entries.size()) return false;
            return std::equal(a.entries.begin(), a.entries.end(), b.entries.begin(),
                              [](const auto& x, const auto& y) {
                                  return x.first == y.first &&
                                         Value::equal(x.second, y.second, 0.0);
                              });
        case Kind::Gaussian:
            return a.sigma == b.sigma && a.phase_angle == b.phase_angle;
        case Kind::ModulusSquare:
        case Kind::Product:
            return a.children == b.children;
    }
    return false;
}

CharFn product(const std::vector<CharFn>& fs) {
    if (fs.empty()) throw InvalidParams("product of zero functions");
    if (fs.size() == 1) return fs[0];
    return CharFn::product_of(fs);
}

CharFn modulus_square(const CharFn& f) { return CharFn::modulus_square_of(f); }

CharFn with_value_at(const CharFn& f, const Rational& y, const Value& v) {
    if (f.kind() != CharFn::Kind::FiniteSupport)
        throw InvalidParams("with_value_at supports FiniteSupport functions only");
    auto entries = f.entries();
    entries[y] = v;
    return CharFn::finite_support_unchecked(std::move(entries));
}

std::vector<Rational> invariance_subgroup(const CharFn& f, const TestBox& box,
                                          const EvalContext& ctx, double tolerance) {
    const std::vector<Rational> pts = box.points();
    const Value one = Value::one();
    std::set<Rational> level_one;
    for (const auto& y : pts)
        if (Value::equal(f.eval(y, ctx), one, tolerance)) level_one.insert(y);

    for (const auto& h : level_one) {
        if (!level_one.count(-h))
            throw ClosureViolation("invariance set is not symmetric at " + h.to_string());
    }
    for (const auto& h1 : level_one) {
        for (const auto& h2 : level_one) {
            Rational s = h1 + h2;
            if (std::binary_search(pts.begin(), pts.end(), s) && !level_one.count(s))
                throw ClosureViolation("invariance set is not closed at " + h1.to_string() +
                                       " + " + h2.to_string());
        }
    }
    for (const auto& h : level_one) {
        for (const auto& y : pts) {
            if (!Value::equal(f.eval(y + h, ctx), f.eval(y, ctx), tolerance))
                throw ClosureViolation("function is not invariant under shift by " +
                                       h.to_string() + " at " + y.to_string());
        }
    }
    return {level_one.begin(), level_one.end()};
}

bool pd_check_cyclic(const CharFn& f, const Rational& generator, int period, double tolerance,
                     const EvalContext& ctx) {
    if (period < 1) throw InvalidParams("pd_check_cyclic: period must be >= 1");
    std::vector<Value> v;
    v.reserve(3 * period);
    for (int k = 0; k < 3 * period; ++k) v.push_back(f.eval(Rational(k) * generator, ctx));
    for (int k = 0; k + period < 3 * period; ++k) {
        if (!Value::equal(v[k + period], v[k], tolerance))
            throw NotPeriodic("restriction is not " + std::to_string(period) +
                              "-periodic at step " + std::to_string(k));
    }
    const double im_slack = std::max(tolerance, 1e-9);
    for (int j = 0; j < period; ++j) {
        std::complex<double> comp(0.0, 0.0);
        for (int k = 0; k < period; ++k) {
            double a = -2.0 * Value::pi() * j * k / period;
            comp += v[k].to_complex() * std::complex<double>(std::cos(a), std::sin(a));
        }
        if (comp.real() < -tolerance || std::abs(comp.imag()) > im_slack) return false;
    }
    return true;
}

bool is_idempotent_on_box(const CharFn& f, const TestBox& box, const EvalContext& ctx,
                          double tolerance) {
    const std::vector<Rational> pts = box.points();
    std::set<Rational> mod_one;
    for (const auto& y : pts) {
        Value v = f.eval(y, ctx);
        if (std::abs(v.abs() - 1.0) <= tolerance)
            mod_one.insert(y);
        else if (!v.is_zero(tolerance))
            return false;  // an intermediate level is present
    }
    if (!mod_one.count(Rational(0))) return false;
    for (const auto& y : mod_one)
        if (!mod_one.count(-y)) return false;
    for (const auto& u : mod_one) {
        for (const auto& w : mod_one) {
            Rational s = u + w;
            if (!std::binary_search(pts.begin(), pts.end(), s)) continue;
            if (!mod_one.count(s)) return false;
            if (!Value::equal(f.eval(s, ctx), f.eval(u, ctx) * f.eval(w, ctx), tolerance))
                return false;  // phase fails to be a character
        }
    }
    return true;
}

bool is_gauss_idem_modulus_on_box(const CharFn& f, const TestBox& box, double tolerance,
                                  const EvalContext& ctx) {
    const std::vector<Rational> pts = box.points();
    std::set<Rational> supp;
    for (const auto& y : pts)
        if (!f.eval(y, ctx).is_zero(tolerance)) supp.insert(y);
    if (!supp.count(Rational(0))) return false;  // not normalized
    for (const auto& y : supp)
        if (!supp.count(-y)) return false;
    for (const auto& u : supp) {
        for (const auto& w : supp) {
            Rational s = u + w;
            if (std::binary_search(pts.begin(), pts.end(), s) && !supp.count(s))
                return false;  // support is not a subgroup pattern
        }
    }
    // fit sigma from the smallest positive support point, then match all moduli
    Rational y1 = 0;
    for (const auto& y : supp) {
        if (y.sign() > 0) {
            y1 = y;
            break;
        }
    }
    double sigma = 0.0;
    if (!y1.is_zero()) {
        double m1 = f.eval(y1, ctx).abs();
        if (m1 > 1.0 + tolerance) return false;
        double t = y1.to_double();
        sigma = m1 >= 1.0 ? 0.0 : -std::log(m1) / (t * t);
    }
    for (const auto& y : supp) {
        double t = y.to_double();
        double want = std::exp(-sigma * t * t);
        if (std::abs(f.eval(y, ctx).abs() - want) > tolerance) return false;
    }
    return true;
}

}  // namespace sdlab
