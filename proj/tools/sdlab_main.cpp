// Command-line front end: classification of the ambient group, equation
// verification for built-in or file-provided constructions, and the
// finite-group cross-check between the equation test and the literal
// independence test.
//
// Exit codes: 0 expectations met, 1 a checked expectation failed,
// 2 configuration/parse/budget problems.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdlab/finite.hpp"
#include "sdlab/json_io.hpp"
#include "sdlab/runner.hpp"

using nlohmann::json;
using namespace sdlab;
namespace io = sdlab::jsonio;

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// "default=1", "default=inf,2=0,5=3", or a full JSON object
SupernaturalSpec parse_spec_arg(const std::string& raw) {
    const std::string s = trimmed(raw);
    if (s.empty()) throw ParseError("empty group description");
    if (s.front() == '{') return io::spec_from_json(json::parse(s));
    Height def = Height::infinity();
    bool have_default = false;
    std::map<std::int64_t, Height> ex;
    std::stringstream ss(s);
    std::string tok;
    auto parse_height = [](const std::string& v) -> Height {
        if (v == "inf") return Height::infinity();
        const Rational r = Rational::parse(v);
        if (!r.is_integer() || r.sign() < 0) throw ParseError("bad height '" + v + "'");
        return Height(static_cast<std::uint32_t>(r.num()));
    };
    while (std::getline(ss, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in group description, got '" + tok + "'");
        const std::string key = trimmed(tok.substr(0, eq));
        const std::string val = trimmed(tok.substr(eq + 1));
        if (key == "default") {
            def = parse_height(val);
            have_default = true;
        } else {
            const Rational p = Rational::parse(key);
            if (!p.is_integer()) throw ParseError("bad prime '" + key + "'");
            ex.emplace(p.num(), parse_height(val));
        }
    }
    if (!have_default) throw ParseError("group description needs default=<height>");
    return SupernaturalSpec(def, std::move(ex));
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(Rational::parse(trimmed(tok)));
    if (out.empty()) throw ParseError("empty rational list");
    return out;
}

// "1/2", "-1", "(0.5,0.1)" or "0.5,0.1"
Value parse_value_arg(const std::string& raw) {
    std::string s = trimmed(raw);
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string re, im;
        std::getline(ss, re, ',');
        std::getline(ss, im, ',');
        try {
            return Value::approx({std::stod(trimmed(re)), std::stod(trimmed(im))});
        } catch (const std::exception&) {
            throw ParseError("bad complex value '" + raw + "'");
        }
    }
    return Value::from_rational(Rational::parse(s));
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("SD_LAB_BUDGET");
    if (!env) return fallback;
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(env, &pos);
        if (pos != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad SD_LAB_BUDGET value '") + env + "'");
    }
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open output file '" + out_path + "'");
    f << content << "\n";
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string spec = "default=inf";
    std::string format = "json";
    std::string out;
};

int run_classify(const ClassifyArgs& a) {
    const SupernaturalSpec spec = parse_spec_arg(a.spec);
    const SolenoidClass c = classify_solenoid(spec);
    const json j = io::classification_to_json(spec, c);
    if (a.format == "json") {
        write_output(j.dump(2), a.out);
    } else {
        std::ostringstream os;
        os << "case " << c.case_number << "\n";
        os << "witness_prime " << (c.witness_prime ? std::to_string(*c.witness_prime) : "-")
           << "\n";
        os << "smallest_non_aut_prime "
           << (c.smallest_non_aut_prime ? std::to_string(*c.smallest_non_aut_prime) : "-") << "\n";
        os << j.at("conclusion").get<std::string>();
        write_output(os.str(), a.out);
    }
    return 0;
}

// --------------------------------------------------------- constructions

struct BuildArgs {
    std::string construction = "two-level";
    std::int64_t p = 0;
    std::int64_t q = 3;
    std::string c = "1/2";
    int n = 3;
    std::string y0 = "1";
    std::string spec;  // finite-support only; empty = canonical for p
    std::string format = "json";
    std::string out;
};

ConstructionManifest build_from_flags(const BuildArgs& a) {
    if (a.construction == "two-level") {
        const std::int64_t p = a.p ? a.p : 2;
        return build_two_level_family(p, a.q, Rational::parse(a.c), a.n);
    }
    if (a.construction == "finite-support") {
        const std::int64_t p = a.p ? a.p : 5;
        const Rational y0 = Rational::parse(a.y0);
        if (!a.spec.empty()) return build_finite_support_family(parse_spec_arg(a.spec), p, y0);
        return build_finite_support_family(p, y0);
    }
    throw InvalidParams("unknown construction '" + a.construction +
                        "' (expected two-level or finite-support)");
}

int run_build(const BuildArgs& a) {
    const ConstructionManifest m = build_from_flags(a);
    write_output(io::manifest_to_json(m).dump(2), a.out);
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    BuildArgs build;
    std::string manifest_path;
    std::string box_gens;
    int box_bound = 0;
    double tolerance = kDefaultTolerance;
    std::uint64_t budget = 1'000'000;
    bool budget_given = false;
    std::size_t tamper_fn = 0;
    std::string tamper_point;
    std::string tamper_value;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    ConstructionManifest m;
    if (!a.manifest_path.empty()) {
        std::ifstream f(a.manifest_path);
        if (!f) throw ParseError("cannot open manifest '" + a.manifest_path + "'");
        m = io::manifest_from_json(json::parse(f));
    } else {
        m = build_from_flags(a.build);
    }

    if (!a.tamper_point.empty() || !a.tamper_value.empty()) {
        if (a.tamper_point.empty() || a.tamper_value.empty())
            throw InvalidParams("--tamper-point and --tamper-value must be given together");
        if (a.tamper_fn >= m.fs.size()) throw InvalidParams("--tamper-fn out of range");
        m.fs[a.tamper_fn] = with_value_at(m.fs[a.tamper_fn], Rational::parse(a.tamper_point),
                                          parse_value_arg(a.tamper_value));
    }

    RunOptions opts;
    if (!a.box_gens.empty() || a.box_bound > 0) {
        TestBox b = m.recommended_box;
        if (!a.box_gens.empty()) b.generators = parse_rational_list(a.box_gens);
        if (a.box_bound > 0) b.bound = a.box_bound;
        opts.box = b;
    }
    opts.verify.tolerance = a.tolerance;
    opts.verify.budget = a.budget_given ? a.budget : budget_from_env(a.budget);

    const TestBox used_box = opts.box ? *opts.box : m.recommended_box;

    Stopwatch sw;
    const RunOutcome rc = run_manifest(m, opts);
    std::cerr << "elapsed_ms " << sw.ms() << "\n";

    json params = json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    json j{{"construction", m.name},
           {"config", json{{"spec", io::spec_to_json(m.spec)},
                           {"matrix", io::matrix_to_json(m.matrix)},
                           {"box", io::box_to_json(used_box)},
                           {"tolerance", opts.verify.tolerance},
                           {"budget", opts.verify.budget}}},
           {"params", params},
           {"report", io::verify_report_to_json(rc.report)},
           {"expectations_met", rc.expectations_met},
           {"notes", rc.notes}};
    json checks = json::object();
    if (rc.idempotent_class) checks["idempotent"] = *rc.idempotent_class;
    if (rc.gauss_idem_class) checks["gauss_idem_modulus"] = *rc.gauss_idem_class;
    if (!checks.empty()) j["class_checks"] = checks;
    if (rc.obstruction) j["obstruction"] = *rc.obstruction;

    if (a.format == "json") {
        write_output(j.dump(2), a.out);
    } else {
        std::ostringstream os;
        os << "construction " << m.name << "\n";
        os << "points " << rc.report.total_points << "\n";
        os << "violations " << rc.report.violation_count << "\n";
        os << "charfn_violations " << rc.report.charfn_violations.size() << "\n";
        os << "worst_residual "
           << (rc.report.exact && rc.report.violation_count == 0
                   ? std::string("0(exact)")
                   : std::to_string(rc.report.worst_residual))
           << "\n";
        os << "expectations_met " << (rc.expectations_met ? "yes" : "no");
        for (const auto& note : rc.notes) os << "\nnote: " << note;
        write_output(os.str(), a.out);
    }
    return rc.expectations_met ? 0 : 1;
}

// ------------------------------------------------------------------ finite

struct FiniteArgs {
    std::string group = "5";
    int n = 3;
    int trials = 20;
    std::uint64_t seed = 1;
    std::string profile = "sparse";
    std::string matrix;  // JSON rows of integers; empty = default for n
    std::string mode = "exact";
    double tolerance = kDefaultTolerance;
    std::uint64_t budget = 10'000'000;
    std::string format = "json";
    std::string out;
};

std::vector<std::vector<std::int64_t>> default_int_matrix(int n) {
    if (n == 2) return {{1, 1}, {1, -1}};
    if (n == 3) return {{1, 1, 1}, {1, -1, 1}, {1, -1, -1}};
    throw InvalidParams("no default matrix for n=" + std::to_string(n) + "; pass --matrix");
}

int run_finite(const FiniteArgs& a) {
    const FiniteGroupSpec g = io::group_from_string(a.group);
    std::vector<std::vector<std::int64_t>> m;
    if (a.matrix.empty()) {
        m = default_int_matrix(a.n);
    } else {
        for (const auto& row : json::parse(a.matrix)) {
            std::vector<std::int64_t> r;
            for (const auto& e : row) r.push_back(e.get<std::int64_t>());
            m.push_back(std::move(r));
        }
        if (m.size() != static_cast<std::size_t>(a.n))
            throw InvalidParams("--matrix size does not match --n");
    }
    RandomProfile prof;
    if (a.profile == "sparse")
        prof = RandomProfile::Sparse;
    else if (a.profile == "dirichlet")
        prof = RandomProfile::DirichletLike;
    else
        throw InvalidParams("unknown profile '" + a.profile + "'");
    const EquationMode mode = a.mode == "exact"  ? EquationMode::Exact
                              : a.mode == "float" ? EquationMode::Float
                                                  : throw InvalidParams("unknown mode '" + a.mode +
                                                                        "'");

    Stopwatch sw;
    json disagreements = json::array();
    for (int t = 0; t < a.trials; ++t) {
        std::vector<Dist> dists;
        dists.reserve(static_cast<std::size_t>(a.n));
        for (int i = 0; i < a.n; ++i)
            dists.push_back(
                random_dist(g, a.seed + 1000003ULL * static_cast<std::uint64_t>(t) +
                                   static_cast<std::uint64_t>(i),
                            prof));
        const auto eq = sd_equation_check(g, dists, m, mode, a.tolerance);
        const bool ji = joint_independence_check(g, dists, m, a.budget);
        if (eq.holds != ji)
            disagreements.push_back(json{{"trial", t},
                                         {"equation_holds", eq.holds},
                                         {"joint_independent", ji}});
    }
    std::cerr << "elapsed_ms " << sw.ms() << "\n";

    json j{{"group", a.group},
           {"n", a.n},
           {"trials", a.trials},
           {"seed", a.seed},
           {"profile", a.profile},
           {"mode", a.mode},
           {"agreements", a.trials - static_cast<int>(disagreements.size())},
           {"disagreements", disagreements}};
    if (a.format == "json") {
        write_output(j.dump(2), a.out);
    } else {
        std::ostringstream os;
        os << "trials " << a.trials << "\n";
        os << "agreements " << (a.trials - static_cast<int>(disagreements.size()));
        write_output(os.str(), a.out);
    }
    return disagreements.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"independence-equation laboratory for solenoid character groups"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    auto* classify = app.add_subcommand(
        "classify", "decide whether any prime acts invertibly on the group");
    classify->add_option("--spec", ca.spec, "group description, e.g. default=1 or default=inf,2=0");
    classify->add_option("--format", ca.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    classify->add_option("--out", ca.out, "write the report here instead of stdout");

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "emit a construction manifest as JSON");
    auto add_build_flags = [](CLI::App* sub, BuildArgs& b) {
        sub->add_option("--construction", b.construction, "two-level|finite-support");
        sub->add_option("--p", b.p, "acting prime");
        sub->add_option("--q", b.q, "denominator prime (two-level)");
        sub->add_option("--c", b.c, "intermediate level in (0,1) (two-level)");
        sub->add_option("--n", b.n, "number of variables/forms (two-level)");
        sub->add_option("--y0", b.y0, "support point (finite-support)");
        sub->add_option("--spec", b.spec, "ambient group (finite-support; default: tower of p)");
    };
    add_build_flags(build, ba);
    build->add_option("--out", ba.out, "write the manifest here instead of stdout");

    VerifyArgs va;
    auto* verify =
        app.add_subcommand("verify", "check the independence equation over a finite box");
    add_build_flags(verify, va.build);
    verify->add_option("--manifest", va.manifest_path, "load a manifest JSON instead of building");
    verify->add_option("--box-gens", va.box_gens, "comma-separated box generators");
    verify->add_option("--box-bound", va.box_bound, "coefficient bound of the box");
    verify->add_option("--tolerance", va.tolerance, "comparison tolerance for inexact values");
    auto* budget_opt =
        verify->add_option("--budget", va.budget, "max tuples (or env SD_LAB_BUDGET)");
    verify->add_option("--tamper-fn", va.tamper_fn, "index of the function to tamper with");
    verify->add_option("--tamper-point", va.tamper_point, "point whose table value is replaced");
    verify->add_option("--tamper-value", va.tamper_value,
                       "replacement value, rational or (re,im)");
    verify->add_option("--format", va.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", va.out, "write the report here instead of stdout");

    FiniteArgs fa;
    auto* finite = app.add_subcommand(
        "finite", "cross-check the equation test against literal independence on a finite group");
    finite->add_option("--group", fa.group, "cyclic factors, e.g. 4,3");
    finite->add_option("--n", fa.n, "number of variables/forms");
    finite->add_option("--trials", fa.trials, "number of random instances");
    finite->add_option("--seed", fa.seed, "base seed");
    finite->add_option("--profile", fa.profile, "sparse|dirichlet")
        ->check(CLI::IsMember({"sparse", "dirichlet"}));
    finite->add_option("--matrix", fa.matrix, "JSON rows of integers (default depends on n)");
    finite->add_option("--mode", fa.mode, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    finite->add_option("--tolerance", fa.tolerance, "float-mode tolerance");
    finite->add_option("--budget", fa.budget, "max support tuples for the joint law");
    finite->add_option("--format", fa.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    finite->add_option("--out", fa.out, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) return run_classify(ca);
        if (build->parsed()) return run_build(ba);
        if (verify->parsed()) {
            va.budget_given = budget_opt->count() > 0;
            return run_verify(va);
        }
        if (finite->parsed()) return run_finite(fa);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
