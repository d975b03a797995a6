#include "sdlab/json_io.hpp"

#include <sstream>

#include "sdlab/errors.hpp"

namespace sdlab::jsonio {

json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("rational: expected integer or \"n/d\" string");
}

json height_to_json(Height h) {
  if (h.is_infinite()) return "inf";
  return static_cast<std::int64_t>(h.finite_value());
}

Height height_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return Height::infinity();
    throw ParseError("height: expected non-negative integer or \"inf\", got \"" + s + "\"");
  }
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw ParseError("height: negative value");
    return Height(static_cast<std::uint32_t>(v));
  }
  throw ParseError("height: expected non-negative integer or \"inf\"");
}

json spec_to_json(const SupernaturalSpec& s) {
  json ex = json::object();
  for (const auto& [p, h] : s.exceptions()) ex[std::to_string(p)] = height_to_json(h);
  return json{{"default", height_to_json(s.default_exponent())}, {"exceptions", ex}};
}

SupernaturalSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("default"))
    throw ParseError("spec: expected {\"default\":..., \"exceptions\":{...}}");
  const Height def = height_from_json(j.at("default"));
  std::map<std::int64_t, Height> ex;
  if (j.contains("exceptions")) {
    for (const auto& [key, val] : j.at("exceptions").items()) {
      std::int64_t p = 0;
      try {
        std::size_t pos = 0;
        p = std::stoll(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("spec: bad prime key \"" + key + "\"");
      }
      ex.emplace(p, height_from_json(val));
    }
  }
  return SupernaturalSpec(def, std::move(ex));
}

json value_to_json(const Value& v) {
  if (v.exact()) {
    return json{{"modulus", rational_to_json(v.exact_modulus())},
                {"angle", rational_to_json(v.exact_angle())}};
  }
  const auto z = v.to_complex();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Value value_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("value: expected object");
  if (j.contains("re") || j.contains("im")) {
    const double re = j.value("re", 0.0);
    const double im = j.value("im", 0.0);
    return Value::approx({re, im});
  }
  if (j.contains("angle")) {
    const Rational mod = j.contains("modulus") ? rational_from_json(j.at("modulus")) : Rational(1);
    return Value::exact_polar(mod, rational_from_json(j.at("angle")));
  }
  if (j.contains("modulus")) return Value::from_rational(rational_from_json(j.at("modulus")));
  throw ParseError("value: expected {re,im} or {modulus,angle}");
}

json subgroup_to_json(const SubgroupDesc& d) {
  switch (d.kind) {
    case SubgroupDesc::Kind::ScaledHeight:
      return json{{"kind", "scaled_height"},
                  {"scale", rational_to_json(d.scale)},
                  {"spec", spec_to_json(d.spec)}};
    case SubgroupDesc::Kind::Cyclic:
      return json{{"kind", "cyclic"}, {"generator", rational_to_json(d.generator)}};
  }
  throw Error("subgroup_to_json: unreachable");
}

SubgroupDesc subgroup_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "scaled_height")
    return SubgroupDesc::scaled_height(rational_from_json(j.at("scale")),
                                       spec_from_json(j.at("spec")));
  if (kind == "cyclic") return SubgroupDesc::cyclic(rational_from_json(j.at("generator")));
  throw ParseError("subgroup: unknown kind \"" + kind + "\"");
}

json charfn_to_json(const CharFn& f) {
  switch (f.kind()) {
    case CharFn::Kind::Idempotent:
      return json{{"kind", "idempotent"},
                  {"support", subgroup_to_json(f.support())},
                  {"phase", rational_to_json(f.phase_angle())}};
    case CharFn::Kind::TwoLevel:
      return json{{"kind", "two_level"},
                  {"outer", subgroup_to_json(f.outer())},
                  {"inner_prime", f.inner_prime()},
                  {"level", rational_to_json(f.level())}};
    case CharFn::Kind::FiniteSupport: {
      json entries = json::array();
      for (const auto& [y, v] : f.entries())
        entries.push_back(json{{"at", rational_to_json(y)}, {"value", value_to_json(v)}});
      return json{{"kind", "finite_support"}, {"entries", entries}};
    }
    case CharFn::Kind::Gaussian:
      return json{{"kind", "gaussian"}, {"sigma", f.sigma()},
                  {"phase", rational_to_json(f.phase_angle())}};
    case CharFn::Kind::ModulusSquare:
      return json{{"kind", "modulus_square"}, {"base", charfn_to_json(f.children().at(0))}};
    case CharFn::Kind::Product: {
      json factors = json::array();
      for (const auto& g : f.children()) factors.push_back(charfn_to_json(g));
      return json{{"kind", "product"}, {"factors", factors}};
    }
  }
  throw Error("charfn_to_json: unreachable");
}

CharFn charfn_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "idempotent") {
    Rational phase(0);
    if (j.contains("phase")) phase = rational_from_json(j.at("phase"));
    return CharFn::idempotent(subgroup_from_json(j.at("support")), phase);
  }
  if (kind == "two_level")
    return CharFn::two_level(subgroup_from_json(j.at("outer")),
                             j.at("inner_prime").get<std::int64_t>(),
                             rational_from_json(j.at("level")));
  if (kind == "finite_support") {
    std::map<Rational, Value> entries;
    for (const auto& e : j.at("entries"))
      entries.emplace(rational_from_json(e.at("at")), value_from_json(e.at("value")));
    return CharFn::finite_support(std::move(entries));
  }
  if (kind == "gaussian") {
    Rational phase(0);
    if (j.contains("phase")) phase = rational_from_json(j.at("phase"));
    return CharFn::gaussian(j.at("sigma").get<double>(), phase);
  }
  if (kind == "modulus_square") return modulus_square(charfn_from_json(j.at("base")));
  if (kind == "product") {
    std::vector<CharFn> fs;
    for (const auto& e : j.at("factors")) fs.push_back(charfn_from_json(e));
    return product(fs);
  }
  throw ParseError("charfn: unknown kind \"" + kind + "\"");
}

json matrix_to_json(const FormsMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.rows) {
    json r = json::array();
    for (const auto& mult : row) r.push_back(rational_to_json(mult.ratio));
    rows.push_back(r);
  }
  return rows;
}

FormsMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix: expected array of rows");
  FormsMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix: expected array of rows");
    std::vector<Multiplier> r;
    for (const auto& e : row) r.emplace_back(rational_from_json(e));
    m.rows.push_back(std::move(r));
  }
  return m;
}

json box_to_json(const TestBox& b) {
  json gens = json::array();
  for (const auto& g : b.generators) gens.push_back(rational_to_json(g));
  return json{{"generators", gens}, {"bound", b.bound}};
}

TestBox box_from_json(const json& j) {
  TestBox b;
  for (const auto& e : j.at("generators")) b.generators.push_back(rational_from_json(e));
  b.bound = j.at("bound").get<int>();
  if (b.generators.empty()) throw ParseError("box: needs at least one generator");
  if (b.bound < 1) throw ParseError("box: bound must be a positive integer");
  return b;
}

json manifest_to_json(const ConstructionManifest& m) {
  json fs = json::array();
  for (const auto& f : m.fs) fs.push_back(charfn_to_json(f));
  json params = json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  json out{{"name", m.name},
           {"spec", spec_to_json(m.spec)},
           {"functions", fs},
           {"matrix", matrix_to_json(m.matrix)},
           {"recommended_box", box_to_json(m.recommended_box)},
           {"expect_equation_holds", m.expect_equation_holds},
           {"expect_not_idempotent", m.expect_not_idempotent},
           {"expect_not_gauss_idem", m.expect_not_gauss_idem},
           {"params", params}};
  if (m.cyclic_generator) out["cyclic_generator"] = rational_to_json(*m.cyclic_generator);
  if (m.obstruction) out["obstruction"] = *m.obstruction;
  return out;
}

ConstructionManifest manifest_from_json(const json& j) {
  ConstructionManifest m;
  m.name = j.at("name").get<std::string>();
  m.spec = spec_from_json(j.at("spec"));
  if (j.contains("cyclic_generator"))
    m.cyclic_generator = rational_from_json(j.at("cyclic_generator"));
  for (const auto& e : j.at("functions")) m.fs.push_back(charfn_from_json(e));
  m.matrix = matrix_from_json(j.at("matrix"));
  m.recommended_box = box_from_json(j.at("recommended_box"));
  m.expect_equation_holds = j.value("expect_equation_holds", true);
  m.expect_not_idempotent = j.value("expect_not_idempotent", false);
  m.expect_not_gauss_idem = j.value("expect_not_gauss_idem", false);
  if (j.contains("obstruction")) m.obstruction = j.at("obstruction").get<bool>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) m.params.emplace_back(k, v.get<std::string>());
  return m;
}

json classification_to_json(const SupernaturalSpec& s, const SolenoidClass& c) {
  json out{{"spec", spec_to_json(s)}, {"case", c.case_number}};
  out["witness_prime"] = c.witness_prime ? json(*c.witness_prime) : json(nullptr);
  out["smallest_non_aut_prime"] =
      c.smallest_non_aut_prime ? json(*c.smallest_non_aut_prime) : json(nullptr);
  out["conclusion"] =
      c.case_number == 1
          ? "no prime acts invertibly: independent linear forms with these multipliers force "
            "every joint solution to be a product of shifted idempotents"
          : "some prime acts invertibly: non-idempotent solutions of the independence equation "
            "exist";
  return out;
}

json verify_report_to_json(const VerifyReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json pt = json::array();
    for (const auto& u : v.point) pt.push_back(rational_to_json(u));
    violations.push_back(json{{"point", pt},
                              {"lhs", value_to_json(v.lhs)},
                              {"rhs", value_to_json(v.rhs)},
                              {"residual", v.magnitude}});
  }
  json charfn = json::array();
  for (const auto& v : r.charfn_violations)
    charfn.push_back(json{{"fn_index", v.fn_index},
                          {"point", rational_to_json(v.point)},
                          {"kind", v.kind},
                          {"detail", v.detail}});
  json out{{"points", r.total_points},
           {"violation_count", r.violation_count},
           {"violations", violations},
           {"charfn_violations", charfn},
           {"exact", r.exact}};
  if (r.exact && r.violation_count == 0)
    out["worst_residual"] = "0(exact)";
  else
    out["worst_residual"] = r.worst_residual;
  return out;
}

FiniteGroupSpec group_from_string(const std::string& s) {
  std::vector<std::int64_t> moduli;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const auto m = std::stoll(tok, &pos);
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
      moduli.push_back(m);
    } catch (const std::exception&) {
      throw ParseError("group: bad modulus \"" + tok + "\" in \"" + s + "\"");
    }
  }
  if (moduli.empty()) throw ParseError("group: empty moduli list");
  return FiniteGroupSpec(std::move(moduli));
}

namespace {

std::string element_key(const FiniteGroupSpec& g, std::int64_t index) {
  const auto coords = g.element(index);
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coords[i]);
  }
  out += ")";
  return out;
}

std::vector<std::int64_t> parse_element_key(const FiniteGroupSpec& g, const std::string& key) {
  std::string body = key;
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  std::vector<std::int64_t> coords;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      coords.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ParseError("dist: bad coordinate in key \"" + key + "\"");
    }
  }
  if (coords.size() != static_cast<std::size_t>(g.rank()))
    throw ParseError("dist: key \"" + key + "\" has wrong arity for the group");
  return coords;
}

}  // namespace

json dist_to_json(const FiniteGroupSpec& g, const Dist& d) {
  json probs = json::object();
  for (std::int64_t i = 0; i < g.order(); ++i)
    if (!d.p[static_cast<std::size_t>(i)].is_zero())
      probs[element_key(g, i)] = rational_to_json(d.p[static_cast<std::size_t>(i)]);
  return json{{"probs", probs}};
}

Dist dist_from_json(const FiniteGroupSpec& g, const json& j) {
  Dist d;
  d.p.assign(static_cast<std::size_t>(g.order()), Rational(0));
  for (const auto& [key, val] : j.at("probs").items()) {
    const auto idx = g.index(parse_element_key(g, key));
    d.p[static_cast<std::size_t>(idx)] = rational_from_json(val);
  }
  d.validate(g);
  return d;
}

}  // namespace sdlab::jsonio
