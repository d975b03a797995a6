#include <doctest.h>

#include <map>

#include "sdlab/json_io.hpp"

using namespace sdlab;
using namespace sdlab::jsonio;

TEST_CASE("rational and height wire format") {
    CHECK(rational_to_json(Rational(-3, 4)) == json("-3/4"));
    CHECK(rational_to_json(Rational(5)) == json("5"));
    CHECK(rational_from_json(json("6/-4")) == Rational(-3, 2));
    CHECK(rational_from_json(json(7)) == Rational(7));
    CHECK_THROWS_AS(rational_from_json(json("1/0")), DomainError);
    CHECK_THROWS_AS(rational_from_json(json::object()), ParseError);

    CHECK(height_to_json(Height(3)) == json(3));
    CHECK(height_to_json(Height::infinity()) == json("inf"));
    CHECK(height_from_json(json("inf")).is_infinite());
    CHECK(height_from_json(json(0)) == Height(0));
    CHECK_THROWS_AS(height_from_json(json(-1)), ParseError);
    CHECK_THROWS_AS(height_from_json(json("बहुत")), ParseError);
}

TEST_CASE("supernatural spec round-trip") {
    const SupernaturalSpec s(Height(1), {{2, Height::infinity()}, {7, Height(0)}});
    const auto j = spec_to_json(s);
    CHECK(j["default"] == json(1));
    CHECK(j["exceptions"]["2"] == json("inf"));
    const auto back = spec_from_json(j);
    CHECK(back.height(2).is_infinite());
    CHECK(back.height(7) == Height(0));
    CHECK(back.height(3) == Height(1));

    // default-only form, exceptions optional
    CHECK(spec_from_json(json{{"default", "inf"}}).height(13).is_infinite());
    CHECK_THROWS_AS(spec_from_json(json{{"default", 1}, {"exceptions", {{"four", 1}}}}),
                    ParseError);
}

TEST_CASE("value wire format keeps exactness") {
    const auto v = value_from_json(json{{"modulus", "1/2"}, {"angle", "1/3"}});
    CHECK(v.exact());
    const auto j = value_to_json(v);
    CHECK(j["modulus"] == json("1/2"));
    CHECK(j["angle"] == json("1/3"));

    // bare modulus means a nonnegative real
    CHECK(value_from_json(json{{"modulus", "2/3"}}).as_exact_real() == Rational(2, 3));

    const auto a = value_from_json(json{{"re", 0.5}, {"im", -0.25}});
    CHECK_FALSE(a.exact());
    const auto ja = value_to_json(a);
    CHECK(ja["re"] == json(0.5));
    CHECK(ja["im"] == json(-0.25));

    CHECK_THROWS_AS(value_from_json(json{{"abs", 1}}), ParseError);
}

TEST_CASE("characteristic function round-trips, all kinds") {
    const EvalContext ctx{SupernaturalSpec::all_infinite(), Rational(1, 4)};
    const auto box = TestBox{{Rational(1, 4), Rational(1, 3)}, 2}.points();
    const auto same_on_box = [&](const CharFn& f, const CharFn& g) {
        for (const auto& y : box) {
            const auto a = f.eval(y, ctx), b = g.eval(y, ctx);
            CHECK(std::abs(a.to_complex() - b.to_complex()) < 1e-12);
        }
    };

    std::vector<CharFn> fns;
    fns.push_back(CharFn::idempotent(SubgroupDesc::scaled_height(1, SupernaturalSpec::all_infinite())));
    fns.push_back(CharFn::idempotent(SubgroupDesc::scaled_height(1, SupernaturalSpec::prime_tower(3))));
    fns.push_back(CharFn::idempotent(SubgroupDesc::cyclic(Rational(1, 4)), Rational(1, 3)));
    fns.push_back(CharFn::two_level(SubgroupDesc::scaled_height(1, SupernaturalSpec::prime_tower(3)),
                                    2, Rational(1, 2)));
    fns.push_back(CharFn::gaussian(0.7));
    fns.push_back(CharFn::finite_support({{Rational(1, 4), Value::from_rational(Rational(1, 2))},
                                          {Rational(-1, 4), Value::from_rational(Rational(1, 2))}}));
    fns.push_back(product({fns[1], fns[4]}));

    for (const auto& f : fns) {
        const auto back = charfn_from_json(charfn_to_json(f));
        CHECK(back == f);
        same_on_box(f, back);
    }

    CHECK_THROWS_AS(charfn_from_json(json{{"kind", "mystery"}}), ParseError);
}

TEST_CASE("matrix, box and manifest round-trips") {
    const auto m = FormsMatrix::canonical_three_forms();
    CHECK(matrix_from_json(matrix_to_json(m)) == m);
    CHECK(matrix_to_json(m)[1][1] == json("-1"));

    const TestBox b{{Rational(1, 3), Rational(1, 2)}, 2};
    const auto b2 = box_from_json(box_to_json(b));
    CHECK(b2.generators == b.generators);
    CHECK(b2.bound == b.bound);
    CHECK_THROWS_AS(box_from_json(json{{"generators", json::array()}, {"bound", 0}}), ParseError);

    auto man = build_two_level_family(2, 3, Rational(1, 2), 3);
    const auto back = manifest_from_json(manifest_to_json(man));
    CHECK(back.name == man.name);
    CHECK(back.spec.height(11).is_infinite());
    CHECK(back.fs == man.fs);
    CHECK(back.matrix == man.matrix);
    CHECK(back.recommended_box.generators == man.recommended_box.generators);
    CHECK(back.recommended_box.bound == man.recommended_box.bound);
    CHECK(back.expect_equation_holds == man.expect_equation_holds);
    CHECK(back.expect_not_idempotent == man.expect_not_idempotent);
    CHECK(back.expect_not_gauss_idem == man.expect_not_gauss_idem);
    CHECK(back.obstruction == man.obstruction);
    // params travel as a JSON object: order normalizes to key order
    const std::map<std::string, std::string> pa(man.params.begin(), man.params.end());
    const std::map<std::string, std::string> pb(back.params.begin(), back.params.end());
    CHECK(pa == pb);

    auto fsman = build_finite_support_family(5, Rational(1));
    const auto fback = manifest_from_json(manifest_to_json(fsman));
    CHECK(fback.obstruction == fsman.obstruction);
    CHECK(fback.fs == fsman.fs);
}

TEST_CASE("classification and report serialization") {
    const auto s = SupernaturalSpec::all_ones();
    const auto j = classification_to_json(s, classify_solenoid(s));
    CHECK(j["case"] == json(1));
    CHECK(j["witness_prime"].is_null());
    CHECK(j["smallest_non_aut_prime"] == json(2));
    CHECK(j["conclusion"].is_string());

    const auto s2 = SupernaturalSpec::all_infinite();
    const auto j2 = classification_to_json(s2, classify_solenoid(s2));
    CHECK(j2["case"] == json(2));
    CHECK(j2["witness_prime"] == json(2));
    CHECK(j2["smallest_non_aut_prime"].is_null());

    VerifyReport r;
    r.total_points = 10;
    r.exact = true;
    const auto jr = verify_report_to_json(r);
    CHECK(jr["points"] == json(10));
    CHECK(jr["violation_count"] == json(0));
    CHECK(jr["worst_residual"] == json("0(exact)"));

    VerifyReport bad = r;
    bad.exact = false;
    bad.worst_residual = 0.125;
    CHECK(verify_report_to_json(bad)["worst_residual"] == json(0.125));
}

TEST_CASE("finite group and distribution wire format") {
    const auto g = group_from_string("2,3");
    CHECK(g.order() == 6);
    CHECK_THROWS_AS(group_from_string(""), ParseError);
    CHECK_THROWS_AS(group_from_string("2,x"), ParseError);
    CHECK_THROWS_AS(group_from_string("2,,3"), ParseError);
    CHECK_THROWS_AS(group_from_string("0"), InvalidParams);

    const auto d = random_dist(g, 7, RandomProfile::DirichletLike);
    const auto j = dist_to_json(g, d);
    const auto back = dist_from_json(g, j);
    CHECK(back.p == d.p);

    // keys are validated against the group's rank
    json badj = {{"probs", {{"(1)", "1"}}}};
    CHECK_THROWS_AS(dist_from_json(g, badj), ParseError);
    // coordinates reduce mod the group, so (5,0) is (1,0)
    const auto wrapped = dist_from_json(g, json{{"probs", {{"(5,0)", "1"}}}});
    CHECK(wrapped.p[g.index({1, 0})] == Rational(1));
    json short_probs = {{"probs", {{"(0,0)", "1/2"}}}};
    CHECK_THROWS_AS(dist_from_json(g, short_probs), InvalidParams);
}
