#include <doctest.h>

#include "sdlab/solenoid.hpp"

using namespace sdlab;

TEST_CASE("height ordering puts infinity on top") {
    CHECK(Height(3) < Height::infinity());
    CHECK(Height(2) < Height(3));
    CHECK(Height::infinity() == Height::infinity());
    CHECK(Height::infinity().is_infinite());
    CHECK(Height(4).finite_value() == 4);
    CHECK_THROWS_AS(Height::infinity().finite_value(), DomainError);
    CHECK(Height(0).to_string() == "0");
    CHECK(Height::infinity().to_string() == "inf");
}

TEST_CASE("spec canonicalization drops exceptions equal to the default") {
    SupernaturalSpec s(Height(1), {{2, Height(1)}, {3, Height(2)}});
    CHECK(s.exceptions().size() == 1);
    CHECK(s.height(2) == Height(1));
    CHECK(s.height(3) == Height(2));
    CHECK(s.height(9973) == Height(1));
    CHECK_THROWS_AS(SupernaturalSpec(Height(0), {{4, Height(1)}}), InvalidParams);
    CHECK_THROWS_AS(SupernaturalSpec(Height(0), {{-3, Height(1)}}), InvalidParams);

    CHECK(SupernaturalSpec::all_ones().height(101) == Height(1));
    CHECK(SupernaturalSpec::all_infinite().height(2).is_infinite());
    CHECK(SupernaturalSpec::prime_tower(5).height(5).is_infinite());
    CHECK(SupernaturalSpec::prime_tower(5).height(3) == Height(0));
}

TEST_CASE("membership tracks denominator valuations") {
    const auto ones = SupernaturalSpec::all_ones();
    CHECK(contains(ones, Rational(1, 2)));
    CHECK(contains(ones, Rational(5, 6)));
    CHECK(contains(ones, Rational(17)));
    CHECK_FALSE(contains(ones, Rational(1, 4)));
    CHECK_FALSE(contains(ones, Rational(3, 8)));

    const auto t3 = SupernaturalSpec::prime_tower(3);
    CHECK(contains(t3, Rational(1, 9)));
    CHECK(contains(t3, Rational(5, 243)));
    CHECK_FALSE(contains(t3, Rational(1, 2)));
    CHECK_FALSE(contains(t3, Rational(1, 6)));

    CHECK(contains(SupernaturalSpec::all_infinite(), Rational(355, 113)));
}

TEST_CASE("divisibility and halving") {
    const auto ones = SupernaturalSpec::all_ones();
    CHECK(divisible_by(ones, Rational(1), 2));       // 1/2 in H
    CHECK_FALSE(divisible_by(ones, Rational(1, 2), 2));  // 1/4 not
    CHECK(halve(ones, Rational(1)) == Rational(1, 2));
    CHECK(halve(ones, Rational(1, 3)) == Rational(1, 6));
    CHECK_THROWS_AS(halve(ones, Rational(1, 2)), NotDivisible);
    CHECK_THROWS_AS(halve(ones, Rational(1, 4)), NotMember);

    const auto q = SupernaturalSpec::all_infinite();
    CHECK(halve(q, Rational(1, 1024)) == Rational(1, 2048));
}

TEST_CASE("coset classification mod 2Y and 4Y") {
    const auto ones = SupernaturalSpec::all_ones();
    // 1/2 and 5/6 lie in the same nontrivial coset of 2Y: difference -1/3 = 2*(-1/6)
    auto a = coset_mod_2k(ones, Rational(1, 2), 1);
    auto b = coset_mod_2k(ones, Rational(5, 6), 1);
    CHECK_FALSE(a.in_y2);
    CHECK_FALSE(b.in_y2);
    CHECK(divisible_by(ones, Rational(1, 2) - Rational(5, 6), 2));

    CHECK(coset_mod_2k(ones, Rational(1, 3), 1).in_y2);   // 1/3 = 2*(1/6)
    auto c = coset_mod_2k(ones, Rational(1, 3), 2);
    CHECK(c.in_y2);
    REQUIRE(c.in_y4.has_value());
    CHECK_FALSE(*c.in_y4);  // 1/12 is no member
    CHECK_THROWS_AS(coset_mod_2k(ones, Rational(1, 4), 1), NotMember);
}

TEST_CASE("multiplier automorphism recognition") {
    CHECK_THROWS_AS(Multiplier(Rational(0)), InvalidParams);
    const auto tower2 = SupernaturalSpec(Height(0), {{2, Height::infinity()}});
    CHECK(is_automorphism(tower2, Multiplier(Rational(2))));
    CHECK(is_automorphism(tower2, Multiplier(Rational(-1, 4))));
    CHECK_FALSE(is_automorphism(tower2, Multiplier(Rational(6))));  // 3 acts finitely
    CHECK_FALSE(is_automorphism(SupernaturalSpec::all_ones(), Multiplier(Rational(3))));
    CHECK(is_automorphism(SupernaturalSpec::all_ones(), Multiplier(Rational(-1))));
    CHECK(is_automorphism(SupernaturalSpec::all_infinite(), Multiplier(Rational(360, 7))));
}

TEST_CASE("classification dichotomy on the canonical trio") {
    auto c1 = classify_solenoid(SupernaturalSpec::all_ones());
    CHECK(c1.case_number == 1);
    CHECK_FALSE(c1.witness_prime.has_value());
    REQUIRE(c1.smallest_non_aut_prime.has_value());
    CHECK(*c1.smallest_non_aut_prime == 2);

    auto c2 = classify_solenoid(SupernaturalSpec(Height(0), {{2, Height::infinity()}}));
    CHECK(c2.case_number == 2);
    REQUIRE(c2.witness_prime.has_value());
    CHECK(*c2.witness_prime == 2);
    REQUIRE(c2.smallest_non_aut_prime.has_value());
    CHECK(*c2.smallest_non_aut_prime == 3);

    auto c3 = classify_solenoid(SupernaturalSpec::all_infinite());
    CHECK(c3.case_number == 2);
    REQUIRE(c3.witness_prime.has_value());
    CHECK(*c3.witness_prime == 2);
    CHECK_FALSE(c3.smallest_non_aut_prime.has_value());

    // witness skips finite-height primes
    auto c4 = classify_solenoid(SupernaturalSpec(Height(2), {{5, Height::infinity()}}));
    CHECK(c4.case_number == 2);
    CHECK(*c4.witness_prime == 5);
    CHECK(*c4.smallest_non_aut_prime == 2);
}

TEST_CASE("fg generator behaves like a rational gcd") {
    CHECK(fg_generator({Rational(1, 2), Rational(1, 3)}).generator == Rational(1, 6));
    CHECK(fg_generator({Rational(1, 6), Rational(1, 10)}).generator == Rational(1, 30));
    CHECK(fg_generator({Rational(2, 3), Rational(3, 5)}).generator == Rational(1, 15));
    CHECK(fg_generator({Rational(4), Rational(6)}).generator == Rational(2));
    CHECK(fg_generator({Rational(0), Rational(0)}).generator == Rational(0));
    CHECK(fg_generator({Rational(-5, 7)}).generator == Rational(5, 7));
    CHECK(fg_generator({}).generator == Rational(0));

    // certificate: every input is an integer multiple of the generator
    const std::vector<Rational> gens{Rational(9, 14), Rational(3, 10), Rational(-6, 35)};
    const Rational g = fg_generator(gens).generator;
    CHECK(g == Rational(3, 70));
    for (const auto& y : gens) CHECK((y / g).is_integer());
}
