#include "mech/instance.hpp"

#include <random>

#include "doctest.h"
#include "testutil.hpp"

using mech::Rational;
using testutil::rat;

TEST_CASE("make_instance sorts canonically and records the permutation") {
  // (1, eps), (1/2, 1), (1/2, 1) sorts to the two cheap agents first.
  const auto inst = testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1");
  REQUIRE(inst.size() == 3);
  CHECK(inst.cost(0) == Rational(1, 2));
  CHECK(inst.cost(1) == Rational(1, 2));
  CHECK(inst.cost(2) == Rational(1));
  CHECK(inst.time(2) == Rational(1, 100));
  CHECK(inst.to_original() == std::vector<int>{1, 2, 0});
}

TEST_CASE("make_instance single agent keeps the identity permutation") {
  const auto inst = testutil::make({{"0.5", "3"}}, "3");
  CHECK(inst.size() == 1);
  CHECK(inst.to_original() == std::vector<int>{0});
}

TEST_CASE("monotonicity: costlier-and-faster pairs are fine") {
  const auto inst = testutil::make({{"0.2", "5"}, {"0.3", "2"}}, "5");
  CHECK(inst.cost(0) == Rational(1, 5));
  CHECK(inst.time(0) == Rational(5));
}

TEST_CASE("monotonicity: costlier-and-slower pairs are rejected") {
  CHECK_THROWS_AS(testutil::make({{"0.2", "2"}, {"0.3", "5"}}, "5"), mech::MonotonicityViolation);
}

TEST_CASE("equal costs may carry any times and sort slowest-first") {
  const auto inst = testutil::make({{"1/2", "3"}, {"1/2", "5"}}, "5");
  CHECK(inst.time(0) == Rational(5));
  CHECK(inst.time(1) == Rational(3));
  CHECK(inst.to_original() == std::vector<int>{1, 0});

  // Equal times across different costs are allowed (weak pattern).
  CHECK_NOTHROW(testutil::make({{"1/3", "1"}, {"2/3", "1"}}, "1"));
}

TEST_CASE("feasibility and basic bounds are validated") {
  CHECK_THROWS_AS(testutil::make({{"1", "1"}}, "1"), mech::Infeasible);
  CHECK_THROWS_AS(testutil::make({{"3/2", "1"}, {"2", "1/2"}}, "1"), mech::Infeasible);
  CHECK_THROWS_AS(testutil::make({{"0", "1"}}, "1"), mech::Error);
  CHECK_THROWS_AS(testutil::make({{"1/2", "2"}}, "1"), mech::Error);  // time past deadline
  CHECK_THROWS_AS(mech::make_instance({}, mech::TimePoint(Rational(1))), mech::Error);
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937_64 engine(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testutil::random_instance(engine, 1 + static_cast<int>(engine() % 12));
    const auto again = mech::make_instance(inst.agents(), inst.deadline());
    CHECK(again.agents() == inst.agents());
    for (int i = 0; i < again.size(); ++i) CHECK(again.to_original()[i] == i);
  }
}

TEST_CASE("canonical times are non-increasing") {
  std::mt19937_64 engine(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testutil::random_instance(engine, 2 + static_cast<int>(engine() % 10));
    for (int i = 0; i + 1 < inst.size(); ++i) {
      CHECK(inst.time(i + 1) <= inst.time(i));
    }
  }
}

TEST_CASE("serialize-parse round trip is exact") {
  std::mt19937_64 engine(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testutil::random_instance(engine, 1 + static_cast<int>(engine() % 10));
    const auto parsed = mech::parse_instance(mech::serialize_instance(inst));
    CHECK(parsed == inst);
  }

  // Fraction literals survive exactly.
  const auto inst = testutil::make({{"1/3", "2/3"}, {"22/7", "1/7"}}, "1");
  CHECK(mech::parse_instance(mech::serialize_instance(inst)) == inst);
}

TEST_CASE("instance text format") {
  const auto inst = mech::parse_instance("deadline 1\n# comment\n1/2 1\n1/2 1\n1 0.01\n");
  CHECK(inst.size() == 3);
  CHECK(inst.cost(2) == Rational(1));
  CHECK_THROWS_AS(mech::parse_instance("1/2 1\n"), mech::ParseError);
  CHECK_THROWS_AS(mech::parse_instance("deadline 1\n"), mech::ParseError);
  CHECK_THROWS_AS(mech::parse_instance("deadline 1\n1/2\n"), mech::ParseError);
  CHECK_THROWS_AS(mech::parse_instance("deadline 1\n1/2 1 3\n"), mech::ParseError);
}

TEST_CASE("witness: half-half") {
  const auto inst = mech::witness_half_half();
  REQUIRE(inst.size() == 2);
  CHECK(inst.cost(0) == Rational(1, 2));
  CHECK(inst.cost(1) == Rational(1, 2));
  CHECK(inst.time(0) == inst.deadline().value());
  CHECK(inst.time(1) == inst.deadline().value());
}

TEST_CASE("witness: two-thirds-one-third") {
  const auto inst = mech::witness_two_thirds_one_third();
  REQUIRE(inst.size() == 2);
  CHECK(inst.cost(0) == Rational(1, 3));
  CHECK(inst.cost(1) == Rational(2, 3));
}

TEST_CASE("witness: fast-expensive instantiates the proof parameters") {
  // kstar=5, eps=0.01: four agents (0.01, T) and one agent (0.96, 0.1).
  const auto inst = mech::witness_fast_expensive(5, rat("1/100"), rat("1/10"));
  REQUIRE(inst.size() == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(inst.cost(i) == Rational(1, 100));
    CHECK(inst.time(i) == Rational(1));
  }
  CHECK(inst.cost(4) == Rational(24, 25));  // 0.96
  CHECK(inst.time(4) == Rational(1, 10));

  CHECK_THROWS_AS(mech::witness_fast_expensive(5, rat("1/4"), rat("1/10")), mech::Error);
  CHECK_THROWS_AS(mech::witness_fast_expensive(1, rat("1/100"), rat("1/10")), mech::Error);
}

TEST_CASE("witness: overlap-pair") {
  const auto inst = mech::witness_overlap_pair(rat("0.3"), rat("0.4"));
  REQUIRE(inst.size() == 2);
  CHECK(inst.cost(0) + inst.cost(1) < 1);
  CHECK_THROWS_AS(mech::witness_overlap_pair(rat("0.6"), rat("0.5")), mech::Error);
}

TEST_CASE("adversarial_instance resolves names and arguments") {
  CHECK(mech::adversarial_instance("half-half") == mech::witness_half_half());
  CHECK(mech::adversarial_instance("two-thirds-one-third") == mech::witness_two_thirds_one_third());
  CHECK(mech::adversarial_instance("fast-expensive(5,1/100,1/10)") ==
        mech::witness_fast_expensive(5, rat("1/100"), rat("1/10")));
  CHECK(mech::adversarial_instance("overlap-pair(0.3,0.4)") ==
        mech::witness_overlap_pair(rat("0.3"), rat("0.4")));
  CHECK_THROWS_AS(mech::adversarial_instance("minotaur"), mech::UnknownWitness);
  CHECK_THROWS_AS(mech::adversarial_instance("fast-expensive(5)"), mech::UnknownWitness);
}

TEST_CASE("action profiles validate feasibility") {
  const auto inst = testutil::make({{"0.2", "5"}, {"0.3", "2"}}, "5");
  using Action = mech::ActionProfile::Action;

  CHECK_NOTHROW(mech::ActionProfile(inst, {Action{mech::TimePoint(Rational(5))}, Action{}}));
  // Submitting before one's completion time is infeasible.
  CHECK_THROWS_AS(mech::ActionProfile(inst, {Action{mech::TimePoint(Rational(4))}, Action{}}),
                  mech::Error);
  // Submitting past the deadline is infeasible.
  CHECK_THROWS_AS(mech::ActionProfile(inst, {Action{}, Action{mech::TimePoint(Rational(6))}}),
                  mech::Error);

  const auto truthful = mech::ActionProfile::all_truthful(inst);
  CHECK(truthful.submission_count() == 2);
  CHECK(*truthful.action(0) == mech::TimePoint(Rational(5)));
}

TEST_CASE("outcomes enforce the reward invariants") {
  const auto inst = testutil::make({{"0.2", "5"}, {"0.3", "2"}}, "5");
  const auto profile = mech::ActionProfile::truthful(inst, {{0}});

  const auto outcome =
      mech::Outcome::from_profile(inst, profile, {mech::Money(Rational(1)), mech::Money{}});
  CHECK(outcome.participants == std::vector<int>{0});
  CHECK(outcome.fastest_time == mech::TimePoint(Rational(5)));
  CHECK(outcome.total_reward() == Rational(1));

  // Rewarding a non-participant is invalid.
  CHECK_THROWS_AS(
      mech::Outcome::from_profile(inst, profile, {mech::Money{}, mech::Money(Rational(1, 2))}),
      mech::Error);
  // Budget overrun is invalid.
  CHECK_THROWS_AS(mech::Outcome::from_profile(
                      inst, mech::ActionProfile::all_truthful(inst),
                      {mech::Money(Rational(3, 4)), mech::Money(Rational(1, 2))}),
                  mech::Error);
}
