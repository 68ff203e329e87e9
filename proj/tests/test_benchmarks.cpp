#include "mech/benchmarks.hpp"

#include <optional>
#include <random>

#include "doctest.h"
#include "mech/instance.hpp"
#include "mech/numeric.hpp"
#include "testutil.hpp"

using mech::Rational;
using testutil::rat;

namespace {

// Independent oracle: exhaustive max-cardinality affordable subset.
int brute_force_kstar(const mech::Instance& inst) {
  const int n = inst.size();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Rational sum = 0;
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        sum += inst.cost(i);
        ++size;
      }
    }
    if (sum <= 1 && size > best) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("decentralization_factor on the worked examples") {
  CHECK(mech::decentralization_factor(
            testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1")) == 2);
  CHECK(mech::decentralization_factor(testutil::make({{"0.5", "3"}}, "3")) == 1);

  // Enumerating all 16 subsets of {0.2, 0.3, 0.4, 0.5} gives 3 (sum 0.9).
  const auto inst = testutil::from_costs({"0.2", "0.3", "0.4", "0.5"});
  CHECK(mech::decentralization_factor(inst) == 3);
  CHECK(brute_force_kstar(inst) == 3);
}

TEST_CASE("decentralization_factor equals the exhaustive search") {
  std::mt19937_64 engine(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testutil::random_instance(engine, 1 + static_cast<int>(engine() % 10));
    CHECK(mech::decentralization_factor(inst) == brute_force_kstar(inst));
  }
}

TEST_CASE("time_guarantee on the worked examples") {
  const auto paper = testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1");
  CHECK(mech::time_guarantee(paper, Rational(1)) == mech::TimePoint(Rational(1)));
  CHECK(mech::time_guarantee(paper, Rational(1, 2)) == mech::TimePoint(Rational(1, 100)));

  // k*=2; the feasible 2-subsets are {1,3} and {2,3}, fastest member time 2.
  const auto derived =
      testutil::make({{"0.2", "9"}, {"0.3", "8"}, {"0.6", "2"}}, "10");
  CHECK(mech::time_guarantee(derived, Rational(1)) == mech::TimePoint(Rational(2)));

  CHECK_THROWS_AS(mech::time_guarantee(paper, Rational(0)), mech::Error);
  CHECK_THROWS_AS(mech::time_guarantee(paper, Rational(3, 2)), mech::Error);
}

TEST_CASE("brute_force_time_guarantee matches on the examples") {
  const auto paper = testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1");
  for (const char* alpha : {"1", "1/2", "3/4", "1/4"}) {
    CHECK(mech::brute_force_time_guarantee(paper, rat(alpha)) ==
          mech::time_guarantee(paper, rat(alpha)));
  }

  const auto single = testutil::make({{"0.5", "3"}}, "3");
  CHECK(mech::brute_force_time_guarantee(single, Rational(1)) == mech::TimePoint(Rational(3)));
}

TEST_CASE("time_guarantee equals the oracle on random instances") {
  std::mt19937_64 engine(103);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testutil::random_instance(engine, 1 + static_cast<int>(engine() % 10));
    const int kstar = mech::decentralization_factor(inst);
    for (int j = 1; j <= kstar; ++j) {
      Rational alpha(j, kstar);
      alpha.canonicalize();
      CHECK(mech::time_guarantee(inst, alpha) == mech::brute_force_time_guarantee(inst, alpha));
    }
    // A few off-grid alphas.
    for (const char* alpha : {"1/3", "2/5", "9/10"}) {
      CHECK(mech::time_guarantee(inst, rat(alpha)) ==
            mech::brute_force_time_guarantee(inst, rat(alpha)));
    }
  }
}

TEST_CASE("brute force refuses oversized instances") {
  std::vector<mech::AgentType> types;
  for (int i = 0; i < 21; ++i) {
    mech::Rational t(21 - i, 21);
    t.canonicalize();
    types.push_back({mech::Money(Rational(1, 100)), mech::TimePoint(std::move(t))});
  }
  const auto inst = mech::make_instance(std::move(types), mech::TimePoint(Rational(1)));
  CHECK_THROWS_AS(mech::brute_force_time_guarantee(inst, Rational(1)), mech::InstanceTooLarge);
}

TEST_CASE("time_guarantee is monotone in alpha") {
  std::mt19937_64 engine(107);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testutil::random_instance(engine, 2 + static_cast<int>(engine() % 10));
    const int kstar = mech::decentralization_factor(inst);
    std::optional<mech::TimePoint> previous;
    for (int j = 1; j <= kstar; ++j) {
      Rational alpha(j, kstar);
      alpha.canonicalize();
      const mech::TimePoint t = mech::time_guarantee(inst, alpha);
      if (previous) CHECK(*previous <= t);
      previous = t;
    }
  }
}

TEST_CASE("k_best_set on the worked examples") {
  const auto derived = testutil::make({{"0.2", "9"}, {"0.3", "8"}, {"0.6", "2"}}, "10");
  CHECK(mech::k_best_set(derived, 2) == std::vector<int>{0, 2});

  // k=1: the fastest agent with cost <= 1, affordable alone.
  const auto paper = testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1");
  CHECK(mech::k_best_set(paper, 1) == std::vector<int>{2});

  // k=k*: prefix {0,1} costs 0.5, the fastest affordable extra is the 0.5
  // agent (0.5+0.5 = 1).
  const auto four = testutil::make({{"0.2", "9"}, {"0.3", "8"}, {"0.4", "7"}, {"0.5", "6"}}, "10");
  CHECK(mech::k_best_set(four, 3) == std::vector<int>{0, 1, 3});

  CHECK_THROWS_AS(mech::k_best_set(four, 0), mech::KOutOfRange);
  CHECK_THROWS_AS(mech::k_best_set(four, 4), mech::KOutOfRange);
}

TEST_CASE("k-best sets are affordable, sized k, and meet the time guarantee") {
  std::mt19937_64 engine(109);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testutil::random_instance(engine, 2 + static_cast<int>(engine() % 10));
    const int kstar = mech::decentralization_factor(inst);
    for (int k = 1; k <= kstar; ++k) {
      const auto set = mech::k_best_set(inst, k);
      CHECK(static_cast<int>(set.size()) == k);
      Rational total = 0;
      std::optional<mech::TimePoint> fastest;
      for (int i : set) {
        total += inst.cost(i);
        if (!fastest || inst.agent(i).time < *fastest) fastest = inst.agent(i).time;
      }
      CHECK(total <= 1);
      Rational beta(k, kstar);
      beta.canonicalize();
      CHECK(*fastest <= mech::time_guarantee(inst, beta));
    }
  }
}

TEST_CASE("sorted affordable vectors obey the harmonic cap") {
  // For sorted non-negative x with sum <= 1: x_i <= 1/(m-i+1).
  std::mt19937_64 engine(113);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(engine() % 12);
    std::vector<Rational> x;
    Rational total = 0;
    for (int i = 0; i < m; ++i) {
      x.push_back(mech::rational_from_double(testutil::unit_draw(engine)));
      total += x.back();
    }
    for (auto& v : x) v /= total;  // normalize so the sum is exactly 1
    std::sort(x.begin(), x.end());
    for (int i = 1; i <= m; ++i) {
      CHECK(x[i - 1] <= Rational(1, m - i + 1));
    }
  }
}

TEST_CASE("harmonic tail sums sit inside the certified log bounds") {
  // ln(b/(a-1)) - 1/(2a-2) <= sum_{j=a}^{b} 1/j <= ln(b/(a-1)), checked on
  // the safe side of certified enclosures.
  std::mt19937_64 engine(127);
  for (int trial = 0; trial < 40; ++trial) {
    const long a = 2 + static_cast<long>(engine() % 400);
    const long b = a + 1 + static_cast<long>(engine() % 1500);
    const Rational sum = mech::reciprocal_sum(a, b);
    Rational ratio(b, a - 1);
    ratio.canonicalize();
    const mech::RationalInterval ln = mech::log_enclosure(ratio);
    CHECK(sum <= ln.lo);
    CHECK(sum >= ln.hi - Rational(1, 2 * a - 2));
  }
}

TEST_CASE("outcome_metrics on the worked examples") {
  const auto inst = testutil::make({{"1", "1/100"}, {"1/2", "1"}, {"1/2", "1"}}, "1");
  // Canonical order: the two (1/2, 1) agents, then (1, 1/100).

  SUBCASE("both cheap agents participate") {
    const auto profile = mech::ActionProfile::truthful(inst, {{0, 1}});
    const auto outcome = mech::Outcome::from_profile(
        inst, profile, {mech::Money(Rational(1, 2)), mech::Money(Rational(1, 2)), mech::Money{}});
    const auto metrics = mech::outcome_metrics(inst, outcome);
    CHECK(metrics.participant_count == 2);
    CHECK(metrics.decentralization_ratio == Rational(1));
    CHECK(*metrics.fastest_time == mech::TimePoint(Rational(1)));
    CHECK(*metrics.efficiency_class == Rational(1));
  }

  SUBCASE("empty participation") {
    const auto profile = mech::ActionProfile::truthful(inst, {{}});
    const auto outcome = mech::Outcome::from_profile(
        inst, profile, {mech::Money{}, mech::Money{}, mech::Money{}});
    const auto metrics = mech::outcome_metrics(inst, outcome);
    CHECK(metrics.participant_count == 0);
    CHECK(metrics.decentralization_ratio == Rational(0));
    CHECK(!metrics.fastest_time);
    CHECK(!metrics.efficiency_class);
  }

  SUBCASE("the fast expensive agent alone") {
    const auto profile = mech::ActionProfile::truthful(inst, {{2}});
    const auto outcome = mech::Outcome::from_profile(
        inst, profile, {mech::Money{}, mech::Money{}, mech::Money{}});
    const auto metrics = mech::outcome_metrics(inst, outcome);
    CHECK(metrics.participant_count == 1);
    CHECK(metrics.decentralization_ratio == Rational(1, 2));
    CHECK(*metrics.fastest_time == mech::TimePoint(Rational(1, 100)));
    CHECK(*metrics.efficiency_class == Rational(1, 2));
  }
}
