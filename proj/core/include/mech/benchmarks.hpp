#pragma once

// Benchmark quantities the mechanisms are measured against: the
// decentralization factor k* (largest affordable set), the time guarantee
// t*_alpha (fastest feasible set of a target size), k-best sets, and metrics
// of a realized outcome.

#include <optional>
#include <vector>

#include "mech/types.hpp"

namespace mech {

// k* = max { |S| : sum of costs over S <= 1 }. With costs sorted ascending
// this is the longest affordable prefix. Always >= 1 for a valid instance.
int decentralization_factor(const Instance& instance);

// t*_alpha = min over feasible sets S with |S| >= ceil(alpha * k*) of the
// fastest completion time in S. Requires alpha in (0, 1].
TimePoint time_guarantee(const Instance& instance, const Rational& alpha);

// Literal evaluation of t*_alpha by exhaustive subset enumeration; the
// oracle the closed form is checked against. Throws InstanceTooLarge beyond
// max_n agents.
TimePoint brute_force_time_guarantee(const Instance& instance, const Rational& alpha,
                                     int max_n = 20);

// The k-1 cheapest agents plus the fastest agent affordable alongside them.
// Returns sorted canonical indices, |result| == k. Requires 1 <= k <= k*.
std::vector<int> k_best_set(const Instance& instance, int k);

struct OutcomeMetrics {
  int participant_count = 0;
  Rational decentralization_ratio;          // participants / k*
  std::optional<TimePoint> fastest_time;
  std::optional<Rational> efficiency_class;  // smallest beta in {1/k*,...,1}
                                             // with fastest_time <= t*_beta
};

OutcomeMetrics outcome_metrics(const Instance& instance, const Outcome& outcome);

}  // namespace mech
