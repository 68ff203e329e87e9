#include "mech/benchmarks.hpp"

#include <algorithm>

namespace mech {

int decentralization_factor(const Instance& instance) {
  // Maximum-cardinality subset under a sum budget: take cheapest first, so
  // the optimum is a prefix of the canonical order.
  Rational sum = 0;
  int k = 0;
  for (int i = 0; i < instance.size(); ++i) {
    sum += instance.cost(i);
    if (sum > 1) break;
    ++k;
  }
  return k;
}

namespace {

// ceil(alpha * kstar); also validates alpha's range.
int required_set_size(const Rational& alpha, int kstar) {
  if (alpha <= 0 || alpha > 1) throw Error("alpha must lie in (0, 1]");
  return static_cast<int>(ceil_to_long(alpha * kstar));
}

}  // namespace

TimePoint time_guarantee(const Instance& instance, const Rational& alpha) {
  const int kstar = decentralization_factor(instance);
  const int mu = required_set_size(alpha, kstar);

  // Prefix sums of the canonical (ascending) costs.
  std::vector<Rational> prefix(instance.size() + 1);
  for (int i = 0; i < instance.size(); ++i) prefix[i + 1] = prefix[i] + instance.cost(i);

  // A set achieving t*_alpha can be taken as its fastest agent i plus the
  // mu-1 cheapest remaining agents; scan every candidate i.
  std::optional<TimePoint> best;
  for (int i = 0; i < instance.size(); ++i) {
    Rational others = (i < mu - 1) ? prefix[mu] - instance.cost(i) : prefix[mu - 1];
    if (instance.cost(i) + others > 1) continue;
    if (!best || instance.agent(i).time < *best) best = instance.agent(i).time;
  }
  if (!best) throw NoFeasibleSet("no feasible set of the required size");
  return *best;
}

TimePoint brute_force_time_guarantee(const Instance& instance, const Rational& alpha,
                                     int max_n) {
  const int n = instance.size();
  if (n > max_n) throw InstanceTooLarge("brute force capped at " + std::to_string(max_n));
  const int kstar = decentralization_factor(instance);
  if (alpha <= 0 || alpha > 1) throw Error("alpha must lie in (0, 1]");

  std::optional<TimePoint> best;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Rational sum = 0;
    int size = 0;
    std::optional<TimePoint> fastest;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      sum += instance.cost(i);
      ++size;
      if (!fastest || instance.agent(i).time < *fastest) fastest = instance.agent(i).time;
    }
    if (sum > 1) continue;
    if (Rational(size) < alpha * kstar) continue;
    if (!best || *fastest < *best) best = fastest;
  }
  if (!best) throw NoFeasibleSet("no feasible set of the required size");
  return *best;
}

std::vector<int> k_best_set(const Instance& instance, int k) {
  const int kstar = decentralization_factor(instance);
  if (k < 1 || k > kstar) {
    throw KOutOfRange("k-best set needs 1 <= k <= k*, got k=" + std::to_string(k) +
                      ", k*=" + std::to_string(kstar));
  }

  Rational prefix_cost = 0;
  for (int i = 0; i < k - 1; ++i) prefix_cost += instance.cost(i);

  // Fastest agent outside the prefix that still fits the budget; ties go to
  // the cheapest, then the lowest canonical index.
  std::optional<int> extra;
  for (int i = k - 1; i < instance.size(); ++i) {
    if (instance.cost(i) + prefix_cost > 1) continue;
    if (!extra) {
      extra = i;
      continue;
    }
    const auto& cur = instance.agent(*extra);
    const auto& cand = instance.agent(i);
    if (cand.time < cur.time || (cand.time == cur.time && cand.cost < cur.cost)) extra = i;
  }
  if (!extra) throw KOutOfRange("no affordable extra agent for the k-best set");

  std::vector<int> result;
  for (int i = 0; i < k - 1; ++i) result.push_back(i);
  result.push_back(*extra);
  std::sort(result.begin(), result.end());
  return result;
}

OutcomeMetrics outcome_metrics(const Instance& instance, const Outcome& outcome) {
  const int kstar = decentralization_factor(instance);
  OutcomeMetrics metrics;
  metrics.participant_count = static_cast<int>(outcome.participants.size());
  metrics.decentralization_ratio = Rational(metrics.participant_count, kstar);
  metrics.decentralization_ratio.canonicalize();
  metrics.fastest_time = outcome.fastest_time;

  if (outcome.fastest_time) {
    // t*_beta only changes on the grid {1/k*, ..., 1}; report the smallest
    // beta whose guarantee the outcome meets.
    for (int j = 1; j <= kstar; ++j) {
      Rational beta(j, kstar);
      beta.canonicalize();
      if (*outcome.fastest_time <= time_guarantee(instance, beta)) {
        metrics.efficiency_class = beta;
        break;
      }
    }
  }
  return metrics;
}

}  // namespace mech
