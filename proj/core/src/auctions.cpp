#include "mech/auctions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mech {

bool AuctionResult::is_allocated(int i) const {
  return std::binary_search(allocated.begin(), allocated.end(), i);
}

Rational AuctionResult::total_reward() const {
  Rational total = 0;
  for (const Money& r : rewards) total += r.value();
  return total;
}

namespace {

// Canonical bid order: cost ascending, ties by time descending, then input
// position.
std::vector<int> canonical_bid_order(const std::vector<Bid>& bids) {
  std::vector<int> order(bids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (bids[a].cost != bids[b].cost) return bids[a].cost < bids[b].cost;
    return bids[a].time > bids[b].time;
  });
  return order;
}

}  // namespace

FilterResult filter_dominated(const std::vector<Bid>& bids) {
  if (bids.empty()) throw Error("filter_dominated needs at least one bid");
  FilterResult result;
  for (int j = 0; j < static_cast<int>(bids.size()); ++j) {
    bool dominated = false;
    for (int i = 0; i < static_cast<int>(bids.size()) && !dominated; ++i) {
      dominated = bids[i].cost < bids[j].cost && bids[i].time < bids[j].time;
    }
    if (dominated) {
      result.removed.push_back(j);
    } else {
      result.kept.push_back(bids[j]);
      result.kept_indices.push_back(j);
    }
  }
  return result;
}

bool detect_inversion(const std::vector<Bid>& bids) {
  const std::vector<int> order = canonical_bid_order(bids);
  // An inversion is a strictly cheaper bid with a strictly smaller time;
  // scan the canonical order tracking the fastest strictly-cheaper bid.
  std::optional<TimePoint> fastest_cheaper;
  size_t group_start = 0;
  for (size_t p = 0; p < order.size(); ++p) {
    if (bids[order[p]].cost != bids[order[group_start]].cost) {
      for (size_t q = group_start; q < p; ++q) {
        const TimePoint& t = bids[order[q]].time;
        if (!fastest_cheaper || t < *fastest_cheaper) fastest_cheaper = t;
      }
      group_start = p;
    }
    if (fastest_cheaper && *fastest_cheaper < bids[order[p]].time) return true;
  }
  return false;
}

AuctionResult inverse_k_price(const std::vector<Bid>& bids) {
  const FilterResult filtered = filter_dominated(bids);
  if (filtered.kept.empty()) throw NoFeasibleK("all bids dominated");

  const std::vector<int> order = canonical_bid_order(filtered.kept);
  const int n = static_cast<int>(order.size());

  // Price for allocating the k cheapest: the (k+1)-th cost, the full reward
  // past the last bid, and never above the full reward.
  auto price = [&](int k) -> Rational {
    if (k >= n) return Rational(1);
    const Rational& c = filtered.kept[order[k]].cost.value();
    return c < 1 ? c : Rational(1);
  };

  int best_k = 0;
  for (int k = 1; k <= n; ++k) {
    if (Rational(k) * price(k) <= 1) best_k = k;
  }
  if (best_k == 0) throw NoFeasibleK("even a single allocation is infeasible");

  AuctionResult result;
  result.rewards.assign(bids.size(), Money{});
  const Money reward{price(best_k)};
  for (int p = 0; p < best_k; ++p) {
    const int original = filtered.kept_indices[order[p]];
    result.allocated.push_back(original);
    result.rewards[original] = reward;
  }
  std::sort(result.allocated.begin(), result.allocated.end());
  return result;
}

AuctionResult igsp(const std::vector<Bid>& bids, int k) {
  if (k < 2) throw KTooSmall("igsp needs k >= 2");
  if (bids.empty()) throw Error("igsp needs at least one bid");

  AuctionResult result;
  result.rewards.assign(bids.size(), Money{});
  if (detect_inversion(bids)) {
    result.inverted = true;
    return result;
  }

  const std::vector<int> order = canonical_bid_order(bids);
  const int n = static_cast<int>(order.size());

  // Reported decentralization factor: longest affordable prefix.
  int kstar = 0;
  Rational prefix = 0;
  for (int p = 0; p < n; ++p) {
    prefix += bids[order[p]].cost.value();
    if (prefix > 1) break;
    ++kstar;
  }

  // Coercing k below the reported k* keeps the construction affordable; the
  // k=2 shape (empty prefix, one winner at the full reward) is always
  // affordable, so the target never drops below two.
  const int eff = std::min(k, std::max(kstar, 2));

  // Budget reserved for the second-price rewards of the cheap prefix:
  // the 2nd through (eff-1)-th costs.
  Rational reserved = 0;
  for (int p = 1; p <= eff - 2; ++p) reserved += bids[order[p]].cost.value();
  const Rational leftover = 1 - reserved;

  // The costliest affordable agent; the canonical order makes the last
  // affordable position the fastest among ties.
  int ell = -1;
  for (int p = n - 1; p >= 0; --p) {
    if (bids[order[p]].cost.value() <= leftover) {
      ell = p;
      break;
    }
  }
  if (ell < 0) return result;  // every single bid exceeds the whole reward

  for (int p = 0; p <= eff - 3; ++p) {
    const int original = order[p];
    result.allocated.push_back(original);
    result.rewards[original] = Money(bids[order[p + 1]].cost.value());
  }
  result.allocated.push_back(order[ell]);
  result.rewards[order[ell]] = Money(leftover);
  std::sort(result.allocated.begin(), result.allocated.end());
  return result;
}

Mechanism mechanism_by_name(const std::string& name, std::optional<int> k) {
  if (name == "inverse-k-price") {
    return [](const std::vector<Bid>& bids) { return inverse_k_price(bids); };
  }
  if (name == "igsp") {
    if (!k) throw Error("igsp requires k");
    const int kk = *k;
    return [kk](const std::vector<Bid>& bids) { return igsp(bids, kk); };
  }
  throw Error("unknown mechanism: " + name);
}

std::vector<Bid> truthful_bids(const Instance& instance) {
  std::vector<Bid> bids;
  bids.reserve(instance.size());
  for (const AgentType& agent : instance.agents()) {
    bids.push_back(Bid{agent.cost, agent.time});
  }
  return bids;
}

std::vector<IrViolation> audit_ir(const Mechanism& mechanism, const Instance& instance) {
  const AuctionResult result = mechanism(truthful_bids(instance));
  std::vector<IrViolation> violations;
  for (int i : result.allocated) {
    if (result.rewards[i] < instance.agent(i).cost) {
      violations.push_back({i, result.rewards[i], instance.agent(i).cost});
    }
  }
  return violations;
}

std::vector<IrViolation> audit_ir(const std::string& mechanism, const Instance& instance,
                                  std::optional<int> k) {
  return audit_ir(mechanism_by_name(mechanism, k), instance);
}

std::vector<IcViolation> audit_ic(const Mechanism& mechanism, const Instance& instance,
                                  const IcAuditOptions& options) {
  const int n = instance.size();
  if (n > options.max_n) {
    throw InstanceTooLarge("IC audit capped at n <= " + std::to_string(options.max_n));
  }
  if (options.cost_step <= 0) throw Error("IC audit needs a positive cost step");

  const std::vector<Bid> truthful = truthful_bids(instance);
  const AuctionResult base = mechanism(truthful);

  // Candidate misreported costs: the [0,1] grid plus every reported cost and
  // its one-step neighbours.
  std::set<Rational> cost_candidates;
  for (Rational c = 0; c <= 1; c += options.cost_step) cost_candidates.insert(c);
  for (const Bid& b : truthful) {
    cost_candidates.insert(b.cost.value());
    cost_candidates.insert(b.cost.value() + options.cost_step);
    const Rational below = b.cost.value() - options.cost_step;
    if (below >= 0) cost_candidates.insert(below);
  }

  std::vector<IcViolation> violations;
  for (int agent = 0; agent < n; ++agent) {
    const Rational& true_cost = instance.cost(agent);
    const Rational truthful_utility =
        base.rewards[agent].value() - (base.is_allocated(agent) ? true_cost : Rational(0));

    // Reporting faster than the true time is infeasible; candidates are the
    // true times at or after the agent's own, plus the deadline.
    std::set<Rational> time_candidates;
    for (int j = 0; j < n; ++j) {
      if (instance.time(j) >= instance.time(agent)) time_candidates.insert(instance.time(j));
    }
    time_candidates.insert(instance.deadline().value());

    for (const Rational& reported_cost : cost_candidates) {
      for (const Rational& reported_time : time_candidates) {
        const Bid deviation{Money(reported_cost), TimePoint(reported_time)};
        if (deviation == truthful[agent]) continue;
        std::vector<Bid> bids = truthful;
        bids[agent] = deviation;
        const AuctionResult outcome = mechanism(bids);
        const Rational utility = outcome.rewards[agent].value() -
                                 (outcome.is_allocated(agent) ? true_cost : Rational(0));
        if (utility > truthful_utility) {
          violations.push_back({agent, deviation, truthful_utility, utility});
        }
      }
    }
  }
  return violations;
}

std::vector<IcViolation> audit_ic(const std::string& mechanism, const Instance& instance,
                                  std::optional<int> k, const IcAuditOptions& options) {
  return audit_ic(mechanism_by_name(mechanism, k), instance, options);
}

}  // namespace mech
