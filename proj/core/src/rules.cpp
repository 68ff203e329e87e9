#include "mech/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mech/numeric.hpp"

namespace mech {

std::vector<Money> reward_fastest(const Instance& instance, const ActionProfile& profile) {
  std::vector<Money> rewards(instance.size());
  std::optional<int> winner;
  for (int i = 0; i < instance.size(); ++i) {
    if (!profile.submitted(i)) continue;
    if (!winner || *profile.action(i) < *profile.action(*winner)) winner = i;
  }
  if (winner) rewards[*winner] = Money(Rational(1));
  return rewards;
}

std::vector<Money> reward_equal(const Instance& instance, const ActionProfile& profile) {
  std::vector<Money> rewards(instance.size());
  const int ell = profile.submission_count();
  if (ell == 0) return rewards;
  const Money share{Rational(1, ell)};
  for (int i = 0; i < instance.size(); ++i) {
    if (profile.submitted(i)) rewards[i] = share;
  }
  return rewards;
}

int harmonic_offset(int ell) {
  if (ell < 1) throw Error("harmonic_offset needs ell >= 1");
  HarmonicWindow window;
  for (int len = 1; len <= ell; ++len) {
    window.push_back();
    while (window.sum() > 1) {
      window.pop_front();
      window.push_back();
    }
  }
  return static_cast<int>(window.first());
}

std::vector<int> harmonic_offsets(int max_ell) {
  if (max_ell < 1) throw Error("harmonic_offsets needs max_ell >= 1");
  std::vector<int> offsets;
  offsets.reserve(max_ell);
  HarmonicWindow window;
  for (int len = 1; len <= max_ell; ++len) {
    window.push_back();
    while (window.sum() > 1) {
      window.pop_front();
      window.push_back();
    }
    offsets.push_back(static_cast<int>(window.first()));
  }
  return offsets;
}

namespace {

// Submitters ordered fastest-first: submission time ascending, ties by index.
std::vector<int> submission_rank_order(const ActionProfile& profile) {
  std::vector<int> order;
  for (int i = 0; i < profile.size(); ++i) {
    if (profile.submitted(i)) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (*profile.action(a) != *profile.action(b)) return *profile.action(a) < *profile.action(b);
    return a < b;
  });
  return order;
}

}  // namespace

std::vector<Money> reward_harmonic(const Instance& instance, const ActionProfile& profile) {
  std::vector<Money> rewards(instance.size());
  const std::vector<int> order = submission_rank_order(profile);
  if (order.empty()) return rewards;
  const int m = harmonic_offset(static_cast<int>(order.size()));
  for (int rank = 0; rank < static_cast<int>(order.size()); ++rank) {
    rewards[order[rank]] = Money(Rational(1, m + rank));
  }
  return rewards;
}

// --- BucketScheme ---------------------------------------------------------------

BucketScheme::BucketScheme(std::vector<Bucket> slowest_first)
    : buckets_(std::move(slowest_first)) {
  if (buckets_.empty()) throw SchemeInvalid("bucket scheme needs at least one bucket");
  for (size_t j = 0; j < buckets_.size(); ++j) {
    if (buckets_[j].lo > buckets_[j].hi) {
      throw SchemeInvalid("bucket " + std::to_string(j) + " has an empty time interval");
    }
    if (buckets_[j].cost.value() <= 0) {
      throw SchemeInvalid("bucket " + std::to_string(j) + " needs a positive cost");
    }
    if (j > 0) {
      if (buckets_[j].cost <= buckets_[j - 1].cost) {
        throw SchemeInvalid("bucket costs must be strictly increasing");
      }
      if (buckets_[j].hi >= buckets_[j - 1].lo) {
        throw SchemeInvalid("bucket intervals must be disjoint and time-descending");
      }
    }
  }
}

std::optional<int> BucketScheme::bucket_of(const TimePoint& t) const {
  for (int j = 0; j < size(); ++j) {
    if (buckets_[j].lo <= t && t <= buckets_[j].hi) return j;
  }
  return std::nullopt;
}

std::optional<Money> BucketScheme::inferred_cost(const TimePoint& t) const {
  const auto j = bucket_of(t);
  if (!j) return std::nullopt;
  return buckets_[*j].cost;
}

BucketScheme BucketScheme::parse(std::istream& in) {
  std::vector<Bucket> buckets;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string lo, hi, cost;
    if (!(row >> lo)) continue;
    if (lo[0] == '#') continue;
    if (!(row >> hi >> cost)) throw ParseError("bucket line needs 't_lo t_hi cost': " + line);
    buckets.push_back(Bucket{TimePoint(parse_rational(lo)), TimePoint(parse_rational(hi)),
                             Money(parse_rational(cost))});
  }
  return BucketScheme(std::move(buckets));
}

BucketScheme BucketScheme::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open bucket scheme file: " + path);
  return parse(in);
}

std::string BucketScheme::serialize() const {
  std::ostringstream out;
  for (const Bucket& b : buckets_) {
    out << format_rational(b.lo.value()) << " " << format_rational(b.hi.value()) << " "
        << format_rational(b.cost.value()) << "\n";
  }
  return out.str();
}

// --- Best-Set rule ---------------------------------------------------------------

namespace {

struct EligibleSubmission {
  int agent;
  int bucket;
  Money inferred;
};

std::vector<EligibleSubmission> eligible_submissions(const ActionProfile& profile,
                                                     const BucketScheme& scheme) {
  std::vector<EligibleSubmission> eligible;
  for (int i = 0; i < profile.size(); ++i) {
    if (!profile.submitted(i)) continue;
    if (const auto j = scheme.bucket_of(*profile.action(i))) {
      eligible.push_back({i, *j, scheme.bucket(*j).cost});
    }
  }
  return eligible;
}

// Largest affordable group of cheapest submitters; inferred-cost ascending,
// ties by submission time descending then index, mirroring the canonical
// instance order.
std::vector<int> greedy_cheapest(const std::vector<EligibleSubmission>& eligible,
                                 const ActionProfile& profile) {
  std::vector<const EligibleSubmission*> order;
  for (const auto& e : eligible) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [&](const EligibleSubmission* a, const EligibleSubmission* b) {
              if (a->inferred != b->inferred) return a->inferred < b->inferred;
              if (*profile.action(a->agent) != *profile.action(b->agent)) {
                return *profile.action(a->agent) > *profile.action(b->agent);
              }
              return a->agent < b->agent;
            });
  std::vector<int> chosen;
  Rational total = 0;
  for (const EligibleSubmission* e : order) {
    if (total + e->inferred.value() > 1) break;
    total += e->inferred.value();
    chosen.push_back(e->agent);
  }
  return chosen;
}

// The k-best selection over inferred types, or the greedy fallback when the
// construction is infeasible. Assumes at least k eligible submissions.
std::vector<int> select_best_set(const Instance& instance, const ActionProfile& profile,
                                 const BucketScheme& scheme, int k,
                                 const std::vector<EligibleSubmission>& eligible) {
  // Partition into buckets, each ordered fastest-first.
  std::vector<std::vector<const EligibleSubmission*>> by_bucket(scheme.size());
  for (const auto& e : eligible) by_bucket[e.bucket].push_back(&e);
  for (auto& group : by_bucket) {
    std::sort(group.begin(), group.end(),
              [&](const EligibleSubmission* a, const EligibleSubmission* b) {
                if (*profile.action(a->agent) != *profile.action(b->agent)) {
                  return *profile.action(a->agent) < *profile.action(b->agent);
                }
                return a->agent < b->agent;
              });
  }

  // Cheapest buckets whole, then the fastest members of the first bucket
  // that overflows k-1.
  std::vector<int> base;
  Rational base_cost = 0;
  for (int j = 0; j < scheme.size() && static_cast<int>(base.size()) < k - 1; ++j) {
    const int want = k - 1 - static_cast<int>(base.size());
    const int take = std::min<int>(want, static_cast<int>(by_bucket[j].size()));
    for (int idx = 0; idx < take; ++idx) {
      base.push_back(by_bucket[j][idx]->agent);
      base_cost += by_bucket[j][idx]->inferred.value();
    }
  }

  if (base_cost > 1) {
    // The k-1 cheapest inferred costs already blow the budget; pay what fits.
    return greedy_cheapest(eligible, profile);
  }

  // Fastest remaining submitter whose inferred cost fits the leftover budget;
  // ties by cheaper inferred cost, then index.
  std::vector<bool> in_base(instance.size(), false);
  for (int i : base) in_base[i] = true;
  const EligibleSubmission* extra = nullptr;
  for (const auto& e : eligible) {
    if (in_base[e.agent]) continue;
    if (base_cost + e.inferred.value() > 1) continue;
    if (!extra) {
      extra = &e;
      continue;
    }
    const auto& t_new = *profile.action(e.agent);
    const auto& t_cur = *profile.action(extra->agent);
    if (t_new != t_cur ? t_new < t_cur
                       : (e.inferred != extra->inferred ? e.inferred < extra->inferred
                                                        : e.agent < extra->agent)) {
      extra = &e;
    }
  }
  if (extra) base.push_back(extra->agent);
  std::sort(base.begin(), base.end());
  return base;
}

}  // namespace

std::vector<int> best_set_selection(const Instance& instance, const ActionProfile& profile,
                                    const BucketScheme& scheme, int k) {
  if (k < 2) throw KOutOfRange("best-set rule needs k >= 2");
  const auto eligible = eligible_submissions(profile, scheme);
  if (static_cast<int>(eligible.size()) < k) return greedy_cheapest(eligible, profile);
  return select_best_set(instance, profile, scheme, k, eligible);
}

std::vector<Money> reward_best_set(const Instance& instance, const ActionProfile& profile,
                                   const BucketScheme& scheme, int k) {
  std::vector<Money> rewards(instance.size());
  const std::vector<int> paid = best_set_selection(instance, profile, scheme, k);
  for (int i : paid) {
    rewards[i] = *scheme.inferred_cost(*profile.action(i));
  }
  return rewards;
}

// --- RewardRule -------------------------------------------------------------------

RewardRule RewardRule::fast() { return RewardRule(Kind::Fast, std::nullopt, 0); }
RewardRule RewardRule::equal() { return RewardRule(Kind::Equal, std::nullopt, 0); }
RewardRule RewardRule::harmonic() { return RewardRule(Kind::Harmonic, std::nullopt, 0); }

RewardRule RewardRule::best_set(BucketScheme scheme, int k) {
  if (k < 2) throw KOutOfRange("best-set rule needs k >= 2");
  return RewardRule(Kind::BestSet, std::move(scheme), k);
}

std::vector<Money> RewardRule::operator()(const Instance& instance,
                                          const ActionProfile& profile) const {
  switch (kind_) {
    case Kind::Fast:
      return reward_fastest(instance, profile);
    case Kind::Equal:
      return reward_equal(instance, profile);
    case Kind::Harmonic:
      return reward_harmonic(instance, profile);
    case Kind::BestSet:
      return reward_best_set(instance, profile, *scheme_, k_);
  }
  throw Error("unreachable rule kind");
}

std::string RewardRule::name() const {
  switch (kind_) {
    case Kind::Fast:
      return "fast";
    case Kind::Equal:
      return "equal";
    case Kind::Harmonic:
      return "harmonic";
    case Kind::BestSet:
      return "best-set(k=" + std::to_string(k_) + ")";
  }
  return "?";
}

// --- reward monotonicity -----------------------------------------------------------

std::optional<MonotoneViolation> check_reward_monotone(const RewardRule& rule,
                                                       const Instance& instance, int max_ell) {
  if (max_ell > instance.size()) throw Error("check_reward_monotone needs max_ell <= n");

  // Sorted rewards of the l submitters on the canonical profile where the
  // first l agents submit at the deadline.
  auto sorted_rewards = [&](int ell) {
    std::vector<ActionProfile::Action> actions(instance.size());
    for (int i = 0; i < ell; ++i) actions[i] = instance.deadline();
    const ActionProfile profile(instance, std::move(actions));
    const std::vector<Money> rewards = rule(instance, profile);
    std::vector<Rational> submitted;
    for (int i = 0; i < ell; ++i) submitted.push_back(rewards[i].value());
    std::sort(submitted.begin(), submitted.end());
    return submitted;
  };

  std::vector<Rational> current = sorted_rewards(1);
  for (int ell = 1; ell < max_ell; ++ell) {
    std::vector<Rational> next = sorted_rewards(ell + 1);
    for (int i = 0; i < ell; ++i) {
      if (current[i] < next[i]) return MonotoneViolation{ell, i + 1};
    }
    current = std::move(next);
  }
  return std::nullopt;
}

}  // namespace mech
